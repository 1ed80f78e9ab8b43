"""
Readers for q-expansion, oracle and character files.

Each kind of file has a BACKENDS dictionary keyed by extension; the loaders
pick the reader from the path and raise on anything else.
"""

from __future__ import absolute_import, division

import csv
from fractions import Fraction
import json
import logging
import os

from . import regexes
from .errors import DomainError
from .padic import numbers
from .padic.numbers import PadicNumber
from .padic.weights import PadicWeight

LOGGER = logging.getLogger("padlfun.loaders")


def parse_value(text, prime, prec=numbers.DEFAULT_PRECISION):
    """
    Read a coefficient: an integer, a fraction "n/d" or a serialized p-adic
    number "p^a * u mod p^M".

    Returns
    -------
    :class:`PadicNumber<padlfun.padic.numbers.PadicNumber>`
    """
    if isinstance(text, (int, Fraction)):
        return numbers.padic(text, prime, prec)

    if isinstance(text, float):
        if not text.is_integer():
            raise DomainError(
                "Refusing to read the float {} as a p-adic number".format(text)
            )

        return numbers.padic(int(text), prime, prec)

    text = str(text)

    if regexes.RE_FRACTION.match(text):
        return numbers.padic(Fraction(text.replace(" ", "")), prime, prec)

    return PadicNumber.from_string(text, prime)


def _read_rows_csv(path):
    with open(path) as f:
        return [
            [cell.strip() for cell in row]
            for row in csv.reader(f)
            if row and not row[0].lstrip().startswith("#")
        ]


def _read_rows_xlsx(path):
    from openpyxl import load_workbook

    wb = load_workbook(path, read_only=True)
    ws = wb.active
    rows = [
        [cell for cell in row]
        for row in ws.iter_rows(values_only=True)
        if row and row[0] is not None
    ]
    wb.close()

    return rows


def _header_csv(path):
    """
    "# key, value" comment lines at the top of a CSV file.
    """
    header = {}

    with open(path) as f:
        for row in csv.reader(f):
            if not row or not row[0].lstrip().startswith("#"):
                continue

            key = row[0].lstrip()[1:].strip()

            if key and len(row) > 1:
                header[key] = row[1].strip()

    return header


def _pick(backends, path, what):
    ext = os.path.splitext(path)[1].lower()
    backend = backends.get(ext)

    if backend is None:
        raise DomainError("Unable to open {} file: {}".format(what, path))

    LOGGER.debug("Using {} backend for {}".format(backend.__name__, ext))

    return backend


# q-expansions

def _qexp_from_rows(rows, header, path):
    """
    Rows (n, a_n); missing n are zero.
    """
    if "prime" not in header:
        raise DomainError("No prime recorded in {}".format(path))

    prime = int(header["prime"])
    prec = int(header.get("prec", numbers.DEFAULT_PRECISION))
    coeffs = {}

    for row in rows:
        try:
            n = int(row[0])
        except (TypeError, ValueError):
            # Column titles
            continue

        if n < 0 or n in coeffs:
            raise DomainError(
                "Bad or repeated index {} in {}".format(n, path)
            )

        coeffs[n] = parse_value(row[1], prime, prec)

    if not coeffs:
        raise DomainError("No coefficients in {}".format(path))

    return prime, prec, [
        coeffs.get(n, 0) for n in range(max(coeffs) + 1)
    ]


def _qexp_header_xlsx(rows):
    header = {}

    for row in rows:
        if isinstance(row[0], str) and row[0].startswith("#"):
            header[row[0][1:].strip()] = row[1]

    return header


def load_qexp_json(path):
    with open(path) as f:
        data = json.load(f)

    rows = data.get("coefficients", [])

    if rows and not isinstance(rows[0], (list, tuple)):
        rows = list(enumerate(rows))

    return data, rows


def load_qexp_csv(path):
    return _header_csv(path), _read_rows_csv(path)


def load_qexp_xlsx(path):
    rows = _read_rows_xlsx(path)

    return _qexp_header_xlsx(rows), rows


QEXP_BACKENDS = {
    ".json": load_qexp_json,
    ".csv": load_qexp_csv,
    ".xlsx": load_qexp_xlsx,
}

BACKENDS = QEXP_BACKENDS


def load_qexpansion(path):
    """
    Read a q-expansion file.

    JSON files carry "prime", optional "weight", "prec" and "nebentype",
    and "coefficients" as a list of a_n or of [n, a_n] pairs. CSV and XLSX
    files hold (n, a_n) rows under "# prime, p" style header lines.

    Parameters
    ----------
    path : str

    Returns
    -------
    :class:`QExpansion<padlfun.qexp.qexpansion.QExpansion>`
    """
    from .characters.dirichlet import DirichletChar
    from .qexp.qexpansion import QExpansion

    header, rows = _pick(QEXP_BACKENDS, path, "q-expansion")(path)
    prime, prec, coeffs = _qexp_from_rows(rows, header, path)

    weight = header.get("weight")

    if weight is not None:
        weight = PadicWeight.from_string(str(weight), prime)

    nebentype = header.get("nebentype")

    if isinstance(nebentype, dict):
        nebentype = DirichletChar.from_dict(nebentype)
    else:
        nebentype = None

    f = QExpansion(prime, coeffs, weight=weight, nebentype=nebentype,
                   prec=prec)

    LOGGER.info(
        "Read {} from {}".format(f, os.path.basename(path))
    )

    return f


# Oracles

def load_oracle_json(path):
    with open(path) as f:
        data = json.load(f)

    if "context" not in data:
        raise DomainError("No oracle context in {}".format(path))

    return data["context"], [
        (str(ident), str(tag), str(value))
        for ident, tag, value in data.get("values", [])
    ]


def load_oracle_csv(path):
    header = _header_csv(path)
    rows = [
        (row[0], row[1], row[2])
        for row in _read_rows_csv(path)
        if len(row) >= 3 and row[1] != "level"
    ]

    return header, rows


ORACLE_BACKENDS = {
    ".json": load_oracle_json,
    ".csv": load_oracle_csv,
}


def load_oracle(path):
    """
    Read an oracle file: a context header and rows of
    (H-group element id, level tag, p-adic value).

    Returns
    -------
    header : dict
    rows : list of (str, str, str)
    """
    header, rows = _pick(ORACLE_BACKENDS, path, "oracle")(path)

    for key in ("prime", "disc_K", "level", "k", "conductor"):
        if key not in header:
            raise DomainError(
                "Oracle header of {} is missing \"{}\"".format(path, key)
            )

    LOGGER.debug("{} oracle values in {}".format(len(rows), path))

    return header, rows


# Characters

def load_characters(path, group):
    """
    Read the characters written by the "chars" command.

    Returns
    -------
    list of :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>`
    """
    from .characters.hecke import HeckeChar

    if os.path.splitext(path)[1].lower() != ".json":
        raise DomainError("Unable to open character file: {}".format(path))

    with open(path) as f:
        data = json.load(f)

    if isinstance(data, dict):
        data = data.get("characters", [])

    return [HeckeChar.from_dict(entry, group) for entry in data]
