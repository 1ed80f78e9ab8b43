"""
Provides functionality for writing computed tables to JSON, CSV, XLSX and
sqlite files.
"""

from __future__ import absolute_import, division

import contextlib
import csv
import errno
import json
import logging
import os
import sqlite3
import tempfile

from . import sql
from padlfun import ledger
from padlfun.errors import DomainError

LOGGER = logging.getLogger("padlfun.export")


@contextlib.contextmanager
def _atomic(path):
    """
    Yield a temporary path next to path; it replaces path on success.
    """
    out_dir = os.path.dirname(os.path.abspath(path))

    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)

    fd, tmp_path = tempfile.mkstemp(
        dir=out_dir, suffix=os.path.splitext(path)[1] + ".tmp",
    )
    os.close(fd)

    try:
        yield tmp_path
        os.replace(tmp_path, path)
    finally:
        try:
            os.remove(tmp_path)
        except EnvironmentError as err:
            if getattr(err, 'errno', None) != errno.ENOENT:
                raise


def _cell(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value

    return str(value)


def write_json(path, data):
    with _atomic(path) as tmp_path:
        with open(tmp_path, "w") as f:
            json.dump(data, f, sort_keys=True, indent=2, default=str)
            f.write("\n")

    return path


def write_csv(path, header, rows):
    with _atomic(path) as tmp_path:
        with open(tmp_path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)

            for row in rows:
                writer.writerow([_cell(i) for i in row])

    return path


def write_xlsx(path, header, rows, title="padlfun"):
    from openpyxl import Workbook

    wb = Workbook()
    ws = wb.active
    ws.title = title[:31]
    ws.append(list(header))

    for row in rows:
        ws.append([_cell(i) for i in row])

    with _atomic(path) as tmp_path:
        wb.save(tmp_path)

    return path


def _table_json(path, header, rows, kind):
    return write_json(path, {
        "kind": kind,
        "rows": [
            dict(zip(header, (_cell(i) for i in row)))
            for row in rows
        ],
    })


def _table_csv(path, header, rows, kind):
    return write_csv(path, header, rows)


def _table_xlsx(path, header, rows, kind):
    return write_xlsx(path, header, rows, title=kind)


WRITERS = {
    ".json": _table_json,
    ".csv": _table_csv,
    ".xlsx": _table_xlsx,
}


def export_table(path, header, rows, kind="table"):
    """
    Write rows under a header to the format chosen by the extension of
    path.

    Parameters
    ----------
    path : str
    header : list of str
    rows : list of tuple
    kind : str, optional

    Returns
    -------
    str
    """
    ext = os.path.splitext(path)[1].lower()
    writer = WRITERS.get(ext)

    if writer is None:
        raise DomainError("Unable to write {} file: {}".format(kind, path))

    LOGGER.debug("Using {} writer for {}".format(writer.__name__, ext))

    rows = list(rows)
    writer(path, header, rows, kind)
    LOGGER.info("Wrote {} {} rows to {}".format(len(rows), kind, path))

    return path


# Tables

VALUATION_HEADER = ["p", "case", "n", "hdg", "period", "r", "b", "n_k"]


def valuation_table(primes, levels, classical=True):
    return VALUATION_HEADER, ledger.ledger_rows(primes, levels, classical)


CLASS_GROUP_HEADER = ["index", "form", "order"]


def class_group_table(group):
    return CLASS_GROUP_HEADER, [
        (i, str(f), group.order_of(i))
        for i, f in enumerate(group.forms)
    ]


HGROUP_HEADER = ["element", "class", "form", "unit"]


def hgroup_table(group):
    return HGROUP_HEADER, [
        (
            str(x), group.project(x),
            str(group.pic.forms[group.project(x)]), x.unit,
        )
        for x in group.elements()
    ]


CHARACTER_HEADER = [
    "index", "n", "m", "eps", "kernel_images", "lift_images", "conductor_p",
]


def character_table(chars, prime=None):
    return CHARACTER_HEADER, [
        (
            i, chi.n, chi.m,
            " ".join(str(a) for a in chi.eps.images),
            " ".join(str(a) for a in chi.kernel_images),
            " ".join(str(b) for b in chi.lift_images),
            None if prime is None else chi.conductor_ppart(prime),
        )
        for i, chi in enumerate(chars)
    ]


QEXP_HEADER = ["n", "a_n"]


def qexp_table(f):
    return QEXP_HEADER, [(n, str(a)) for n, a in enumerate(f.coeffs)]


SECTION_HEADER = ["j", "n", "c"]


def section_table(section):
    return SECTION_HEADER, [
        (j, n, str(a))
        for j, component in enumerate(section.components)
        for n, a in enumerate(component.coeffs)
    ]


LVALUE_HEADER = ["index", "oracle", "value", "precision", "loss"]


def lvalue_table(values):
    rows = []

    for i, value in enumerate(values):
        data = value.to_dict()
        rows.append((
            i, value.oracle,
            " ".join(data["value"])
            if isinstance(data["value"], list) else data["value"],
            data["precision"]["reached"],
            data["precision"]["loss"],
        ))

    return LVALUE_HEADER, rows


# sqlite

def export_to_sql(
    out_path, valuations=(), hgroups=(), characters=(), lvalues=(),
    prime=None,
):
    """
    Write computed objects to a fresh sqlite database.

    Parameters
    ----------
    out_path : str
    valuations : list of tuple
        Rows of :func:`ledger_rows<padlfun.ledger.ledger_rows>`.
    hgroups : list of :class:`HGroup<padlfun.quadratic.hgroup.HGroup>`
    characters : list of :class:`HeckeChar<padlfun.characters.hecke.HeckeChar>`
    lvalues : list of (int, :class:`LValue<padlfun.lfun.assembly.LValue>`)
        Character index into characters and value.
    prime : int, optional
        Records conductor p-parts.
    """
    assert os.path.splitext(out_path)[1] in sql.DB_EXTS

    try:
        os.remove(out_path)
    except EnvironmentError as err:
        if getattr(err, 'errno', None) != errno.ENOENT:
            raise

    with _atomic(out_path) as tmp_path:
        db = sqlite3.connect(tmp_path, isolation_level="EXCLUSIVE")
        cursor = db.cursor()

        sql.create_tables(cursor)
        sql.check_data_version(cursor)

        for row in valuations:
            sql.insert_valuation(cursor, row)

        hgroup_ids = {}

        for group in hgroups:
            hgroup_ids[id(group)] = sql.insert_hgroup(cursor, group)

        char_ids = []

        for chi in characters:
            if id(chi.group) not in hgroup_ids:
                hgroup_ids[id(chi.group)] = sql.insert_hgroup(
                    cursor, chi.group,
                )

            char_ids.append(sql.insert_character(
                cursor, chi, hgroup_ids[id(chi.group)], prime=prime,
            ))

        for index, value in lvalues:
            sql.insert_lvalue(
                cursor, value,
                character_id=None if index is None else char_ids[index],
            )

        db.commit()
        db.close()

    LOGGER.info("Wrote database {}".format(out_path))

    return out_path
