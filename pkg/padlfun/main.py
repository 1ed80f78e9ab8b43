# -*- coding: utf-8 -*-
"""
Command line frontend: each subcommand computes one kind of object and
writes it to a CSV, JSON, XLSX or sqlite file, or as CSV to stdout.
"""

import argparse
import csv
import logging
import multiprocessing
import os
import sys

from padlfun import __version__, checks, fetch, ledger, loaders
from padlfun.characters.dirichlet import teichmuller_char
from padlfun.characters.hecke import enumerate_chars
from padlfun.config import OUT_DIR_ENV, RunConfig
from padlfun.errors import PadlfunError, PrecisionError, PreconditionError
from padlfun.export import export, sql
from padlfun.lfun import assembly
from padlfun.lfun.oracles import FileOracle, MockOracle, OracleContext
from padlfun.padic.weights import PadicWeight, classical_embed
from padlfun.qexp.coleman import coleman_primitive
from padlfun.qexp.eisenstein import eisenstein
from padlfun.qexp.nabla import WSection, nabla_iterate, nabla_nu
from padlfun.qexp.qexpansion import deplete
from padlfun.quadratic.forms import QuadOrder, class_group
from padlfun.quadratic.hgroup import hgroup
from padlfun.quadratic.ideals import heegner_ideal


LOGGER = logging.getLogger("padlfun.main")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_PRECISION = 3

CASES = (ledger.INERT, ledger.RAMIFIED)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "{}: error: {}\n".format(self.prog, message))


def _config_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--p", "--prime",
        type=int, dest="prime",
        help="Odd prime p.",
    )
    parser.add_argument(
        "--precision",
        type=int,
        help="p-adic precision in digits.",
    )
    parser.add_argument(
        "--truncation",
        type=int,
        help="Number of q-expansion coefficients.",
    )
    parser.add_argument(
        "--grading-cap",
        type=int,
        help="Highest graded component kept by nabla.",
    )
    parser.add_argument(
        "--family-cap",
        type=int,
        help="Degree cap of two-variable families.",
    )
    parser.add_argument(
        "--disc-bound",
        type=int,
        help="Largest |c^2 D_K| to enumerate.",
    )
    parser.add_argument(
        "--cpus",
        type=int,
        help="Limit the number of concurrent processes.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        help="Seed of mock oracles and sampled checks.",
    )
    parser.add_argument(
        "--b-override",
        type=int,
        help="b(3, r) used by the conductor gate at p = 3.",
    )
    parser.add_argument(
        "--generator",
        type=int,
        help="Primitive root fixing the embedding of character values.",
    )
    parser.add_argument(
        "--data-dir",
        help="Directory of fetched coefficient files.",
    )
    parser.add_argument(
        "--out-dir",
        help="Directory relative output paths are resolved against.",
    )
    parser.add_argument(
        "-o", "--out",
        help="Output file (.csv, .json, .xlsx, .db); CSV on stdout if unset.",
    )

    return parser


def _add_order_args(parser, level=True):
    parser.add_argument(
        "--D",
        type=int, dest="disc_K", required=True,
        help="Fundamental discriminant D_K < 0.",
    )
    parser.add_argument(
        "--c",
        type=int, dest="conductor", default=1,
        help="Conductor c of the order.",
    )

    if level:
        parser.add_argument(
            "--N",
            type=int, dest="level", default=1,
            help="Level N of the Heegner ideal.",
        )


def _add_form_args(parser):
    parser.add_argument(
        "--input",
        help="q-expansion file (.json, .csv, .xlsx), or an http(s) url "
             "fetched into the data directory.",
    )
    parser.add_argument(
        "--md5",
        help="Expected MD5 digest of a fetched --input.",
    )
    parser.add_argument(
        "--k",
        type=int,
        help="Weight of the Eisenstein series used without --input.",
    )
    parser.add_argument(
        "--teichmuller",
        type=int,
        help="Use omega^power as the character of the Eisenstein series.",
    )


def _parse_args(args):
    """
    Parses arguments from a argv format.

    Parameters
    ----------
    args : list of str

    Returns
    -------
    parser : argparse.ArgumentParser
    args : argparse.Namespace
    """
    parser = _Parser(
        prog="padlfun",
        description="p-adic L-functions at non-split primes.",
    )
    parser.add_argument(
        "-v", "--verbose",
        action="count",
        help="Increase verbosity of output.",
    )
    parser.add_argument(
        "-q", "--quiet",
        action="count",
        help="Decrease verbosity of output.",
    )
    parser.add_argument(
        "--no-write-log",
        action="store_false",
        dest="write_log",
        help="Don't write a log file.",
    )
    parser.add_argument(
        '-V', '--version',
        action="version",
        version="%(prog)s {}".format(__version__),
    )

    common = _config_parser()
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser(
        "classgroup", parents=[common],
        help="Reduced forms of Pic(O_c).",
    )
    _add_order_args(p, level=False)

    p = sub.add_parser(
        "hgroup", parents=[common],
        help="Elements of H(c, N).",
    )
    _add_order_args(p)

    for name, text in (
        ("chars", "Hecke characters of H(c, N)."),
        ("lsum", "L_p values of characters against a CM oracle."),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        _add_order_args(p)
        p.add_argument(
            "--k",
            type=int, default=2,
            help="Weight k; characters have infinity type (k + j, -j).",
        )
        p.add_argument(
            "--j",
            type=int, default=0,
        )

    p.add_argument(
        "--oracle",
        help="Oracle file (.json, .csv); seeded mock values if unset.",
    )
    p.add_argument(
        "--chars",
        help="Character file written by the chars command.",
    )
    p.add_argument(
        "--no-gate",
        action="store_false",
        dest="check_gate",
        help="Skip the conductor gate.",
    )

    p = sub.add_parser(
        "eisenstein", parents=[common],
        help="q-expansion of an Eisenstein series.",
    )
    p.add_argument(
        "--k",
        type=int, required=True,
    )
    p.add_argument(
        "--teichmuller",
        type=int,
        help="Use omega^power as the character.",
    )

    p = sub.add_parser(
        "deplete", parents=[common],
        help="p-depletion of a q-expansion.",
    )
    _add_form_args(p)

    p = sub.add_parser(
        "nabla", parents=[common],
        help="(nabla_k)^nu of the depletion of a form.",
    )
    _add_form_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--nu-classical",
        type=int,
        help="Integer nu >= 0.",
    )
    group.add_argument(
        "--nu",
        help="A p-adic weight, \"(a mod p-1; s)\".",
    )
    group.add_argument(
        "--steps",
        type=int,
        help="Apply the connection this many times, one step at a time.",
    )

    p = sub.add_parser(
        "coleman", parents=[common],
        help="Graded Coleman primitive of the depletion of a form.",
    )
    _add_form_args(p)
    p.add_argument(
        "--r",
        type=int, required=True,
        help="r, for a form of weight r + 2.",
    )

    p = sub.add_parser(
        "valuations", parents=[common],
        help="Valuation ledger rows.",
    )
    p.add_argument(
        "--case",
        choices=CASES + ("both",), default="both",
    )
    p.add_argument(
        "--n",
        nargs="+", type=int, default=[1, 2, 3], dest="levels",
        help="Levels p^n.",
    )
    p.add_argument(
        "--non-classical",
        action="store_false",
        dest="classical",
        help="Use the radius of non-classical weights.",
    )

    p = sub.add_parser(
        "check", parents=[common],
        help="Run the invariant suite and print a pass/fail table.",
    )
    p.add_argument(
        "names",
        nargs="*",
        help="Checks to run: {}.".format(", ".join(sorted(checks.CHECKS))),
    )

    return parser, parser.parse_args(args)


# Output

def _write(args, config, header, rows, kind, data=None, db=None):
    """
    Write a table to args.out, or as CSV to stdout.

    data replaces the table in JSON output; db holds the keyword arguments
    of :func:`export_to_sql<padlfun.export.export.export_to_sql>`.
    """
    if not args.out:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)

        for row in rows:
            writer.writerow([export._cell(i) for i in row])

        return None

    path = config.out_path(args.out)
    ext = os.path.splitext(path)[1].lower()

    if ext in sql.DB_EXTS:
        if db is None:
            raise PadlfunError(
                "{} output cannot be written to a database".format(kind)
            )

        return export.export_to_sql(path, **db)

    if ext == ".json" and data is not None:
        return export.write_json(path, data)

    return export.export_table(path, header, rows, kind=kind)


# Commands

def _order(args):
    return QuadOrder(args.disc_K, args.conductor)


def _hgroup(args, config):
    return hgroup(
        _order(args), heegner_ideal(args.disc_K, args.level),
        prime=config.prime, bound=config.disc_bound, cpu_count=config.cpus,
    )


def _eps(args, config):
    if args.teichmuller is None:
        return None

    return teichmuller_char(
        config.prime, args.teichmuller, generator=config.generator(),
    )


def _input_path(args, config):
    if not args.input.startswith(("http://", "https://")):
        return args.input

    filename = args.input.rsplit("/", 1)[1].split("?")[0]

    return fetch.fetch_coefficients(
        args.input, md5hash=args.md5,
        dest=os.path.join(config.data_dir, filename),
    )


def _form(args, config):
    if args.input:
        f = loaders.load_qexpansion(_input_path(args, config))

        if f.prime != config.prime:
            raise PreconditionError(
                "{} holds a {}-adic form, expected p = {}".format(
                    args.input, f.prime, config.prime,
                )
            )

        if f.weight is None and args.k is None:
            raise PreconditionError(
                "{} has no weight; pass --k".format(args.input)
            )

        if f.weight is None:
            f.weight = classical_embed(args.k, config.prime)

        return f

    if args.k is None:
        raise PreconditionError("Either --input or --k is needed")

    return eisenstein(
        args.k, _eps(args, config), config.truncation, config.prime,
        prec=config.precision, generator=config.generator(),
    )


def cmd_classgroup(args, config):
    group = class_group(
        _order(args), bound=config.disc_bound, cpu_count=config.cpus,
    )
    header, rows = export.class_group_table(group)

    return _write(args, config, header, rows, "classgroup",
                  data=group.to_dict())


def cmd_hgroup(args, config):
    group = _hgroup(args, config)
    header, rows = export.hgroup_table(group)

    return _write(args, config, header, rows, "hgroup",
                  data=group.to_dict(), db={"hgroups": [group]})


def _characters(args, config, group):
    if getattr(args, "chars", None):
        return loaders.load_characters(args.chars, group)

    return enumerate_chars(group, args.k, args.j)


def cmd_chars(args, config):
    group = _hgroup(args, config)
    chars = _characters(args, config, group)
    header, rows = export.character_table(chars, prime=config.prime)

    return _write(
        args, config, header, rows, "chars",
        data={"characters": [chi.to_dict() for chi in chars]},
        db={"characters": chars, "prime": config.prime},
    )


def cmd_lsum(args, config):
    group = _hgroup(args, config)
    chars = _characters(args, config, group)

    if args.oracle:
        oracle = FileOracle.load(args.oracle, group)
    else:
        context = OracleContext.for_group(
            group, config.prime, args.k, prec=config.precision,
        )
        oracle = MockOracle(context, group, seed=config.seed)

    book = ledger.PrecisionLedger()
    values = []

    LOGGER.info(
        "Summing {} characters over {} elements".format(
            len(chars), group.size,
        )
    )

    for chi in chars:
        values.append(assembly.lp_value(
            chi, oracle, check_gate=args.check_gate,
            b_override=config.b_override, book=book,
            cpu_count=config.cpus,
        ))

    LOGGER.info("Worst precision loss: {}".format(book.worst))
    header, rows = export.lvalue_table(values)

    return _write(
        args, config, header, rows, "lsum",
        data={
            "values": [value.to_dict() for value in values],
            "precision": book.to_dict(),
        },
        db={
            "characters": chars,
            "lvalues": list(enumerate(values)),
            "prime": config.prime,
        },
    )


def cmd_eisenstein(args, config):
    f = eisenstein(
        args.k, _eps(args, config), config.truncation, config.prime,
        prec=config.precision, generator=config.generator(),
    )
    header, rows = export.qexp_table(f)

    return _write(args, config, header, rows, "eisenstein", data=f.to_dict())


def cmd_deplete(args, config):
    f = deplete(_form(args, config))
    header, rows = export.qexp_table(f)

    return _write(args, config, header, rows, "deplete", data=f.to_dict())


def cmd_nabla(args, config):
    f = _form(args, config)
    g = deplete(f)
    J = config.grading_cap

    if args.steps is not None:
        section = nabla_iterate(
            WSection.from_form(g, f.weight), args.steps, cap=J,
        )
    else:
        if args.nu is not None:
            nu = PadicWeight.from_string(args.nu, config.prime)
        else:
            nu = classical_embed(args.nu_classical, config.prime)
            if args.nu_classical >= 0:
                # Integer powers stop at degree nu
                J = min(J, args.nu_classical)

        section, report = nabla_nu(
            g, f.weight, nu, J, prec=config.precision,
            cpu_count=config.cpus,
        )
        LOGGER.debug(report)

    section = section.reduce(config.precision)
    header, rows = export.section_table(section)

    return _write(args, config, header, rows, "nabla",
                  data=section.to_dict())


def cmd_coleman(args, config):
    section = coleman_primitive(deplete(_form(args, config)), args.r)
    header, rows = export.section_table(section)

    return _write(args, config, header, rows, "coleman",
                  data=section.to_dict())


def cmd_valuations(args, config):
    rows = [
        row
        for row in ledger.ledger_rows(
            [config.prime], args.levels, classical=args.classical,
        )
        if args.case in ("both", row[1])
    ]

    return _write(
        args, config, export.VALUATION_HEADER, rows, "valuations",
        db={"valuations": rows},
    )


def cmd_check(args, config):
    results = checks.run_checks(config, names=args.names or None)
    rows = [r.to_row() for r in results]
    widths = [
        max(
            [len(checks.RESULT_HEADER[i])] + [len(str(row[i])) for row in rows]
        )
        for i in range(len(checks.RESULT_HEADER))
    ]

    for row in [checks.RESULT_HEADER] + rows:
        print("  ".join(
            str(cell).ljust(width) for cell, width in zip(row, widths)
        ).rstrip())

    if args.out:
        export.export_table(
            config.out_path(args.out), checks.RESULT_HEADER, rows,
            kind="check",
        )

    return EXIT_OK if all(results) else EXIT_USAGE


COMMANDS = {
    "classgroup": cmd_classgroup,
    "hgroup": cmd_hgroup,
    "chars": cmd_chars,
    "eisenstein": cmd_eisenstein,
    "deplete": cmd_deplete,
    "nabla": cmd_nabla,
    "coleman": cmd_coleman,
    "valuations": cmd_valuations,
    "lsum": cmd_lsum,
    "check": cmd_check,
}


def _log_dir(args):
    out_dir = os.environ.get(OUT_DIR_ENV) or \
        getattr(args, "out_dir", None) or os.getcwd()

    if getattr(args, "out", None):
        return os.path.dirname(os.path.join(out_dir, args.out))

    return out_dir


def main(args):
    """
    Run a padlfun subcommand using command line arguments.

    Parameters
    ----------
    args : list of str

    Returns
    -------
    int
        0 on success, 1 on usage errors and failed checks, 2 when a
        precondition fails and 3 when a precision certificate fails.
    """
    parser, args = _parse_args(args)

    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    verbosity = (args.verbose or 0) - (args.quiet or 0)

    if verbosity < -2:
        level = logging.CRITICAL
    elif verbosity == -2:
        level = logging.ERROR
    elif verbosity == -1:
        level = logging.WARNING
    elif verbosity == 0:
        level = logging.INFO
    else:
        level = logging.DEBUG

    logger = logging.getLogger('padlfun')
    logger.setLevel(logging.DEBUG)
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    handlers = []

    ch = logging.StreamHandler(sys.stderr)
    ch.setLevel(level)
    ch.setFormatter(formatter)
    handlers.append(ch)

    if args.write_log:
        try:
            fh = logging.FileHandler(
                os.path.join(_log_dir(args), 'padlfun.log')
            )

            fh.setLevel(logging.DEBUG)
            fh.setFormatter(formatter)
            handlers.append(fh)
        except OSError:
            pass

    for handler in handlers:
        logger.addHandler(handler)

    LOGGER.debug(sys.argv)
    LOGGER.debug(args)

    try:
        config = RunConfig.from_args(args)
        status = COMMANDS[args.command](args, config)
    except PreconditionError as err:
        LOGGER.error("Precondition failed: {}".format(err))
        return EXIT_PRECONDITION
    except PrecisionError as err:
        LOGGER.error("Precision certificate failed: {}".format(err))
        return EXIT_PRECISION
    except PadlfunError as err:
        LOGGER.error(err)
        return EXIT_USAGE
    finally:
        for handler in handlers:
            logger.removeHandler(handler)
            handler.close()

    return status if isinstance(status, int) else EXIT_OK


def run():
    """
    Entry point of the padlfun console script.
    """
    multiprocessing.freeze_support()

    try:
        status = main(sys.argv[1:])
    except Exception as e:
        LOGGER.error("padlfun has crashed!", exc_info=True)
        raise e

    sys.exit(status)


if __name__ == "__main__":
    run()
