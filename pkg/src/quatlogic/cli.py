"""Command-line front end.

Exit codes: 0 success, 1 logical failure (invalid netlist, mismatch,
violated law), 2 usage error.  A file argument of ``-`` reads stdin.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .algebra import run_law_suite
from .errors import QuatError
from .library import EXAMPLES
from .lower import lower_netlist, pack_truth_table
from .netlist import NetlistError, read_netlist, serialize_netlist
from .render import RenderOptions, render
from .sim import DEFAULT_MAX_INPUTS, simulate, truth_table, truth_table_from_csv
from .verify import check_equivalence, fuzz, reports_to_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _load(args):
    binary = True if getattr(args, "binary", False) else None
    return read_netlist(args.file, _read_text(args.file), binary)


def cmd_check(args):
    n = _load(args)
    kind = "binary" if n.binary else "quaternary"
    print(
        f"{n.name}: ok ({kind}, {len(n.inputs)} inputs, {len(n.constants)} constants, "
        f"{len(n.gates)} gates, {len(n.outputs)} outputs)"
    )
    return EXIT_OK


def _parse_settings(settings):
    env = {}
    for item in settings:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise UsageError(f"--set expects NAME=VALUE, got {item!r}")
        try:
            env[name.strip()] = int(value)
        except ValueError:
            raise UsageError(f"--set {name}: {value!r} is not an integer") from None
    return env


def cmd_sim(args):
    n = _load(args)
    outs = simulate(n, _parse_settings(args.set))
    for name in n.output_names:
        print(f"{name} = {outs[name]}")
    return EXIT_OK


def cmd_tt(args):
    n = _load(args)
    t = truth_table(n, max_inputs=args.max_inputs * (2 if n.binary else 1))
    if args.csv:
        _write_text(args.csv, t.to_csv())
    else:
        print(t.to_text())
    return EXIT_OK


def cmd_lower(args):
    n = _load(args)
    if n.binary:
        raise UsageError("input is already a binary netlist")
    _write_text(args.output, serialize_netlist(lower_netlist(n)))
    return EXIT_OK


def cmd_verify(args):
    n = _load(args)
    if n.binary:
        raise UsageError("verify needs a quaternary netlist")
    report = check_equivalence(n, max_inputs=args.max_inputs)
    if args.csv:
        _write_text(args.csv, reports_to_csv([report]))
    else:
        print(report.to_text())
    return EXIT_OK if report.equivalent else EXIT_FAIL


def cmd_laws(args):
    report = run_law_suite()
    if args.csv:
        import csv

        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["law", "locus", "status", "statement", "detail"])
        w.writerows(report.rows())
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def _infer_inputs(text):
    rows = sum(1 for line in text.splitlines()[1:] if line.strip())
    k, size = 0, 1
    while size < rows:
        size *= 4
        k += 1
    if size != rows:
        raise QuatError(f"{rows} rows is not a power of 4; pass --inputs")
    return k


def cmd_pack_tt(args):
    text = _read_text(args.file)
    k = args.inputs if args.inputs is not None else _infer_inputs(text)
    packed = pack_truth_table(truth_table_from_csv(text, k, radix=4))
    _write_text(args.output, packed.to_csv())
    return EXIT_OK


def cmd_render(args):
    n = _load(args)
    values = _parse_settings(args.set) if args.set else None
    opts = RenderOptions("svg" if args.svg else "dot", not args.no_slots, values)
    _write_text(args.output, render(n, opts))
    return EXIT_OK


def cmd_example(args):
    _write_text(args.output, EXAMPLES[args.name])
    return EXIT_OK


def cmd_fuzz(args):
    reports = []
    for _, report in fuzz(range(args.start, args.start + args.seeds)):
        reports.append(report)
        if not report.equivalent and not args.csv:
            print(report.to_text())
    bad = sum(not r.equivalent for r in reports)
    if args.csv:
        _write_text(args.csv, reports_to_csv(reports))
    print(f"{len(reports)} netlists, {len(reports) - bad} equivalent, {bad} mismatched")
    return EXIT_OK if bad == 0 else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(
        prog="quatlogic", description="Quaternary logic netlists: simulate, lower to binary, verify."
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def netlist_cmd(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help=".mvl or .bvl netlist, '-' for stdin")
        sp.add_argument("--binary", action="store_true", help="treat input as a binary netlist")
        sp.set_defaults(func=func)
        return sp

    netlist_cmd("check", cmd_check, "parse and validate a netlist")

    sp = netlist_cmd("sim", cmd_sim, "simulate one assignment")
    sp.add_argument("--set", action="append", default=[], metavar="NAME=V")

    sp = netlist_cmd("tt", cmd_tt, "print or export the full truth table")
    sp.add_argument("--csv", metavar="PATH", help="write CSV instead of a text table")
    sp.add_argument("--max-inputs", type=int, default=DEFAULT_MAX_INPUTS)

    sp = netlist_cmd("lower", cmd_lower, "convert to an equivalent binary netlist")
    sp.add_argument("-o", "--output", default="-", metavar="PATH")

    sp = netlist_cmd("verify", cmd_verify, "exhaustive equivalence check against the lowering")
    sp.add_argument("--csv", metavar="PATH")
    sp.add_argument("--max-inputs", type=int, default=DEFAULT_MAX_INPUTS)

    sp = sub.add_parser("laws", help="run the quaternary algebra law suite")
    sp.add_argument("--csv", action="store_true", help="print rows as CSV")
    sp.set_defaults(func=cmd_laws)

    sp = sub.add_parser("pack-tt", help="pack a quaternary CSV truth table into binary")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default="-", metavar="PATH")
    sp.add_argument("--inputs", type=int, help="number of input columns (default: from row count)")
    sp.set_defaults(func=cmd_pack_tt)

    sp = netlist_cmd("render", cmd_render, "emit a Graphviz schematic")
    sp.add_argument("--svg", action="store_true", help="run Graphviz dot to produce SVG")
    sp.add_argument("--no-slots", action="store_true", help="omit slot annotations")
    sp.add_argument("--set", action="append", default=[], metavar="NAME=V",
                    help="annotate wires with values for this assignment")
    sp.add_argument("-o", "--output", default="-", metavar="PATH")

    sp = sub.add_parser("example", help="write a built-in example netlist")
    sp.add_argument("name", choices=sorted(EXAMPLES))
    sp.add_argument("-o", "--output", default="-", metavar="PATH")
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("fuzz", help="random lowering equivalence campaign")
    sp.add_argument("--seeds", type=int, default=100)
    sp.add_argument("--start", type=int, default=0, help="first seed")
    sp.add_argument("--csv", metavar="PATH")
    sp.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NetlistError as exc:
        for issue in exc.issues:
            print(f"error: {issue}", file=sys.stderr)
        return EXIT_FAIL
    except (QuatError, RuntimeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
