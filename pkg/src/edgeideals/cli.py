"""Command line interface.

Subcommands: bounds, conjecture, crosscheck, betti <graph6>, paths <graph6>.
Exit codes: 0 all checks passed, 1 violations found, 2 usage or guard error.
"""

from __future__ import annotations

import argparse
import sys

from . import pipelines
from .adpaths import admissible_paths, initial_ideal, path_monomial
from .betti import hochster_betti
from .errors import FormatError, GuardError
from .graphs import parse_graph6
from .pipelines import LARGE_PRIME, RecordCache

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeideals",
        description=(
            "Binomial edge ideal workbench: initial ideals from admissible"
            " paths, Betti tables over finite fields, and exhaustive"
            " verification of the regularity bounds and the extremal-graph"
            " conjecture on small-graph corpora."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p_):
        p_.add_argument("--field", type=int, default=LARGE_PRIME,
                        help="prime field (default 32003, the characteristic-0 proxy)")
        p_.add_argument("--jobs", type=int, default=1, help="worker processes")
        p_.add_argument("--format", choices=["json", "csv"], default="csv")
        p_.add_argument("--out", default=None, help="output path ('-' = stdout)")
        p_.add_argument("--cache", default=None, help="result cache directory")
        p_.add_argument("--budget-ms", type=int, default=None,
                        help="soft per-run budget; exceeding it aborts with a guard error")
        p_.add_argument("--timings", action="store_true",
                        help="keep wall-clock timings in reports (breaks byte-stability)")

    b = sub.add_parser("bounds", help="regularity bound records for a corpus")
    b.add_argument("--n", type=int, default=None, help="exhaustive corpus on n vertices")
    b.add_argument("--input", default=None, help="graph6 file instead of --n")
    b.add_argument("--relabel-sweep", type=int, default=0,
                   help="also report min/max regularity over k random relabelings")
    common(b)

    c = sub.add_parser("conjecture", help="extremal-regularity scan at one n")
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--input", default=None, help="graph6 file (required for n > 7)")
    common(c)

    x = sub.add_parser("crosscheck", help="proof-machinery suites up to max n")
    x.add_argument("--n", type=int, default=4, help="largest vertex count (<= 5)")
    common(x)

    bt = sub.add_parser("betti", help="Betti table of the initial ideal of one graph")
    bt.add_argument("graph6")
    common(bt)

    pt = sub.add_parser("paths", help="admissible paths of one graph")
    pt.add_argument("graph6")
    pt.add_argument("--monomials", action="store_true",
                    help="append the path monomial to each line")
    common(pt)

    return parser


def _cmd_bounds(args) -> int:
    if (args.n is None) == (args.input is None):
        print("bounds: exactly one of --n or --input is required", file=sys.stderr)
        return EXIT_USAGE
    graphs = pipelines._graph_stream(args.n, args.input)
    cache = RecordCache(args.cache) if args.cache else None
    result = pipelines.run_bounds(
        graphs,
        args.field,
        jobs=args.jobs,
        cache=cache,
        relabel_sweep=args.relabel_sweep,
        budget_ms=args.budget_ms,
    )
    pipelines.emit_report(result, args.format, args.out, include_timings=args.timings)
    bad = [r for r in result["records"] if not (r.bounds_ok and r.prop35_ok and r.lemma34_ok)]
    if bad or result["errors"]:
        return EXIT_VIOLATIONS
    return EXIT_OK


def _cmd_conjecture(args) -> int:
    if args.n is None and args.input is None:
        print("conjecture: --n or --input is required", file=sys.stderr)
        return EXIT_USAGE
    cache = RecordCache(args.cache) if args.cache else None
    summary = pipelines.run_conjecture_scan(
        args.n, args.field, jobs=args.jobs, input_path=args.input,
        budget_ms=args.budget_ms, cache=cache,
    )
    pipelines.emit_json(summary.to_dict(), args.out)
    return EXIT_OK if summary.conjecture_ok else EXIT_VIOLATIONS


def _cmd_crosscheck(args) -> int:
    report = pipelines.run_crosschecks(args.n, args.field)
    pipelines.emit_json(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_VIOLATIONS


def _cmd_betti(args) -> int:
    g = parse_graph6(args.graph6)
    table = hochster_betti(initial_ideal(g), args.field)
    text = table.dump()
    pipelines._write_out(text, args.out)
    return EXIT_OK


def _cmd_paths(args) -> int:
    g = parse_graph6(args.graph6)
    lines = []
    for p in admissible_paths(g):
        if args.monomials:
            lines.append(f"{p.text()} {path_monomial(p, g.n).text()}")
        else:
            lines.append(p.text())
    pipelines._write_out("\n".join(lines) + "\n" if lines else "", args.out)
    return EXIT_OK


_COMMANDS = {
    "bounds": _cmd_bounds,
    "conjecture": _cmd_conjecture,
    "crosscheck": _cmd_crosscheck,
    "betti": _cmd_betti,
    "paths": _cmd_paths,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (GuardError, FormatError, ValueError, OSError) as exc:
        print(f"edgeideals: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
