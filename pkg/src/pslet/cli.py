"""Command line: single solves (JSON) and benchmark table reproduction (CSV).

Exit codes: 0 success / all rows pass, 2 any non-disputed table row fails,
3 configuration or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import PsletError
from .potential import from_terms, quartic
from .solver import SolveRequest, result_to_dict, run_solve
from .tables import reproduce_table, row_to_dict, rows_to_csv, table_exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; config errors are 3
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="pslet",
                     description="Shifted-l pseudoperturbation energies for "
                                 "polynomial oscillators")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one (potential, l) instance",
                           description="V(q) = alpha0*q^2 + alpha*q^4, or "
                                       "--well-depth A for V = -(A/2)q^2 + q^4/2, "
                                       "or explicit --term POWER:COEFF entries.")
    solve.add_argument("--alpha0", type=float, default=None,
                       help="coefficient of q^2")
    solve.add_argument("--alpha", type=float, default=None,
                       help="coefficient of q^4")
    solve.add_argument("--well-depth", type=float, default=None,
                       help="double-well depth a: alpha0 = -a/2, alpha = 1/2")
    solve.add_argument("--term", action="append", default=[],
                       metavar="POWER:COEFF",
                       help="explicit potential term; repeatable")
    solve.add_argument("--l", type=float, required=True,
                       help="angular quantum number (>= -1/2)")
    solve.add_argument("--order", type=int, default=8,
                       help="deepest 1/lbar power in the energy sum")
    solve.add_argument("--pade", action=argparse.BooleanOptionalAction,
                       default=True, help="resum the correction series")
    solve.add_argument("--oracle", action="store_true",
                       help="also solve the radial equation numerically")
    solve.add_argument("--precision", choices=["double", "extended"],
                       default="double")
    solve.add_argument("--q0-min", type=float, default=None,
                       help="left end of the expansion-point bracket")
    solve.add_argument("--q0-max", type=float, default=None,
                       help="right end of the expansion-point bracket")
    solve.add_argument("--json", action="store_true",
                       help="JSON output (default)")
    solve.add_argument("--csv", action="store_true",
                       help="single-row CSV output instead of JSON")

    table = sub.add_parser("table", help="reproduce a benchmark table",
                           description="Emits CSV (default) or JSON with "
                                       "computed, reference and deviation "
                                       "columns per row.")
    table.add_argument("id", choices=["t1", "t2", "t3"])
    table.add_argument("--workers", type=int, default=4,
                       help="bounded worker pool size")
    table.add_argument("--csv", action="store_true", help="CSV output (default)")
    table.add_argument("--json", action="store_true", help="JSON output")
    return parser


def _potential_from(args, parser):
    picked = [args.well_depth is not None,
              bool(args.term),
              args.alpha0 is not None or args.alpha is not None]
    if sum(picked) > 1:
        parser.error("choose one of --well-depth, --term, or --alpha0/--alpha")
    try:
        if args.well_depth is not None:
            return quartic(-args.well_depth / 2.0, 0.5)
        if args.term:
            pairs = []
            for item in args.term:
                power, _, coeff = item.partition(":")
                pairs.append((int(power), float(coeff)))
            return from_terms(pairs)
        return quartic(args.alpha0 or 0.0, args.alpha or 0.0)
    except ValueError as exc:
        parser.error(str(exc))


def _cmd_solve(args, parser) -> int:
    pot = _potential_from(args, parser)
    bracket = None
    if (args.q0_min is None) != (args.q0_max is None):
        parser.error("--q0-min and --q0-max must be given together")
    if args.q0_min is not None:
        bracket = (args.q0_min, args.q0_max)
    req = SolveRequest(potential=pot, l=args.l, order=args.order,
                       pade=args.pade, oracle_check=args.oracle,
                       precision=args.precision, q0_bracket=bracket)
    try:
        res = run_solve(req)
    except PsletError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}},
                         indent=2))
        return 3
    payload = result_to_dict(res)
    if args.csv:
        keys = ["l", "e_total", "e_pade", "e_oracle", "q0", "w", "beta", "lbar"]
        vals = [payload["request"]["l"], payload["e_total"], payload["e_pade"],
                payload["e_oracle"], payload["leading"]["q0"],
                payload["leading"]["w"], payload["leading"]["beta"],
                payload["leading"]["lbar"]]
        print(",".join(keys))
        print(",".join("" if v is None else f"{v:.17g}" for v in vals))
    else:
        print(json.dumps(payload, indent=2))
    return 0


def _cmd_table(args) -> int:
    rows = reproduce_table(args.id, workers=args.workers)
    if args.json:
        print(json.dumps([row_to_dict(r) for r in rows], indent=2))
    else:
        sys.stdout.write(rows_to_csv(rows))
    return table_exit_code(rows)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "solve":
        return _cmd_solve(args, parser)
    return _cmd_table(args)


if __name__ == "__main__":
    sys.exit(main())
