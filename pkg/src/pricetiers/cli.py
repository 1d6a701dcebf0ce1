"""Command-line front end: solve, compare, and verify scenario files.

Exit codes: 0 success, 1 input/parse/validation problems, 2 verification
failure (a brute-force search disagrees with a solver), 3 internal invariant
breach. Output is byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from .analysis import build_comparison
from .bruteforce import (
    GridSpec,
    cluster_price_search,
    group_price_search,
    single_price_search,
)
from .complete import solve_complete
from .errors import InvalidLevelsError, PricingError, SolutionInvariantError
from .market import EPS_FEAS, Market
from .partial import solve_partial
from .report import (
    fnum,
    render_comparison_csv,
    render_comparison_json,
    render_comparison_table,
    render_solution_csv,
    render_solution_json,
    render_solution_table,
)
from .scenario import load_scenario, random_market
from .single import solve_single
from .solution import check_solution

# Random markets checked by `verify --seed`, drawn small enough that every
# brute-force search applies.
VERIFY_RANDOM_MARKETS = 3


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 1, not 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_code_with_message(message))

    def exit_code_with_message(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pricetiers",
        description="Revenue-optimal pricing schemes for a capacity-limited service.",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    solve = commands.add_parser("solve", help="solve one pricing scheme")
    solve.add_argument(
        "--scheme", required=True, choices=("cp", "sp", "pp"),
        help="cp: one price per group, sp: one price overall, pp: tiered",
    )
    solve.add_argument("--levels", type=int, default=None, help="price levels (pp only)")
    solve.add_argument("--input", required=True, help="scenario file (JSON)")
    solve.add_argument("--format", choices=("table", "csv", "json"), default="table")

    compare = commands.add_parser("compare", help="compare schemes on one market")
    compare.add_argument("--input", required=True, help="scenario file (JSON)")
    compare.add_argument("--format", choices=("table", "csv", "json"), default="table")
    compare.add_argument(
        "--figures", default=None, metavar="DIR",
        help="also render figures and a CSV copy into DIR",
    )

    verify = commands.add_parser("verify", help="check solvers against grid searches")
    verify.add_argument("--input", required=True, help="scenario file (JSON)")
    verify.add_argument("--grid", required=True, type=int, help="grid points per price axis")
    verify.add_argument(
        "--seed", type=int, default=None,
        help="also verify seeded random markets",
    )
    return parser


def _cmd_solve(args) -> int:
    scenario = load_scenario(args.input)
    market = scenario.to_market()
    if args.scheme == "cp":
        solution = solve_complete(market)
    elif args.scheme == "sp":
        solution = solve_single(market)
    else:
        if args.levels is None:
            raise InvalidLevelsError("--levels is required for scheme pp")
        solution = solve_partial(market, args.levels)
    check_solution(market, solution)

    if args.format == "csv":
        text = render_solution_csv(market, solution)
    elif args.format == "json":
        text = render_solution_json(market, solution, scenario.label)
    else:
        text = render_solution_table(market, solution, scenario.label)
    sys.stdout.write(text)
    return 0


def _cmd_compare(args) -> int:
    scenario = load_scenario(args.input)
    market = scenario.to_market()
    report = build_comparison(market)

    if args.format == "csv":
        text = render_comparison_csv(report)
    elif args.format == "json":
        text = render_comparison_json(market, report, scenario.label)
    else:
        text = render_comparison_table(market, report, scenario.label)
    sys.stdout.write(text)

    if args.figures is not None:
        from .figures import save_comparison_figures

        for path in save_comparison_figures(market, report, args.figures, scenario.label):
            print(f"wrote: {path}", file=sys.stderr)
    return 0


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= EPS_FEAS * max(1.0, abs(a), abs(b))


def _verify_market(market: Market, grid: GridSpec, heading: str) -> tuple[list[str], bool]:
    """Run every applicable grid search against the solvers on one market."""
    lines = [heading]
    ok = True
    slack = 5.0 / grid.points

    def record(name: str, passed: bool, detail: str) -> None:
        nonlocal ok
        ok = ok and passed
        status = "PASS" if passed else "FAIL"
        lines.append(f"  {name:<42s} {status}  {detail}")

    if market.capacity <= 0:
        lines.append("  all checks skipped: zero capacity (nothing to allocate)")
        return lines, ok

    def agreement(solver_revenue: float, search_revenue: float) -> bool:
        return solver_revenue >= search_revenue - slack * abs(search_revenue) - 1e-12

    sp = solve_single(market)
    sp_search = single_price_search(market, grid, solver_price=sp.prices[0])
    record(
        "single-price grid agreement",
        agreement(sp.revenue, sp_search.revenue),
        f"solver={fnum(sp.revenue)} search={fnum(sp_search.revenue)}",
    )
    record(
        "single-price feasibility recheck",
        sp_search.check.feasible and _close(sp_search.check.revenue, sp.revenue),
        f"demand={fnum(sp_search.check.demand)} capacity={fnum(market.capacity)}",
    )

    if market.group_count <= 3:
        cp = solve_complete(market)
        cp_search = group_price_search(market, grid, solver_prices=cp.prices)
        record(
            "per-group grid agreement",
            agreement(cp.revenue, cp_search.revenue),
            f"solver={fnum(cp.revenue)} search={fnum(cp_search.revenue)}",
        )
        record(
            "per-group feasibility recheck",
            cp_search.check.feasible and _close(cp_search.check.revenue, cp.revenue),
            f"demand={fnum(cp_search.check.demand)} capacity={fnum(market.capacity)}",
        )
    else:
        lines.append("  per-group search skipped: more than 3 groups")

    if market.group_count <= 4:
        for levels in range(1, min(market.group_count, 3) + 1):
            pp = solve_partial(market, levels)
            pp_search = cluster_price_search(market, levels, grid, solver_prices=pp.prices)
            record(
                f"clustered grid agreement (levels={levels})",
                agreement(pp.revenue, pp_search.revenue),
                f"solver={fnum(pp.revenue)} search={fnum(pp_search.revenue)}",
            )
            record(
                f"clustered feasibility recheck (levels={levels})",
                pp_search.check.feasible and _close(pp_search.check.revenue, pp.revenue),
                f"demand={fnum(pp_search.check.demand)} capacity={fnum(market.capacity)}",
            )
    else:
        lines.append("  clustered search skipped: more than 4 groups")

    return lines, ok


def _cmd_verify(args) -> int:
    scenario = load_scenario(args.input)
    market = scenario.to_market()
    grid = GridSpec(points=args.grid)

    print("verification report")
    print(f"grid: {args.grid}")
    print(f"seed: {args.seed if args.seed is not None else 'none'}")

    heading = (
        f"market: {scenario.label or args.input} "
        f"(groups={market.group_count} capacity={fnum(market.capacity)})"
    )
    lines, ok = _verify_market(market, grid, heading)
    print("\n".join(lines))

    if args.seed is not None:
        rng = random.Random(args.seed)
        for index in range(VERIFY_RANDOM_MARKETS):
            sample = random_market(rng, min_groups=1, max_groups=3)
            heading = (
                f"market: random[{index}] "
                f"(groups={sample.group_count} capacity={fnum(sample.capacity)})"
            )
            sample_lines, sample_ok = _verify_market(sample, grid, heading)
            print("\n".join(sample_lines))
            ok = ok and sample_ok

    print(f"result: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 2


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "compare":
            return _cmd_compare(args)
        return _cmd_verify(args)
    except SolutionInvariantError as exc:
        print(f"pricetiers: internal invariant breach: {exc}", file=sys.stderr)
        return 3
    except PricingError as exc:
        print(f"pricetiers: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"pricetiers: unexpected failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
