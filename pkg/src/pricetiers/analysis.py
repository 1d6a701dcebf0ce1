"""Cross-scheme comparison: revenue curves, served users, welfare baselines."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .complete import solve_complete
from .errors import SolutionInvariantError
from .market import Market, undercuts
from .partial import solve_partial
from .single import solve_single
from .solution import SchemeSolution


@dataclass(frozen=True)
class WelfareResult:
    """Welfare-maximizing allocation under the capacity constraint."""

    allocations: tuple[float, ...]  # per user, in market order
    welfare: float
    multiplier: float


@dataclass(frozen=True)
class ComparisonReport:
    """Everything the compare report shows for one market.

    ``revenues`` maps each level count 1..group_count to the best tiered
    revenue; the endpoints coincide with the single-price and per-group
    optima. Effective market sizes count users with a positive allocation.
    """

    revenues: dict[int, float]
    differentiation_gain: float
    effective_market_sizes: dict[str, int]
    welfare_optimal: float
    welfare_per_scheme: dict[str, float]


def differentiation_gain(market: Market) -> float:
    """Revenue ratio of per-group pricing over the single price (>= 1).

    Defined as 1 when the single-price revenue is zero, which only happens
    without capacity; both schemes earn nothing then.
    """
    single = solve_single(market).revenue
    if single <= 0.0:
        return 1.0
    return solve_complete(market).revenue / single


def revenue_curve(market: Market) -> dict[int, float]:
    """Optimal tiered revenue for every level count 1..group_count."""
    return {
        levels: solve_partial(market, levels).revenue
        for levels in range(1, market.group_count + 1)
    }


def effective_market_size(solution: SchemeSolution) -> int:
    """Users buying a positive amount at the solution."""
    return sum(solution.served)


def welfare_optimum(market: Market) -> WelfareResult:
    """Allocation maximizing total utility sum N*theta*ln(1+s) given capacity.

    Same threshold scan as the revenue solvers but with the welfare
    stationarity theta/(1+s) = mu instead of theta/(1+s)^2 = lam, so the
    water level is mu = sum(N*theta) / (S + sum(N)) over the served prefix.
    """
    n_groups = market.group_count
    thetas = market.thetas
    if market.capacity <= 0:
        return WelfareResult((0.0,) * n_groups, 0.0, thetas[0])

    value = 0.0
    users = 0.0
    for k in range(1, n_groups + 1):
        group = market.groups[k - 1]
        value += group.count * group.theta
        users += group.count
        mu = value / (market.capacity + users)
        if undercuts(mu, thetas[k - 1]) and (k == n_groups or not undercuts(mu, thetas[k])):
            allocations = tuple(
                max(t / mu - 1.0, 0.0) if i < k else 0.0 for i, t in enumerate(thetas)
            )
            welfare = sum(
                g.count * g.theta * math.log1p(s) for g, s in zip(market.groups, allocations)
            )
            return WelfareResult(allocations, welfare, mu)
    raise SolutionInvariantError("no consistent welfare threshold found")


def welfare_of(market: Market, solution: SchemeSolution) -> float:
    """Total utility generated by a solution's allocations."""
    return sum(
        g.count * g.theta * math.log1p(s) for g, s in zip(market.groups, solution.allocations)
    )


def build_comparison(market: Market) -> ComparisonReport:
    """Assemble the full cross-scheme report used by the CLI."""
    single = solve_single(market)
    complete = solve_complete(market)
    return ComparisonReport(
        revenues=revenue_curve(market),
        differentiation_gain=differentiation_gain(market),
        effective_market_sizes={
            "single": effective_market_size(single),
            "complete": effective_market_size(complete),
        },
        welfare_optimal=welfare_optimum(market).welfare,
        welfare_per_scheme={
            "single": welfare_of(market, single),
            "complete": welfare_of(market, complete),
        },
    )
