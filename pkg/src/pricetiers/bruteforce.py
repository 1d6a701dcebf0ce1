"""Grid-search baselines: slow, independent checks on every solver.

These searches evaluate the raw revenue objectives on log-spaced price grids
and know nothing about the closed forms in the solver modules; the test
suite and the CLI ``verify`` command compare the two sides. When a solver's
own answer is passed in, it is re-checked against the raw constraints and
joins the candidate set, so grid sparsity can never make the search lose to
the solver at the solver's own point, and an infeasible solver answer is
reported rather than silently dropped.

Group counts are capped (3 for the per-group search, 4 for the clustered
one) because the product grids grow combinatorially; the caps match what
the verification suite exercises.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    InvalidGridError,
    InvalidLevelsError,
    TooManyGroupsError,
    ZeroCapacityError,
)
from .market import EPS_FEAS, Market


@dataclass(frozen=True)
class GridSpec:
    """Resolution of the log-spaced candidate price grid."""

    points: int = 400

    def __post_init__(self) -> None:
        if self.points < 2:
            raise InvalidGridError(f"grid needs at least 2 points, got {self.points}")


def price_grid(market: Market, grid: GridSpec) -> np.ndarray:
    """Log-spaced candidate prices from theta_min/1000 up to theta_max.

    Relative resolution is what matters for prices spanning orders of
    magnitude, hence the geometric spacing. The top endpoint theta_max prices
    everyone out, so "serve nobody" is always representable.
    """
    return np.geomspace(market.thetas[-1] * 1e-3, market.thetas[0], grid.points)


@dataclass(frozen=True)
class CandidateCheck:
    """Raw re-evaluation of a solver's own answer against the constraints."""

    feasible: bool
    revenue: float
    demand: float


@dataclass(frozen=True)
class SingleSearchResult:
    price: float
    revenue: float
    check: CandidateCheck | None


@dataclass(frozen=True)
class GroupSearchResult:
    prices: tuple[float, ...]
    admitted: tuple[int, ...]
    revenue: float
    check: CandidateCheck | None


@dataclass(frozen=True)
class ClusterSearchResult:
    partition: tuple[tuple[int, ...], ...]  # 1-based group indices per cluster
    cluster_prices: tuple[float, ...]
    revenue: float
    check: CandidateCheck | None


def _recheck(market: Market, prices: Sequence[float]) -> CandidateCheck:
    """Evaluate a full per-group schedule straight from the raw formulas."""
    cap = market.capacity * (1.0 + EPS_FEAS)
    demand = 0.0
    revenue = 0.0
    for g, p in zip(market.groups, prices):
        s = max(g.theta / p - 1.0, 0.0)
        demand += g.count * s
        revenue += g.count * p * s
    return CandidateCheck(feasible=demand <= cap, revenue=revenue, demand=demand)


def single_price_search(
    market: Market, grid: GridSpec, solver_price: float | None = None
) -> SingleSearchResult:
    """Best uniform price on the grid, with optional solver-point injection."""
    if market.capacity <= 0:
        raise ZeroCapacityError("grid search needs positive capacity")
    prices = price_grid(market, grid)
    thetas = np.asarray(market.thetas)[:, None]
    counts = np.asarray(market.counts)[:, None]
    total = (counts * np.maximum(thetas / prices[None, :] - 1.0, 0.0)).sum(axis=0)
    cap = market.capacity * (1.0 + EPS_FEAS)
    revenue = np.where(total <= cap, prices * total, -np.inf)
    i = int(np.argmax(revenue))
    best_price, best_revenue = float(prices[i]), float(revenue[i])

    check = None
    if solver_price is not None:
        check = _recheck(market, [solver_price] * market.group_count)
        if check.feasible and check.revenue > best_revenue:
            best_price, best_revenue = float(solver_price), check.revenue
    return SingleSearchResult(price=best_price, revenue=best_revenue, check=check)


def admission_levels(count: int) -> tuple[int, ...]:
    """Candidate admitted head counts for one group, at most six values.

    Small groups enumerate every count 0..count; larger ones test six evenly
    scaled counts that always include zero and full admission. That is enough
    resolution to confirm (or refute) that turning users away never beats
    pricing them out.
    """
    steps = min(count, 5)
    return tuple(sorted({round(j * count / steps) for j in range(steps + 1)}))


def _flatten(curves: list[np.ndarray]) -> tuple[np.ndarray, tuple[int, ...]]:
    """Outer sum of up to two per-axis curves, flattened."""
    if len(curves) == 1:
        return curves[0], (curves[0].size,)
    outer = curves[0][:, None] + curves[1][None, :]
    return outer.ravel(), (curves[0].size, curves[1].size)


def _best_on_grid(
    demands: list[np.ndarray], revenues: list[np.ndarray], budget: float
) -> tuple[float, tuple[int, ...] | None]:
    """Exact grid maximum of sum(revenues) subject to sum(demands) <= budget.

    Equivalent to brute force over the full product grid, but organized as a
    split: the right half is sorted by demand with a running revenue maximum,
    so each left entry needs one binary search instead of a full sweep. Ties
    resolve to the first attaining index on both sides, keeping the result
    deterministic. Returns (-inf, None) when nothing fits the budget.
    """
    k = len(demands)
    if k == 1:
        masked = np.where(demands[0] <= budget, revenues[0], -np.inf)
        i = int(np.argmax(masked))
        if not math.isfinite(masked[i]):
            return float("-inf"), None
        return float(masked[i]), (i,)

    mid = k // 2
    left_d, left_shape = _flatten(demands[:mid])
    left_r, _ = _flatten(revenues[:mid])
    right_d, right_shape = _flatten(demands[mid:])
    right_r, _ = _flatten(revenues[mid:])

    order = np.argsort(right_d, kind="stable")
    sorted_d = right_d[order]
    sorted_r = right_r[order]
    running_max = np.maximum.accumulate(sorted_r)
    # First index attaining each running maximum, carried forward.
    improves = sorted_r > np.concatenate(([-np.inf], running_max[:-1]))
    running_arg = np.maximum.accumulate(np.where(improves, np.arange(sorted_r.size), 0))

    remaining = budget - left_d
    pos = np.searchsorted(sorted_d, remaining, side="right") - 1
    total = np.where(pos >= 0, left_r + running_max[np.clip(pos, 0, None)], -np.inf)
    i = int(np.argmax(total))
    if not math.isfinite(total[i]):
        return float("-inf"), None

    right_flat = int(order[running_arg[pos[i]]])
    left_idx = np.unravel_index(i, left_shape)
    right_idx = np.unravel_index(right_flat, right_shape)
    return float(total[i]), tuple(int(x) for x in left_idx) + tuple(int(x) for x in right_idx)


def group_price_search(
    market: Market, grid: GridSpec, solver_prices: Sequence[float] | None = None
) -> GroupSearchResult:
    """Exhaustive per-group price search with an admission sweep (<= 3 groups).

    Every combination of grid prices and candidate admitted counts is scored
    against the shared capacity; full admission is always among the
    candidates. This is the raw baseline for per-group pricing and doubles as
    a numerical check that admission control is redundant.
    """
    n_groups = market.group_count
    if n_groups > 3:
        raise TooManyGroupsError(f"per-group search supports at most 3 groups, got {n_groups}")
    if market.capacity <= 0:
        raise ZeroCapacityError("grid search needs positive capacity")

    prices = price_grid(market, grid)
    thetas = market.thetas
    unit_demand = [np.maximum(t / prices - 1.0, 0.0) for t in thetas]
    unit_revenue = [prices * d for d in unit_demand]
    cap = market.capacity * (1.0 + EPS_FEAS)

    best_revenue = float("-inf")
    best_prices: tuple[float, ...] = thetas
    best_admitted: tuple[int, ...] = (0,) * n_groups

    for admitted in itertools.product(*(admission_levels(n) for n in market.counts)):
        active = [i for i, n in enumerate(admitted) if n > 0]
        if not active:
            if 0.0 > best_revenue:
                best_revenue, best_prices, best_admitted = 0.0, thetas, admitted
            continue
        scaled_d = [admitted[i] * unit_demand[i] for i in active]
        scaled_r = [admitted[i] * unit_revenue[i] for i in active]
        revenue, idx = _best_on_grid(scaled_d, scaled_r, cap)
        if idx is not None and revenue > best_revenue:
            schedule = list(thetas)
            for slot, i in enumerate(active):
                schedule[i] = float(prices[idx[slot]])
            best_revenue, best_prices, best_admitted = revenue, tuple(schedule), admitted

    check = None
    if solver_prices is not None:
        check = _recheck(market, solver_prices)
        if check.feasible and check.revenue > best_revenue:
            best_revenue = check.revenue
            best_prices = tuple(float(p) for p in solver_prices)
            best_admitted = market.counts
    return GroupSearchResult(
        prices=best_prices, admitted=best_admitted, revenue=best_revenue, check=check
    )


def set_partitions(count: int, max_parts: int):
    """All ways to split range(count) into at most max_parts non-empty blocks.

    Deterministic order: each new item either joins an existing block (in
    creation order) or opens a new one.
    """
    blocks: list[list[int]] = []

    def extend(i: int):
        if i == count:
            yield tuple(tuple(b) for b in blocks)
            return
        for block in blocks:
            block.append(i)
            yield from extend(i + 1)
            block.pop()
        if len(blocks) < max_parts:
            blocks.append([i])
            yield from extend(i + 1)
            blocks.pop()

    yield from extend(0)


def cluster_price_search(
    market: Market,
    levels: int,
    grid: GridSpec,
    solver_prices: Sequence[float] | None = None,
) -> ClusterSearchResult:
    """Best clustered prices over ALL set partitions into <= levels clusters.

    Unlike the solver, clusters here need not be consecutive in theta order,
    so this search also stress-tests the solver's consecutive-partition
    shortcut. Markets with more than 4 groups are refused (Bell-number
    blowup).
    """
    n_groups = market.group_count
    if n_groups > 4:
        raise TooManyGroupsError(f"cluster search supports at most 4 groups, got {n_groups}")
    if not 1 <= levels <= n_groups:
        raise InvalidLevelsError(f"levels must be in 1..{n_groups}, got {levels}")
    if market.capacity <= 0:
        raise ZeroCapacityError("grid search needs positive capacity")

    prices = price_grid(market, grid)
    group_demand = [
        g.count * np.maximum(g.theta / prices - 1.0, 0.0) for g in market.groups
    ]
    cap = market.capacity * (1.0 + EPS_FEAS)

    best_revenue = float("-inf")
    best_partition: tuple[tuple[int, ...], ...] = ((),)
    best_prices: tuple[float, ...] = ()

    for partition in set_partitions(n_groups, levels):
        cluster_d = [sum(group_demand[i] for i in block) for block in partition]
        cluster_r = [prices * d for d in cluster_d]
        revenue, idx = _best_on_grid(cluster_d, cluster_r, cap)
        if idx is not None and revenue > best_revenue:
            best_revenue = revenue
            best_partition = tuple(tuple(i + 1 for i in block) for block in partition)
            best_prices = tuple(float(prices[j]) for j in idx)

    check = None
    if solver_prices is not None:
        check = _recheck(market, solver_prices)
        if check.feasible and check.revenue > best_revenue:
            best_revenue = check.revenue
            # Group the solver's schedule into clusters by shared price.
            by_price: dict[float, list[int]] = {}
            for i, p in enumerate(solver_prices):
                by_price.setdefault(float(p), []).append(i + 1)
            best_partition = tuple(tuple(block) for block in by_price.values())
            best_prices = tuple(by_price.keys())
    return ClusterSearchResult(
        partition=best_partition,
        cluster_prices=best_prices,
        revenue=best_revenue,
        check=check,
    )
