"""Containers for solved pricing schemes and their structural checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import SolutionInvariantError
from .market import EPS_FEAS, Market, user_demand


@dataclass(frozen=True)
class Partition:
    """Consecutive grouping of market groups into same-price clusters.

    ``spans`` are half-open (start, stop) index ranges over the
    theta-descending group list. ``effective_counts[j]`` says how many top
    groups of cluster j buy a positive amount (0 means the whole cluster is
    priced out, in which case its price is pinned to the cluster's top theta).
    ``cluster_prices[j]`` is the price charged to every group in cluster j.
    """

    spans: tuple[tuple[int, int], ...]
    effective_counts: tuple[int, ...]
    cluster_prices: tuple[float, ...]

    @property
    def levels(self) -> int:
        return len(self.spans)

    def cluster_of(self, group_index: int) -> int:
        """0-based cluster id holding a 0-based group index."""
        for j, (start, stop) in enumerate(self.spans):
            if start <= group_index < stop:
                return j
        raise IndexError(group_index)

    def group_index_lists(self) -> tuple[tuple[int, ...], ...]:
        """Clusters as 1-based group index tuples (for reports)."""
        return tuple(tuple(range(start + 1, stop + 1)) for start, stop in self.spans)


@dataclass(frozen=True)
class SchemeSolution:
    """Outcome of one pricing scheme on one market.

    ``prices``, ``allocations`` and ``admitted`` are per group in market
    order; allocations are per admitted user. ``shadow_price`` is the
    marginal revenue of one extra unit of capacity at the solution.
    ``effective_threshold`` is the largest 1-based group index buying a
    positive amount, 0 if nobody does. ``partition`` is filled only for the
    tiered scheme.
    """

    scheme: str  # "complete" | "single" | "partial"
    prices: tuple[float, ...]
    allocations: tuple[float, ...]
    admitted: tuple[int, ...]
    shadow_price: float
    effective_threshold: int
    revenue: float
    partition: Partition | None = None

    @property
    def served(self) -> tuple[int, ...]:
        """Users per group with a meaningfully positive allocation."""
        return tuple(
            n if s > EPS_FEAS else 0 for n, s in zip(self.admitted, self.allocations)
        )


def effective_threshold_of(allocations: Sequence[float]) -> int:
    """Largest 1-based index with a strictly positive allocation (0 if none)."""
    threshold = 0
    for i, s in enumerate(allocations):
        if s > 0.0:
            threshold = i + 1
    return threshold


def check_solution(market: Market, solution: SchemeSolution) -> None:
    """Raise :class:`SolutionInvariantError` unless the solution is coherent.

    Checks the structural guarantees every scheme promises: per-group vectors
    line up with the market, allocations equal the demand response to the
    quoted prices, admitted counts stay within head counts, total demand fits
    the capacity, and the reported revenue matches its own components.
    """
    n_groups = market.group_count
    for name, values in (
        ("prices", solution.prices),
        ("allocations", solution.allocations),
        ("admitted", solution.admitted),
    ):
        if len(values) != n_groups:
            raise SolutionInvariantError(f"{name} has {len(values)} entries for {n_groups} groups")

    for i, (group, price, alloc, adm) in enumerate(
        zip(market.groups, solution.prices, solution.allocations, solution.admitted)
    ):
        if not price > 0:
            raise SolutionInvariantError(f"group {i + 1}: price {price} is not positive")
        if alloc < 0:
            raise SolutionInvariantError(f"group {i + 1}: negative allocation {alloc}")
        if not 0 <= adm <= group.count:
            raise SolutionInvariantError(f"group {i + 1}: admitted {adm} outside 0..{group.count}")
        response = user_demand(group.theta, price)
        if abs(alloc - response) > 1e-12 * max(1.0, abs(response)):
            raise SolutionInvariantError(
                f"group {i + 1}: allocation {alloc} is not the demand response {response}"
            )

    used = sum(n * s for n, s in zip(solution.admitted, solution.allocations))
    cap = market.capacity
    if used > cap + EPS_FEAS * max(1.0, cap):
        raise SolutionInvariantError(f"total demand {used} exceeds capacity {cap}")

    booked = sum(
        n * p * s for n, p, s in zip(solution.admitted, solution.prices, solution.allocations)
    )
    if abs(booked - solution.revenue) > EPS_FEAS * max(1.0, abs(booked)):
        raise SolutionInvariantError(
            f"reported revenue {solution.revenue} differs from recomputed {booked}"
        )
