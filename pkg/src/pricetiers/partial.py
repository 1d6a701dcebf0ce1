"""Tiered pricing with a fixed number of price levels.

The problem nests three subproblems. Inside a cluster one price serves the
cluster's top groups, summarized by the aggregates (value, users) of its
served prefix. Across clusters, capacity splits by equalizing the marginal
cluster revenue value*users/(s+users)^2, a water-filling step with a
closed-form level. The outer search enumerates consecutive partitions of the
theta-descending groups together with every served-prefix combination and
keeps the best consistent candidate. Enumeration cost is the sum over
partitions of prod(cluster_size + 1), polynomial for a fixed level count.

Only consecutive partitions are searched: with strictly ordered thetas,
mixing a high-theta group into a lower-priced cluster never helps, which the
brute-force search over all set partitions double-checks in the test suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvalidLevelsError, NoActiveClusterError
from .market import EPS_FEAS, Market, undercuts, user_demand
from .solution import Partition, SchemeSolution, effective_threshold_of

Span = tuple[int, int]


def consecutive_partitions(group_count: int, levels: int) -> Iterator[tuple[Span, ...]]:
    """Yield all ways to cut the group list into consecutive non-empty runs.

    Yields exactly C(group_count - 1, levels - 1) span tuples, in
    lexicographic order of the cut positions; each span is a half-open
    (start, stop) pair over 0-based group indices.
    """
    if not 1 <= levels <= group_count:
        raise InvalidLevelsError(f"levels must be in 1..{group_count}, got {levels}")
    for cuts in itertools.combinations(range(1, group_count), levels - 1):
        edges = (0, *cuts, group_count)
        yield tuple((edges[j], edges[j + 1]) for j in range(levels))


@dataclass(frozen=True)
class ClusterAggregate:
    """Sufficient statistics of a cluster's served prefix."""

    value: float  # sum of count * theta over the served prefix
    users: float  # sum of count over the served prefix


def allocate_clusters(
    aggregates: Sequence[ClusterAggregate], capacity: float
) -> tuple[tuple[float, ...], float] | None:
    """Split capacity across active clusters by equalizing marginal revenue.

    A cluster holding resource s earns value - value*users/(s + users);
    equalizing the derivatives gives s_j = sqrt(value_j*users_j/lam) - users_j
    with the water level

        lam = (sum_j sqrt(value_j*users_j) / (capacity + sum_j users_j)) ** 2

    chosen so the shares sum to capacity. Returns None when some share comes
    out negative, i.e. the proposed served sets cannot all be active at once;
    a different served-prefix combination covers that optimum instead.

    Raises:
        NoActiveClusterError: aggregates is empty.
    """
    if not aggregates:
        raise NoActiveClusterError("no active cluster to allocate to")
    root_sum = sum(math.sqrt(a.value * a.users) for a in aggregates)
    lam = (root_sum / (capacity + sum(a.users for a in aggregates))) ** 2
    shares = [math.sqrt(a.value * a.users / lam) - a.users for a in aggregates]
    if any(s < -EPS_FEAS for s in shares):
        return None
    return tuple(max(s, 0.0) for s in shares), lam


@dataclass(frozen=True)
class PartitionCandidate:
    """A consistent (partition, served-prefix) combination and its value."""

    spans: tuple[Span, ...]
    effective_counts: tuple[int, ...]
    cluster_prices: tuple[float, ...]
    cluster_shares: tuple[float, ...]
    multiplier: float
    revenue: float


def evaluate_partition(
    market: Market, spans: tuple[Span, ...], effective_counts: Sequence[int]
) -> PartitionCandidate | None:
    """Price one partition with fixed served prefixes; None if inconsistent.

    A combination is consistent when every served group of an active cluster
    is actually undercut by its cluster price and every excluded group is
    not. Inactive clusters (served prefix 0) charge their top group's theta
    and contribute nothing.
    """
    thetas = market.thetas
    counts = market.counts
    active = [j for j, k in enumerate(effective_counts) if k > 0]
    levels = len(spans)

    if not active:
        prices = tuple(thetas[start] for start, _ in spans)
        return PartitionCandidate(
            spans, tuple(effective_counts), prices, (0.0,) * levels, 0.0, 0.0
        )

    aggregates = []
    for j in active:
        start, _ = spans[j]
        k = effective_counts[j]
        value = sum(counts[i] * thetas[i] for i in range(start, start + k))
        users = float(sum(counts[i] for i in range(start, start + k)))
        aggregates.append(ClusterAggregate(value, users))

    allocated = allocate_clusters(aggregates, market.capacity)
    if allocated is None:
        return None
    shares, lam = allocated

    prices = [0.0] * levels
    cluster_shares = [0.0] * levels
    revenue = 0.0
    for aggregate, j, share in zip(aggregates, active, shares):
        price = math.sqrt(lam * aggregate.value / aggregate.users)
        start, stop = spans[j]
        k = effective_counts[j]
        if not undercuts(price, thetas[start + k - 1]):
            return None
        if start + k < stop and undercuts(price, thetas[start + k]):
            return None
        prices[j] = price
        cluster_shares[j] = share
        revenue += aggregate.value - price * aggregate.users

    for j in range(levels):
        if j not in active:
            prices[j] = thetas[spans[j][0]]

    return PartitionCandidate(
        spans,
        tuple(effective_counts),
        tuple(prices),
        tuple(cluster_shares),
        lam,
        revenue,
    )


def solve_partial(market: Market, levels: int) -> SchemeSolution:
    """Best tiered scheme with exactly ``levels`` price levels.

    Exhausts consecutive partitions and served-prefix vectors in
    lexicographic order, keeping the first candidate at the best revenue so
    ties resolve deterministically. One level reproduces the single-price
    optimum; as many levels as groups reproduces per-group pricing.
    """
    n_groups = market.group_count
    if not 1 <= levels <= n_groups:
        raise InvalidLevelsError(f"levels must be in 1..{n_groups}, got {levels}")
    thetas = market.thetas

    if market.capacity <= 0:
        spans = next(consecutive_partitions(n_groups, levels))
        partition = Partition(
            spans=spans,
            effective_counts=(0,) * levels,
            cluster_prices=tuple(thetas[start] for start, _ in spans),
        )
        prices = tuple(partition.cluster_prices[partition.cluster_of(i)] for i in range(n_groups))
        return SchemeSolution(
            scheme="partial",
            prices=prices,
            allocations=(0.0,) * n_groups,
            admitted=market.counts,
            shadow_price=thetas[0],
            effective_threshold=0,
            revenue=0.0,
            partition=partition,
        )

    best: PartitionCandidate | None = None
    for spans in consecutive_partitions(n_groups, levels):
        prefix_ranges = (range(stop - start + 1) for start, stop in spans)
        for counts_vector in itertools.product(*prefix_ranges):
            candidate = evaluate_partition(market, spans, counts_vector)
            if candidate is not None and (best is None or candidate.revenue > best.revenue):
                best = candidate

    partition = Partition(
        spans=best.spans,
        effective_counts=best.effective_counts,
        cluster_prices=best.cluster_prices,
    )
    prices = tuple(best.cluster_prices[partition.cluster_of(i)] for i in range(n_groups))
    allocations = tuple(user_demand(theta, p) for theta, p in zip(thetas, prices))
    revenue = sum(g.count * p * s for g, p, s in zip(market.groups, prices, allocations))
    return SchemeSolution(
        scheme="partial",
        prices=prices,
        allocations=allocations,
        admitted=market.counts,
        shadow_price=best.multiplier,
        effective_threshold=effective_threshold_of(allocations),
        revenue=revenue,
        partition=partition,
    )
