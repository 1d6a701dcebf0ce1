"""Per-group pricing (complete differentiation), solved in closed form.

With one price per group, substituting the demand response s = theta/p - 1
turns each served user's payment into theta*s/(1+s), a concave function of
the allocation. A single multiplier lam on the capacity constraint then
yields every allocation as sqrt(theta/lam) - 1 across the groups rich enough
to stay in the market. The solver scans the served-group threshold, computes
lam in closed form, and prices everyone else at their own theta so that the
output is canonical and deterministic.
"""

from __future__ import annotations

import math

from .errors import IndexOutOfRangeError, SolutionInvariantError, ZeroCapacityError
from .market import Market, undercuts, user_demand
from .solution import SchemeSolution, effective_threshold_of


def capacity_multiplier(market: Market, top: int) -> float:
    """Shadow price at which the top groups' demand exactly fills capacity.

    For the candidate served set of the ``top`` highest-theta groups, solving
    sum_i N_i * (sqrt(theta_i / lam) - 1) = S for lam gives

        lam = (sum_i N_i sqrt(theta_i) / (S + sum_i N_i)) ** 2

    Raises:
        IndexOutOfRangeError: top outside 1..group_count.
        ZeroCapacityError: capacity is zero; that degenerate case is handled
            by :func:`solve_complete`, not here.
    """
    if not 1 <= top <= market.group_count:
        raise IndexOutOfRangeError(f"top must be in 1..{market.group_count}, got {top}")
    if market.capacity <= 0:
        raise ZeroCapacityError("multiplier is undefined at zero capacity")
    head = market.groups[:top]
    num = sum(g.count * math.sqrt(g.theta) for g in head)
    den = market.capacity + sum(g.count for g in head)
    return (num / den) ** 2


def effective_group_count(market: Market) -> int:
    """Number of top groups buying a positive amount at the optimum.

    A candidate count k is consistent when its implied multiplier sits
    strictly below theta_k and at or above theta_{k+1}. Groups whose theta
    equals the multiplier are excluded: their demand is zero either way, and
    exclusion keeps the threshold unique.
    """
    thetas = market.thetas
    last = market.group_count
    for k in range(1, last + 1):
        lam = capacity_multiplier(market, k)
        if undercuts(lam, thetas[k - 1]) and (k == last or not undercuts(lam, thetas[k])):
            return k
    raise SolutionInvariantError("no consistent served-group threshold found")


def solve_complete(market: Market) -> SchemeSolution:
    """Revenue-maximizing per-group prices, allocations, and revenue.

    Served groups pay sqrt(theta_i * lam) and buy sqrt(theta_i / lam) - 1;
    everyone else is priced at their own theta (the canonical priced-out
    price, chosen so outputs are deterministic). Capacity binds exactly
    whenever it is positive. With zero capacity everything is priced out and
    the shadow price is reported as the top theta, the smallest multiplier
    supporting that outcome.
    """
    thetas = market.thetas
    if market.capacity <= 0:
        zeros = (0.0,) * market.group_count
        return SchemeSolution(
            scheme="complete",
            prices=thetas,
            allocations=zeros,
            admitted=market.counts,
            shadow_price=thetas[0],
            effective_threshold=0,
            revenue=0.0,
        )

    top = effective_group_count(market)
    lam = capacity_multiplier(market, top)
    prices = tuple(
        math.sqrt(theta * lam) if i < top else theta for i, theta in enumerate(thetas)
    )
    allocations = tuple(user_demand(theta, p) for theta, p in zip(thetas, prices))
    revenue = sum(
        g.count * p * s for g, p, s in zip(market.groups, prices, allocations)
    )
    return SchemeSolution(
        scheme="complete",
        prices=prices,
        allocations=allocations,
        admitted=market.counts,
        shadow_price=lam,
        effective_threshold=effective_threshold_of(allocations),
        revenue=revenue,
    )
