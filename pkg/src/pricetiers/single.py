"""One price for the whole market, found by scanning the served-set size."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRangeError, SolutionInvariantError
from .market import EPS_FEAS, Market, undercuts, user_demand
from .solution import SchemeSolution


@dataclass(frozen=True)
class SingleCandidate:
    """Outcome of serving exactly the ``top`` highest-theta groups.

    ``demand`` is the total purchase of those groups at ``price``. Candidates
    whose price escapes the window that actually serves exactly those groups
    are infeasible and carry a -inf revenue sentinel.
    """

    top: int
    price: float
    demand: float
    revenue: float
    feasible: bool


def _prefix_mass(market: Market, top: int) -> tuple[float, float]:
    head = market.groups[:top]
    return sum(g.count * g.theta for g in head), float(sum(g.count for g in head))


def single_candidate(market: Market, top: int) -> SingleCandidate:
    """Best uniform price that serves exactly the top groups.

    Within the window [theta_{top+1}, theta_top) revenue A - p*B falls as the
    price rises, so the candidate price is the larger of the window floor and
    the capacity-binding price A/(S+B). Feasibility requires the price to
    stay strictly below theta_top (tolerance-relaxed); at exact equality the
    marginal group contributes nothing, so no revenue is lost by excluding it.
    """
    if not 1 <= top <= market.group_count:
        raise IndexOutOfRangeError(f"top must be in 1..{market.group_count}, got {top}")
    thetas = market.thetas
    value, users = _prefix_mass(market, top)
    floor = thetas[top] if top < market.group_count else 0.0
    binding = value / (market.capacity + users)
    price = max(floor, binding)
    feasible = undercuts(price, thetas[top - 1])
    demand = value / price - users
    revenue = value - price * users if feasible else float("-inf")
    return SingleCandidate(top=top, price=price, demand=demand, revenue=revenue, feasible=feasible)


def solve_single(market: Market) -> SchemeSolution:
    """Best single price across all candidate served-set sizes.

    Ties between candidates break toward fewer served groups (the simpler
    scheme), which the ascending scan with a strict comparison delivers for
    free. With positive capacity the winning candidate always binds capacity,
    so the shadow price follows from the binding-price formula
    d/dS [A - A*B/(S+B)] = A*B/(S+B)^2.
    """
    thetas = market.thetas
    n_groups = market.group_count
    if market.capacity <= 0:
        return SchemeSolution(
            scheme="single",
            prices=(thetas[0],) * n_groups,
            allocations=(0.0,) * n_groups,
            admitted=market.counts,
            shadow_price=thetas[0],
            effective_threshold=0,
            revenue=0.0,
        )

    best: SingleCandidate | None = None
    for top in range(1, n_groups + 1):
        candidate = single_candidate(market, top)
        if candidate.feasible and (best is None or candidate.revenue > best.revenue):
            best = candidate
    if best is None:
        raise SolutionInvariantError("no feasible single-price candidate with positive capacity")

    price = best.price
    allocations = tuple(user_demand(theta, price) for theta in thetas)
    revenue = sum(g.count * price * s for g, s in zip(market.groups, allocations))

    value, users = _prefix_mass(market, best.top)
    binding = value / (market.capacity + users)
    if abs(price - binding) <= EPS_FEAS * max(1.0, price):
        shadow = value * users / (market.capacity + users) ** 2
    else:
        shadow = 0.0

    return SchemeSolution(
        scheme="single",
        prices=(price,) * n_groups,
        allocations=allocations,
        admitted=market.counts,
        shadow_price=shadow,
        effective_threshold=best.top,
        revenue=revenue,
    )
