"""Problem instances and the demand side of the pricing game.

Users in group i share the log utility theta_i * ln(1 + s) for s units of
resource. Facing a linear unit price they buy the unique surplus-maximizing
amount, so once a market (groups plus capacity) is validated, every solver
in this package reduces to choosing prices against that known response.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    EmptyMarketError,
    InvalidCapacityError,
    InvalidCountError,
    InvalidThetaError,
    LengthMismatchError,
    NonPositivePriceError,
)

# Relative gap below which two willingness-to-pay values are the same group.
EPS_TIE = 1e-12

# Tolerance for capacity and threshold comparisons throughout the package.
EPS_FEAS = 1e-9

# One positive price per group, in market order.
PriceSchedule = Sequence[float]


def undercuts(price: float, theta: float) -> bool:
    """True when the price is low enough that a theta-user buys a positive amount.

    The comparison is tolerance-relaxed: a price within EPS_FEAS (relative) of
    theta counts as priced out, which keeps threshold decisions deterministic
    under floating-point noise. At the boundary demand is zero either way, so
    no revenue rides on the call.
    """
    return price <= theta * (1.0 - EPS_FEAS)


@dataclass(frozen=True)
class UserGroup:
    """One homogeneous population: willingness to pay and head count."""

    theta: float
    count: int


@dataclass(frozen=True)
class Market:
    """Validated, immutable instance: theta-descending groups plus capacity.

    Build instances through :func:`validate_market`; the solvers assume the
    ordering and positivity invariants it enforces.
    """

    groups: tuple[UserGroup, ...]
    capacity: float

    @property
    def group_count(self) -> int:
        return len(self.groups)

    @property
    def thetas(self) -> tuple[float, ...]:
        return tuple(g.theta for g in self.groups)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(g.count for g in self.groups)

    @property
    def total_users(self) -> int:
        return sum(g.count for g in self.groups)

    def as_pairs(self) -> list[tuple[float, int]]:
        """Raw (theta, count) pairs, e.g. for re-validation round trips."""
        return [(g.theta, g.count) for g in self.groups]


def validate_market(raw_groups: Iterable[tuple[float, int]], capacity: float) -> Market:
    """Normalize raw (theta, count) pairs into a :class:`Market`.

    Zero-count groups are dropped, the rest are sorted by decreasing theta,
    and groups whose thetas differ by a relative gap of at most EPS_TIE are
    merged (their users are interchangeable, so no solution is lost).

    Raises:
        InvalidCapacityError: capacity is negative or not finite.
        InvalidThetaError: any theta is non-positive or not finite.
        InvalidCountError: any count is negative or fractional.
        EmptyMarketError: no group with a positive count remains.
    """
    try:
        cap = float(capacity)
    except (TypeError, ValueError):
        raise InvalidCapacityError(f"capacity must be a number, got {capacity!r}") from None
    if not math.isfinite(cap) or cap < 0:
        raise InvalidCapacityError(f"capacity must be finite and non-negative, got {capacity!r}")

    cleaned: list[tuple[float, int]] = []
    for pos, (theta, count) in enumerate(raw_groups):
        try:
            th = float(theta)
        except (TypeError, ValueError):
            raise InvalidThetaError(f"group {pos}: theta must be a number, got {theta!r}") from None
        if not math.isfinite(th) or th <= 0:
            raise InvalidThetaError(f"group {pos}: theta must be finite and positive, got {theta!r}")
        n = count
        if isinstance(n, float):
            if not n.is_integer():
                raise InvalidCountError(f"group {pos}: count must be an integer, got {count!r}")
            n = int(n)
        if not isinstance(n, int):
            raise InvalidCountError(f"group {pos}: count must be an integer, got {count!r}")
        if n < 0:
            raise InvalidCountError(f"group {pos}: count must be non-negative, got {count!r}")
        if n > 0:
            cleaned.append((th, n))

    if not cleaned:
        raise EmptyMarketError("no group with a positive user count")

    cleaned.sort(key=lambda tc: -tc[0])
    merged: list[list] = []
    for th, n in cleaned:
        if merged and abs(merged[-1][0] - th) <= EPS_TIE * max(merged[-1][0], th):
            merged[-1][1] += n
        else:
            merged.append([th, n])

    return Market(tuple(UserGroup(th, n) for th, n in merged), cap)


def user_demand(theta: float, price: float) -> float:
    """Surplus-maximizing purchase of a theta-user at a linear unit price.

    The unique maximizer of theta*ln(1+s) - price*s over s >= 0 is
    theta/price - 1, clamped at zero once the price reaches theta.

    Raises:
        NonPositivePriceError: price is zero, negative, or not finite.
    """
    if not math.isfinite(price) or price <= 0:
        raise NonPositivePriceError(f"price must be finite and positive, got {price!r}")
    return max(theta / price - 1.0, 0.0)


def user_surplus(theta: float, price: float, allocation: float) -> float:
    """Utility minus payment at a given allocation (not necessarily optimal)."""
    return theta * math.log1p(allocation) - price * allocation


def total_demand(market: Market, schedule: PriceSchedule) -> float:
    """Aggregate demand when each group faces its scheduled price."""
    if len(schedule) != market.group_count:
        raise LengthMismatchError(
            f"schedule has {len(schedule)} prices for {market.group_count} groups"
        )
    return sum(g.count * user_demand(g.theta, p) for g, p in zip(market.groups, schedule))
