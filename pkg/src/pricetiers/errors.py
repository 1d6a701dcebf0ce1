"""Exception types shared across the package."""


class PricingError(Exception):
    """Base class for every error this package raises on purpose."""


class MarketValidationError(PricingError, ValueError):
    """Invalid problem inputs: bad theta, count, capacity, or level count."""


class EmptyMarketError(MarketValidationError):
    """No group with a positive user count remains after cleanup."""


class InvalidThetaError(MarketValidationError):
    """Willingness to pay must be finite and strictly positive."""


class InvalidCapacityError(MarketValidationError):
    """Capacity must be finite and non-negative."""


class InvalidCountError(MarketValidationError):
    """Group head counts must be non-negative integers."""


class InvalidLevelsError(MarketValidationError):
    """Requested price-level count is outside 1..group_count."""


class NonPositivePriceError(PricingError, ValueError):
    """Prices must be finite and strictly positive."""


class LengthMismatchError(PricingError, ValueError):
    """A per-group sequence does not match the market's group count."""


class IndexOutOfRangeError(PricingError, IndexError):
    """A group/threshold index fell outside 1..group_count."""


class ZeroCapacityError(PricingError):
    """Operation undefined at zero capacity (degenerate path handled upstream)."""


class TooManyGroupsError(PricingError):
    """Brute-force search refuses markets beyond its combinatorial cap."""


class NoActiveClusterError(PricingError):
    """Cross-cluster allocation needs at least one active cluster."""


class InvalidGridError(PricingError, ValueError):
    """A search grid needs at least two points."""


class ScenarioParseError(PricingError, ValueError):
    """Scenario file is malformed (bad JSON or schema)."""


class SolutionInvariantError(PricingError):
    """A produced solution violates its own structural guarantees."""
