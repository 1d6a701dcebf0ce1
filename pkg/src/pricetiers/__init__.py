"""Revenue-optimal usage-based pricing for a capacity-limited service.

A provider sells one divisible resource to groups of users with known
willingness to pay. The package solves three pricing schemes against the
users' surplus-maximizing demand — one price per group, one price for the
whole market, and a tiered scheme with a fixed number of price levels — and
ships brute-force grid searches that independently verify each solver.
"""

from .analysis import (
    ComparisonReport,
    WelfareResult,
    build_comparison,
    differentiation_gain,
    effective_market_size,
    revenue_curve,
    welfare_of,
    welfare_optimum,
)
from .bruteforce import (
    CandidateCheck,
    ClusterSearchResult,
    GridSpec,
    GroupSearchResult,
    SingleSearchResult,
    cluster_price_search,
    group_price_search,
    price_grid,
    set_partitions,
    single_price_search,
)
from .complete import capacity_multiplier, effective_group_count, solve_complete
from .errors import (
    EmptyMarketError,
    IndexOutOfRangeError,
    InvalidCapacityError,
    InvalidCountError,
    InvalidGridError,
    InvalidLevelsError,
    InvalidThetaError,
    LengthMismatchError,
    MarketValidationError,
    NoActiveClusterError,
    NonPositivePriceError,
    PricingError,
    ScenarioParseError,
    SolutionInvariantError,
    TooManyGroupsError,
    ZeroCapacityError,
)
from .market import (
    EPS_FEAS,
    EPS_TIE,
    Market,
    PriceSchedule,
    UserGroup,
    total_demand,
    undercuts,
    user_demand,
    user_surplus,
    validate_market,
)
from .partial import (
    ClusterAggregate,
    PartitionCandidate,
    allocate_clusters,
    consecutive_partitions,
    evaluate_partition,
    solve_partial,
)
from .scenario import Scenario, load_scenario, parse_scenario, random_market
from .single import SingleCandidate, single_candidate, solve_single
from .solution import Partition, SchemeSolution, check_solution, effective_threshold_of

__version__ = "0.1.0"

__all__ = [
    "CandidateCheck",
    "ClusterAggregate",
    "ClusterSearchResult",
    "ComparisonReport",
    "EPS_FEAS",
    "EPS_TIE",
    "EmptyMarketError",
    "GridSpec",
    "GroupSearchResult",
    "IndexOutOfRangeError",
    "InvalidCapacityError",
    "InvalidCountError",
    "InvalidGridError",
    "InvalidLevelsError",
    "InvalidThetaError",
    "LengthMismatchError",
    "Market",
    "MarketValidationError",
    "NoActiveClusterError",
    "NonPositivePriceError",
    "Partition",
    "PartitionCandidate",
    "PriceSchedule",
    "PricingError",
    "Scenario",
    "ScenarioParseError",
    "SchemeSolution",
    "SingleCandidate",
    "SingleSearchResult",
    "SolutionInvariantError",
    "TooManyGroupsError",
    "UserGroup",
    "WelfareResult",
    "ZeroCapacityError",
    "allocate_clusters",
    "build_comparison",
    "capacity_multiplier",
    "check_solution",
    "cluster_price_search",
    "consecutive_partitions",
    "differentiation_gain",
    "effective_group_count",
    "effective_market_size",
    "effective_threshold_of",
    "evaluate_partition",
    "group_price_search",
    "load_scenario",
    "parse_scenario",
    "price_grid",
    "random_market",
    "revenue_curve",
    "set_partitions",
    "single_candidate",
    "single_price_search",
    "solve_complete",
    "solve_partial",
    "solve_single",
    "total_demand",
    "undercuts",
    "user_demand",
    "user_surplus",
    "validate_market",
    "welfare_of",
    "welfare_optimum",
]
