"""Grid searches: exactness of the engine, known values, solver injection."""

import itertools
import random

import numpy as np
import pytest

from pricetiers import (
    GridSpec,
    InvalidGridError,
    TooManyGroupsError,
    ZeroCapacityError,
    cluster_price_search,
    group_price_search,
    price_grid,
    set_partitions,
    single_price_search,
    solve_complete,
    solve_partial,
    solve_single,
    validate_market,
)
from pricetiers.bruteforce import _best_on_grid, admission_levels


def test_grid_spec_needs_two_points():
    with pytest.raises(InvalidGridError):
        GridSpec(points=1)
    GridSpec(points=2)  # fine


def test_price_grid_span_and_spacing(market_c):
    grid = price_grid(market_c, GridSpec(100))
    assert grid[0] == pytest.approx(1e-3, rel=1e-12)  # theta_min / 1000
    assert grid[-1] == pytest.approx(16.0, rel=1e-12)
    ratios = grid[1:] / grid[:-1]
    assert np.allclose(ratios, ratios[0])  # geometric spacing


class TestBestOnGrid:
    def test_matches_naive_product_search(self):
        rng = random.Random(7)
        for _ in range(80):
            k = rng.randint(1, 4)
            size = rng.randint(3, 12)
            demands = [
                np.array([rng.uniform(0, 5) for _ in range(size)]) for _ in range(k)
            ]
            revenues = [
                np.array([rng.uniform(0, 9) for _ in range(size)]) for _ in range(k)
            ]
            budget = rng.uniform(0.5, 12.0)

            naive = float("-inf")
            for combo in itertools.product(range(size), repeat=k):
                used = sum(demands[i][c] for i, c in enumerate(combo))
                if used <= budget:
                    naive = max(
                        naive, sum(revenues[i][c] for i, c in enumerate(combo))
                    )

            got, idx = _best_on_grid(demands, revenues, budget)
            if naive == float("-inf"):
                assert idx is None
                continue
            assert got == pytest.approx(naive, rel=1e-12)
            # The returned combination must actually attain the value.
            used = sum(demands[i][c] for i, c in enumerate(idx))
            value = sum(revenues[i][c] for i, c in enumerate(idx))
            assert used <= budget
            assert value == pytest.approx(got, rel=1e-12)

    def test_nothing_fits(self):
        got, idx = _best_on_grid([np.array([2.0, 3.0])], [np.array([1.0, 1.0])], 1.0)
        assert got == float("-inf") and idx is None


class TestSinglePriceSearch:
    def test_one_group_hand_value(self):
        market = validate_market([(2, 10)], 10)
        result = single_price_search(market, GridSpec(10_000))
        assert result.revenue == pytest.approx(10.0, rel=1e-3)

    def test_market_b(self, market_b):
        result = single_price_search(market_b, GridSpec(10_000))
        assert result.revenue <= 20 / 3 + 1e-9
        assert result.revenue == pytest.approx(20 / 3, rel=1e-3)

    def test_market_c(self, market_c):
        result = single_price_search(market_c, GridSpec(10_000))
        assert result.revenue == pytest.approx(12.0, rel=1e-3)

    def test_injected_solver_point_wins_on_coarse_grid(self, market_b):
        exact = solve_single(market_b)
        result = single_price_search(market_b, GridSpec(25), solver_price=exact.prices[0])
        assert result.revenue == pytest.approx(exact.revenue, rel=1e-12)
        assert result.price == pytest.approx(exact.prices[0], rel=1e-12)
        assert result.check.feasible

    def test_infeasible_candidate_is_flagged_not_used(self, market_b):
        greedy_price = 0.5  # demand 22 >> capacity 2
        result = single_price_search(market_b, GridSpec(200), solver_price=greedy_price)
        assert not result.check.feasible
        assert result.price != greedy_price

    def test_deterministic(self, market_c):
        assert single_price_search(market_c, GridSpec(500)) == single_price_search(
            market_c, GridSpec(500)
        )

    def test_zero_capacity(self):
        market = validate_market([(2, 1)], 0)
        with pytest.raises(ZeroCapacityError):
            single_price_search(market, GridSpec(10))


class TestAdmissionLevels:
    def test_small_groups_enumerate_fully(self):
        assert admission_levels(1) == (0, 1)
        assert admission_levels(3) == (0, 1, 2, 3)
        assert admission_levels(5) == (0, 1, 2, 3, 4, 5)

    def test_large_groups_scale_six_values(self):
        levels = admission_levels(100)
        assert levels == (0, 20, 40, 60, 80, 100)
        assert levels[0] == 0 and levels[-1] == 100
        assert len(admission_levels(97)) <= 6


class TestGroupPriceSearch:
    def test_market_a(self, market_a):
        result = group_price_search(market_a, GridSpec(400))
        assert result.revenue == pytest.approx(2.0, rel=1e-2)

    def test_market_b(self, market_b):
        result = group_price_search(market_b, GridSpec(400))
        assert result.revenue == pytest.approx(6.763932, rel=1e-2)

    def test_admission_control_is_redundant_on_market_a(self, market_a):
        # Keeping only the top group reachable gives the same revenue as the
        # full market: the low group contributes nothing at the optimum. The
        # two searches use different grid spans, so agreement is up to the
        # combined grid slack around the true optimum of 2.
        trimmed = validate_market([(4, 1)], 1.0)
        full = group_price_search(market_a, GridSpec(400))
        solo = group_price_search(trimmed, GridSpec(400))
        assert full.revenue == pytest.approx(2.0, rel=1e-2)
        assert solo.revenue == pytest.approx(2.0, rel=1e-2)
        assert full.revenue == pytest.approx(solo.revenue, rel=2 * 5 / 400)
        assert full.admitted == (1, 1)

    def test_too_many_groups(self):
        market = validate_market([(8, 1), (4, 1), (2, 1), (1, 1)], 1.0)
        with pytest.raises(TooManyGroupsError):
            group_price_search(market, GridSpec(10))

    def test_injection_and_recheck(self, market_b):
        sol = solve_complete(market_b)
        result = group_price_search(market_b, GridSpec(50), solver_prices=sol.prices)
        assert result.check.feasible
        assert result.check.revenue == pytest.approx(sol.revenue, rel=1e-9)
        assert result.revenue == pytest.approx(sol.revenue, rel=1e-12)

    def test_deterministic(self, market_b):
        assert group_price_search(market_b, GridSpec(300)) == group_price_search(
            market_b, GridSpec(300)
        )


class TestSetPartitions:
    def test_three_items_two_blocks(self):
        got = list(set_partitions(3, 2))
        assert got == [
            ((0, 1, 2),),
            ((0, 1), (2,)),
            ((0, 2), (1,)),
            ((0,), (1, 2)),
        ]

    @pytest.mark.parametrize(
        "count, max_parts, expected",
        [(3, 3, 5), (4, 3, 14), (4, 4, 15), (4, 1, 1), (4, 2, 8)],
    )
    def test_counts_match_stirling_sums(self, count, max_parts, expected):
        assert len(list(set_partitions(count, max_parts))) == expected


class TestClusterPriceSearch:
    def test_market_c_two_levels(self, market_c):
        result = cluster_price_search(market_c, 2, GridSpec(400))
        assert result.revenue == pytest.approx(12.8, rel=1e-2)
        # No partition, consecutive or not, beats the consecutive solver.
        assert result.revenue <= solve_partial(market_c, 2).revenue + 1e-12

    def test_market_c_three_levels(self, market_c):
        result = cluster_price_search(market_c, 3, GridSpec(400))
        assert result.revenue == pytest.approx(12.8, rel=1e-2)

    def test_market_a_two_levels(self, market_a):
        result = cluster_price_search(market_a, 2, GridSpec(400))
        assert result.revenue == pytest.approx(2.0, rel=1e-2)

    def test_too_many_groups(self):
        market = validate_market([(16, 1), (8, 1), (4, 1), (2, 1), (1, 1)], 1.0)
        with pytest.raises(TooManyGroupsError):
            cluster_price_search(market, 2, GridSpec(10))

    def test_injection_and_recheck(self, market_c):
        sol = solve_partial(market_c, 2)
        result = cluster_price_search(market_c, 2, GridSpec(60), solver_prices=sol.prices)
        assert result.check.feasible
        assert result.check.revenue == pytest.approx(sol.revenue, rel=1e-9)
        assert result.revenue == pytest.approx(sol.revenue, rel=1e-12)
