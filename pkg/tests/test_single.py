"""Single-price solver: candidate windows and the served-set scan."""

import random

import numpy as np
import pytest

from pricetiers import (
    EPS_FEAS,
    GridSpec,
    IndexOutOfRangeError,
    check_solution,
    random_market,
    single_candidate,
    single_price_search,
    solve_complete,
    solve_single,
    validate_market,
)


class TestSingleCandidate:
    def test_market_b_top1(self, market_b):
        cand = single_candidate(market_b, 1)
        assert cand.feasible
        assert cand.price == pytest.approx(10 / 3, rel=1e-12)
        assert cand.revenue == pytest.approx(20 / 3, rel=1e-12)
        assert cand.demand == pytest.approx(2.0, rel=1e-12)

    def test_market_b_top2_infeasible(self, market_b):
        cand = single_candidate(market_b, 2)
        assert not cand.feasible
        assert cand.price == pytest.approx(3.0, rel=1e-12)  # escapes below theta_2 = 2
        assert cand.revenue == float("-inf")

    def test_market_c_top1_floor_equals_binding(self, market_c):
        cand = single_candidate(market_c, 1)
        assert cand.feasible
        assert cand.price == pytest.approx(4.0, rel=1e-12)
        assert cand.revenue == pytest.approx(12.0, rel=1e-12)
        assert cand.demand == pytest.approx(3.0, rel=1e-12)

    def test_market_a_top2_infeasible(self, market_a):
        cand = single_candidate(market_a, 2)
        assert not cand.feasible

    def test_index_out_of_range(self, market_a):
        with pytest.raises(IndexOutOfRangeError):
            single_candidate(market_a, 0)
        with pytest.raises(IndexOutOfRangeError):
            single_candidate(market_a, 5)

    def test_price_is_binding_or_window_floor(self):
        # One of the two holds exactly at every feasible candidate.
        rng = random.Random(11)
        for _ in range(30):
            market = random_market(rng, 1, 6)
            thetas = market.thetas
            for top in range(1, market.group_count + 1):
                cand = single_candidate(market, top)
                if not cand.feasible:
                    continue
                value = sum(g.count * g.theta for g in market.groups[:top])
                users = sum(g.count for g in market.groups[:top])
                binding = value / (market.capacity + users)
                floor = thetas[top] if top < market.group_count else 0.0
                assert cand.price == binding or cand.price == floor


class TestSolveSingle:
    @pytest.mark.parametrize(
        "fixture, price, revenue, threshold",
        [
            ("market_a", 2.0, 2.0, 1),
            ("market_b", 10 / 3, 20 / 3, 1),
            ("market_c", 4.0, 12.0, 1),
        ],
    )
    def test_known_markets(self, request, fixture, price, revenue, threshold):
        market = request.getfixturevalue(fixture)
        sol = solve_single(market)
        assert sol.prices == pytest.approx((price,) * market.group_count, rel=1e-9)
        assert sol.revenue == pytest.approx(revenue, rel=1e-9)
        assert sol.effective_threshold == threshold
        check_solution(market, sol)

    def test_uniform_price_vector(self, market_c):
        sol = solve_single(market_c)
        assert len(set(sol.prices)) == 1

    def test_zero_capacity(self):
        market = validate_market([(4, 1), (1, 1)], 0)
        sol = solve_single(market)
        assert sol.revenue == 0.0
        assert sol.prices == (4.0, 4.0)
        assert sol.effective_threshold == 0
        check_solution(market, sol)

    def test_never_beats_per_group_pricing(self):
        rng = random.Random(13)
        for _ in range(40):
            market = random_market(rng, 1, 6)
            single = solve_single(market).revenue
            complete = solve_complete(market).revenue
            assert single <= complete + 1e-9 * max(1.0, complete)

    def test_no_window_grid_point_beats_winner(self):
        # Within the winner's window the returned price must dominate a fine
        # sweep of feasible alternatives.
        rng = random.Random(17)
        for _ in range(15):
            market = random_market(rng, 1, 5)
            sol = solve_single(market)
            top = sol.effective_threshold
            thetas = market.thetas
            low = thetas[top] if top < market.group_count else thetas[-1] * 1e-3
            high = thetas[top - 1] * (1 - 1e-9)
            value = sum(g.count * g.theta for g in market.groups[:top])
            users = sum(g.count for g in market.groups[:top])
            for price in np.linspace(max(low, 1e-9), high, 400):
                demand = value / price - users
                if demand > market.capacity * (1 + EPS_FEAS):
                    continue
                assert value - price * users <= sol.revenue + 1e-9 * max(1.0, sol.revenue)

    def test_winner_binds_capacity(self):
        rng = random.Random(19)
        for _ in range(30):
            market = random_market(rng, 1, 6)
            sol = solve_single(market)
            used = sum(n * s for n, s in zip(sol.admitted, sol.allocations))
            assert used == pytest.approx(market.capacity, rel=1e-9)
            assert sol.shadow_price > 0

    def test_shadow_price_is_marginal_revenue(self, market_b):
        # Finite-difference check of d(revenue)/d(capacity).
        sol = solve_single(market_b)
        eps = 1e-6
        bumped = validate_market(market_b.as_pairs(), market_b.capacity + eps)
        numeric = (solve_single(bumped).revenue - sol.revenue) / eps
        assert sol.shadow_price == pytest.approx(numeric, rel=1e-4)

    def test_theta_scaling_and_replication(self, market_c):
        for c in (0.5, 3.0):
            scaled = validate_market(
                [(t * c, n) for t, n in market_c.as_pairs()], market_c.capacity
            )
            assert solve_single(scaled).revenue == pytest.approx(
                c * solve_single(market_c).revenue, rel=1e-12
            )
        for m in (2, 5):
            rep = validate_market(
                [(t, n * m) for t, n in market_c.as_pairs()], market_c.capacity * m
            )
            assert solve_single(rep).revenue == pytest.approx(
                m * solve_single(market_c).revenue, rel=1e-12
            )
            assert solve_single(rep).prices == pytest.approx(
                solve_single(market_c).prices, rel=1e-12
            )


def test_grid_search_confirms_solver(market_b, market_c):
    grid = GridSpec(5000)
    for market in (market_b, market_c):
        sol = solve_single(market)
        search = single_price_search(market, grid, solver_price=sol.prices[0])
        slack = 5.0 / grid.points
        assert sol.revenue >= search.revenue - slack * abs(search.revenue) - 1e-12
        assert search.check.feasible
        assert search.check.revenue == pytest.approx(sol.revenue, rel=1e-9)
