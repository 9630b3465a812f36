from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import PROPERTY_SETTINGS
from partition_unweighted import (
    BlockPartition,
    clique_intersection,
    comb_part,
    lower_bound,
    mark_forbidden,
    partition_report,
    partition_to_coloring,
    simple_part,
    solve_unweighted,
    upper_bound,
)
from pig_core import build_canonical, build_from_rmn
from utils.generators import enumerate_rmn_profiles, random_pig_instance
from verify_oracle import brute_min_lambda_block, chromons_of, definition_forbidden, validate


class TestBounds:
    @pytest.mark.parametrize(
        "omega, capacity, lower, upper",
        [(5, 3, 2, 3), (4, 3, 2, 2), (6, 3, 2, 3), (1, 1, 1, 1), (7, 1, 7, 7), (2, 2, 1, 2)],
    )
    def test_lower_and_upper(self, omega, capacity, lower, upper):
        assert lower_bound(omega, capacity) == lower
        assert upper_bound(omega, capacity) == upper


class TestWorkedExamples:
    def test_simple_part_is_not_optimal(self, simple_part_gap):
        simple = simple_part(simple_part_gap, 3)
        assert simple.blocks == ((1, 3), (4, 6), (7, 7))
        assert simple.lam == 3

        assert mark_forbidden(simple_part_gap, 3).forbidden() == [1, 3, 4, 6]
        comb = comb_part(simple_part_gap, 3)
        assert comb.blocks == ((1, 2), (3, 5), (6, 7))
        assert comb.lam == 2

        best = solve_unweighted(simple_part_gap, 3)
        assert best.blocks == comb.blocks
        assert best.lam == 2

    def test_lower_bound_is_not_attained(self, lower_bound_gap):
        assert lower_bound(lower_bound_gap.omega, 2) == 1
        assert mark_forbidden(lower_bound_gap, 2).forbidden() == [1, 2]
        assert comb_part(lower_bound_gap, 2) is None
        assert solve_unweighted(lower_bound_gap, 2).lam == 2

    def test_small_component_is_one_block(self):
        g = build_from_rmn((2, 2))
        p = solve_unweighted(g, 2)
        assert p.blocks == ((1, 2),)
        assert p.lam == 1

    def test_capacity_one_gives_omega(self, simple_part_gap):
        p = solve_unweighted(simple_part_gap, 1)
        assert p.lam == simple_part_gap.omega
        assert len(p) == simple_part_gap.n

    def test_components_solved_independently(self):
        g = build_from_rmn((2, 2, 5, 5, 5))
        p = solve_unweighted(g, 2)
        assert all(not (u <= 2 < v) for u, v in p.blocks)
        assert p.lam == 2

    def test_coloring_by_block_index(self, simple_part_gap):
        p = solve_unweighted(simple_part_gap, 3)
        coloring = partition_to_coloring(p, simple_part_gap)
        assert coloring.color == (0, 1, 1, 2, 2, 2, 1, 1)
        assert chromons_of(simple_part_gap, coloring) == [[1, 2], [3, 4, 5], [6, 7]]

    def test_report_uses_ids(self, simple_part_gap):
        report = partition_report(simple_part_gap, solve_unweighted(simple_part_gap, 3))
        assert report["lambda"] == 2
        assert report["block_ids"] == [["a", "b"], ["c", "d", "e"], ["f", "g"]]
        assert report["assignment"]["f"] == 1

    def test_clique_intersection_counts_blocks(self, simple_part_gap):
        assert clique_intersection(simple_part_gap, [(1, 1), (2, 2), (3, 7)]) == 3
        assert BlockPartition(((1, 7),), 7, 1).owner(7)[1:] == [1] * 7


class TestAgainstOracles:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_exhaustive_small_profiles(self, n):
        for profile in enumerate_rmn_profiles(n):
            g = build_from_rmn(profile)
            for capacity in range(1, 5):
                expected, _ = brute_min_lambda_block(g, capacity)
                got = solve_unweighted(g, capacity)
                assert got.lam == expected, (profile, capacity)
                assert validate(g, got, capacity).ok

    @pytest.mark.parametrize("n", range(2, 10))
    def test_marks_match_definition(self, n):
        for profile in enumerate_rmn_profiles(n):
            g = build_from_rmn(profile)
            for capacity in range(1, 5):
                assert mark_forbidden(g, capacity).forbidden() == definition_forbidden(g, capacity), (profile, capacity)

    def test_long_forbidden_run_does_not_lead(self):
        # [1, 3] - не клика, поэтому вершина 3 лидером не становится
        g = build_from_rmn((2, 5, 6, 6, 6, 6))
        assert mark_forbidden(g, 2).forbidden() == [2, 3, 4, 5]
        assert definition_forbidden(g, 2) == [2, 3, 4, 5]
        assert comb_part(g, 2) is None
        expected, _ = brute_min_lambda_block(g, 2)
        assert solve_unweighted(g, 2).lam == expected == 3


class TestSolverProperties:
    @PROPERTY_SETTINGS
    @given(
        st.integers(min_value=1, max_value=300),
        st.integers(min_value=1, max_value=6),
        st.integers(min_value=0, max_value=10**6),
    )
    def test_sandwich_and_validity(self, n, capacity, seed):
        g = build_canonical(random_pig_instance(n, seed))
        p = solve_unweighted(g, capacity)
        low, high = lower_bound(g.omega, capacity), upper_bound(g.omega, capacity)
        assert low <= p.lam <= high
        if g.omega % capacity == 1 % capacity:
            assert p.lam == low
        assert validate(g, p, capacity).ok
        assert validate(g, partition_to_coloring(p, g), capacity).ok
