from __future__ import annotations

from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

import weighted_split
from conftest import PROPERTY_SETTINGS, pigs
from exceptions import PostconditionError, WeightTooLargeError
from partition_unweighted import comb_part, mark_forbidden, solve_unweighted
from pig_core import build_canonical, build_from_rmn
from utils.generators import adversarial_instance, enumerate_rmn_profiles, random_weighted_instance
from verify_oracle import WEIGHT, check_weighted_profile, definition_forbidden, validate, validate_split_coloring
from weighted_split import (
    FBList,
    expand_weights,
    omega_expanded,
    solve_split,
    split_mark,
    split_part,
    two_approx_nonsplit,
    z_of,
)


class TestZArray:
    def test_prefix_sums_and_owner(self, weighted_overlap):
        z = z_of(weighted_overlap)
        assert z.z == (0, 2, 4, 6)
        assert z.n_expanded == 6
        assert z.copies(2) == (3, 4)
        assert [z.owner(x) for x in range(1, 7)] == [1, 1, 2, 2, 3, 3]
        assert omega_expanded(weighted_overlap) == 6

    def test_expansion_is_unit_weight_pig(self, weighted_overlap):
        gx = expand_weights(weighted_overlap)
        assert gx.n == 6
        assert gx.is_unit_weight
        assert gx.omega == 6
        assert gx.ids[:2] == ("v1#1", "v1#2")


class TestInlay:
    def test_into_empty_list(self):
        fb = FBList(12)
        fb.inlay(10, 3, 0)
        assert fb.blocks() == [(8, 10, 0)]

    def test_trims_overlapped_block(self):
        fb = FBList(12)
        fb.inlay(10, 3, 0)
        fb.inlay(9, 4, 3)
        assert fb.blocks() == [(6, 9, 3), (10, 10, 0)]

    def test_absorbs_covered_block(self):
        fb = FBList(12)
        fb.inlay(10, 3, 0)
        fb.inlay(6, 2, 0)
        fb.inlay(9, 5, 0)
        assert fb.blocks() == [(5, 9, 0), (10, 10, 0)]

    def test_splits_containing_block(self):
        fb = FBList(12)
        fb.inlay(10, 8, 1)
        fb.inlay(6, 2, 7)
        assert fb.blocks() == [(3, 4, 1), (5, 6, 7), (7, 10, 1)]
        assert fb.marked() == list(range(3, 11))
        assert fb.runs() == [(3, 10)]
        assert len(fb) == 3

    def test_clips_at_first_position(self):
        fb = FBList(12)
        fb.inlay(2, 5, 0)
        assert fb.blocks() == [(1, 2, 0)]


class TestSplitSolver:
    def test_weighted_overlap_split(self, weighted_overlap):
        sc = solve_split(weighted_overlap, 3)
        assert sc.lam == 2
        assert sc.partition.blocks == ((1, 3), (4, 6))
        assert sc.assignment[1] == ((1, 2),)
        assert sc.assignment[2] == ((1, 1), (2, 1))
        assert sc.assignment[3] == ((2, 2),)
        assert validate_split_coloring(weighted_overlap, sc, 3).ok
        assert sc.to_dict(weighted_overlap)["assignment"]["v2"] == [[1, 1], [2, 1]]

    def test_weight_above_capacity(self, weighted_overlap):
        with pytest.raises(WeightTooLargeError) as err:
            solve_split(weighted_overlap, 1)
        assert err.value.item_id == "v1"

    def test_unit_weights_match_unweighted_marks(self, simple_part_gap):
        assert split_mark(simple_part_gap, 3).marked() == mark_forbidden(simple_part_gap, 3).forbidden()
        assert split_part(simple_part_gap, 3).blocks == ((1, 2), (3, 5), (6, 7))

    @pytest.mark.parametrize("t", range(2, 9))
    def test_adversarial_block_count(self, t):
        inst, capacity = adversarial_instance(t)
        fb = split_mark(build_canonical(inst), capacity)
        assert len(fb) == t * t + t + 1

    def test_adversarial_family_is_proper(self):
        inst, capacity = adversarial_instance(4)
        g = build_canonical(inst)
        assert capacity == 8
        assert g.n == 12
        assert max(g.weights) == capacity


class TestNonSplit:
    def test_weighted_overlap_tight_capacity(self, weighted_overlap):
        result = two_approx_nonsplit(weighted_overlap, 3)
        assert result.partition.blocks == ((1, 1), (2, 2), (3, 3))
        assert result.partition.lam == 3
        assert result.split_lambda == 2
        assert result.ratio == pytest.approx(1.5)

    def test_weighted_overlap_room_for_two(self, weighted_overlap):
        result = two_approx_nonsplit(weighted_overlap, 4)
        assert result.partition.blocks == ((1, 2), (3, 3))
        assert result.partition.lam == 2
        assert validate(weighted_overlap, result.partition, 4, measure=WEIGHT).ok

    def test_bound_violation_raises(self, weighted_overlap, monkeypatch):
        solve = weighted_split.solve_split
        monkeypatch.setattr(weighted_split, "solve_split", lambda g, capacity: replace(solve(g, capacity), lam=1))
        with pytest.raises(PostconditionError):
            two_approx_nonsplit(weighted_overlap, 3)
        mismatches = check_weighted_profile((3, 3, 3), [2, 2, 2], (3,))
        assert [m["split"] for m in mismatches if "nonsplit" in m] == [2]


class TestAgainstExpansion:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_exhaustive_weighted_profiles(self, n):
        for profile in enumerate_rmn_profiles(n):
            for weights in _weight_vectors(n, 3):
                assert check_weighted_profile(profile, weights, (1, 2, 3, 4), nonsplit_limit=5) == []

    def test_long_forbidden_run_in_expansion(self):
        g = build_from_rmn((2, 3, 5, 6, 6, 6), weights=[1, 1, 1, 1, 4, 3])
        gx = expand_weights(g)
        marked = split_mark(g, 4).marked()
        assert marked == list(range(3, 11))
        assert marked == mark_forbidden(gx, 4).forbidden() == definition_forbidden(gx, 4)
        assert split_part(g, 4) is None
        assert comb_part(gx, 4) is None
        assert solve_split(g, 4).lam == solve_unweighted(gx, 4).lam
        assert check_weighted_profile((2, 3, 5, 6, 6, 6), [1, 1, 1, 1, 4, 3], (4,)) == []

    @PROPERTY_SETTINGS
    @given(pigs(max_n=12))
    def test_unit_weights_agree_with_unweighted(self, g):
        for capacity in (1, 2, 3, 5):
            assert solve_split(g, capacity).lam == solve_unweighted(g, capacity).lam
            assert split_mark(g, capacity).marked() == mark_forbidden(g, capacity).forbidden()

    @PROPERTY_SETTINGS
    @given(
        st.integers(min_value=1, max_value=80),
        st.integers(min_value=1, max_value=5),
        st.integers(min_value=0, max_value=10**6),
    )
    def test_random_weighted_instances(self, n, max_weight, seed):
        g = build_canonical(random_weighted_instance(n, max_weight, seed))
        capacity = max_weight + seed % 3
        sc = solve_split(g, capacity)
        assert validate_split_coloring(g, sc, capacity).ok
        assert sc.lam == solve_unweighted(expand_weights(g), capacity).lam
        approx = two_approx_nonsplit(g, capacity)
        assert approx.partition.lam <= 2 * sc.lam
        assert validate(g, approx.partition, capacity, measure=WEIGHT).ok


def _weight_vectors(n, max_weight):
    if n == 0:
        yield []
        return
    for tail in _weight_vectors(n - 1, max_weight):
        for w in range(1, max_weight + 1):
            yield tail + [w]


def test_expansion_of_profile_keeps_structure():
    g = build_from_rmn((2, 3, 3), weights=[2, 1, 2])
    gx = expand_weights(g)
    assert gx.n == 5
    assert gx.cliques == ((1, 3), (3, 5))
