from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import PROPERTY_SETTINGS, SIMPLE_PART_GAP
from exceptions import InstanceParseError, NotProperError, WeightTooLargeError
from lighttrail import (
    LINK_OVERLAP,
    MODES,
    SHUTTER,
    Trail,
    TransmissionRequest,
    congestion,
    parse_requests,
    plan_to_dict,
    render_plan,
    requests_to_intervals,
    schedule,
    validate_plan,
)
from pig_core import build_canonical
from utils.generators import random_requests
from verify_oracle import COVERAGE

R = TransmissionRequest


class TestParseRequests:
    def test_swaps_reversed_requests(self):
        reqs = parse_requests("r1 0 2\nr2 3 1 2  # обратный\n")
        assert reqs == [R("r1", 0, 2, 1), R("r2", 1, 3, 2)]

    @pytest.mark.parametrize("text", ["r1 2 2\n", "r1 0 2\nr1 1 3\n", "r1 -1 2\n", "r1 0 2 0\n", "r1 0\n", "", "r1 a 2\n"])
    def test_rejects_bad_requests(self, text):
        with pytest.raises(InstanceParseError):
            parse_requests(text)


class TestIntervals:
    def test_shared_link_means_overlap(self):
        g = build_canonical(requests_to_intervals([R("r1", 0, 2), R("r2", 1, 3)], 1))
        assert g.is_edge(1, 2)

    def test_shared_processor_is_not_overlap(self):
        g = build_canonical(requests_to_intervals([R("r1", 0, 1), R("r2", 1, 2)], 1))
        assert not g.is_edge(1, 2)
        assert len(g.components) == 2

    def test_nested_requests_are_not_proper(self):
        with pytest.raises(NotProperError):
            build_canonical(requests_to_intervals([R("r1", 0, 5), R("r2", 1, 2)], 1))

    def test_bandwidth_above_capacity(self):
        with pytest.raises(WeightTooLargeError):
            requests_to_intervals([R("r1", 0, 2, 3)], 2)

    def test_congestion(self):
        reqs = [R("r1", 0, 2, 2), R("r2", 1, 3, 2), R("r3", 1, 3, 1)]
        assert congestion(reqs) == 5
        assert congestion(reqs, unweighted=True) == 3


class TestSchedule:
    def test_two_cliques_need_two_wavelengths(self):
        reqs = [R(name, left, right) for name, left, right in SIMPLE_PART_GAP]
        plan = schedule(reqs, 3)
        assert plan.lam == 2
        ids = [[[rid for rid, _ in t.requests] for t in trails] for trails in plan.wavelengths]
        assert ids == [[["a", "b"], ["f", "g"]], [["c", "d", "e"]]]
        assert plan.wavelengths[0][0].span == (1, 7)
        assert plan.shutters[0] == [1, 7, 8, 14]
        assert validate_plan(plan, reqs, 3).ok

    def test_single_request(self):
        plan = schedule([R("only", 3, 5)], 1)
        assert plan.lam == 1
        assert plan.wavelengths == [[Trail((3, 5), [("only", 1)], 1)]]
        assert plan.shutters == [[3, 5]]

    def test_splittable_bandwidth(self):
        reqs = [R("r1", 0, 4, 2), R("r2", 1, 5, 2), R("r3", 2, 6, 2)]
        plan = schedule(reqs, 3, "splittable")
        assert plan.lam == 2
        served = {}
        for trails in plan.wavelengths:
            for trail in trails:
                for rid, amount in trail.requests:
                    served.setdefault(rid, []).append(amount)
        assert served["r2"] == [1, 1]
        assert validate_plan(plan, reqs, 3).ok

    def test_nonsplittable_bandwidth(self):
        reqs = [R("r1", 0, 4, 2), R("r2", 1, 5, 2), R("r3", 2, 6, 2)]
        plan = schedule(reqs, 3, "nonsplittable")
        assert plan.lam == 3
        assert validate_plan(plan, reqs, 3).ok

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            schedule([R("r1", 0, 1)], 1, "greedy")

    def test_render_and_dict(self):
        reqs = [R("r1", 0, 2), R("r2", 1, 3)]
        plan = schedule(reqs, 1)
        text = render_plan(plan)
        assert "λ1" in text and "λ2" in text
        assert "|" in text and "=" in text
        data = plan_to_dict(plan)
        assert data["lambda"] == 2
        assert data["wavelengths"][0]["shutters_off"] == [0, 2]


class TestValidatePlan:
    def _plan(self):
        reqs = [R("r1", 0, 2), R("r2", 1, 3), R("r3", 4, 6)]
        return reqs, schedule(reqs, 1)

    def test_overlapping_trails_on_one_wavelength(self):
        reqs, plan = self._plan()
        plan.wavelengths[0].append(Trail((1, 3), [("r2", 1)], 1))
        plan.wavelengths[1] = [t for t in plan.wavelengths[1] if t.requests[0][0] != "r2"]
        plan.shutters = [sorted({p for t in trails for p in t.span}) for trails in plan.wavelengths]
        assert LINK_OVERLAP in validate_plan(plan, reqs, 1).kinds()

    def test_missing_request(self):
        reqs, plan = self._plan()
        plan.wavelengths[0] = [t for t in plan.wavelengths[0] if t.requests[0][0] != "r3"]
        report = validate_plan(plan, reqs, 1)
        assert COVERAGE in report.kinds()
        assert SHUTTER in report.kinds()


class TestScheduleProperties:
    @PROPERTY_SETTINGS
    @given(
        st.integers(min_value=1, max_value=60),
        st.integers(min_value=1, max_value=4),
        st.sampled_from(MODES),
        st.integers(min_value=0, max_value=10**6),
    )
    def test_plans_are_valid(self, n, capacity, mode, seed):
        reqs = random_requests(n, seed, max_bandwidth=capacity)
        plan = schedule(reqs, capacity, mode)
        assert validate_plan(plan, reqs, capacity).ok
        assert plan.lam >= -(-plan.congestion // capacity)
