"""Общие экземпляры и стратегии hypothesis для тестов."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pig_core import IntervalInstance, build_canonical, build_from_rmn
from verify_oracle import interval_graph

PROPERTY_SETTINGS = settings(
    max_examples=120,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)

LOWER_BOUND_GAP = [("a", 1, 3), ("b", 2, 5), ("c", 4, 6)]
SIMPLE_PART_GAP = [
    ("a", 1, 6), ("b", 2, 7), ("c", 3, 10), ("d", 4, 11), ("e", 5, 12), ("f", 8, 13), ("g", 9, 14),
]
WEIGHTED_OVERLAP = [("v1", 1, 10, 2), ("v2", 2, 11, 2), ("v3", 3, 12, 2)]
NON_PROPER = [("a", 1, 9), ("b", 2, 5), ("c", 3, 6), ("d", 4, 12), ("e", 7, 10), ("f", 8, 11)]


def instance_text(rows):
    return "".join(" ".join(str(x) for x in row) + "\n" for row in rows)


@pytest.fixture
def lower_bound_gap():
    """ω = 2, но при C = 2 одного цвета мало."""
    return build_canonical(IntervalInstance.from_rows(LOWER_BOUND_GAP))


@pytest.fixture
def simple_part_gap():
    """Две клики по 5 вершин; простые блоки дают 3, оптимум 2 при C = 3."""
    return build_canonical(IntervalInstance.from_rows(SIMPLE_PART_GAP))


@pytest.fixture
def weighted_overlap():
    return build_canonical(IntervalInstance.from_rows(WEIGHTED_OVERLAP))


@pytest.fixture
def non_proper_graph():
    return interval_graph(NON_PROPER)


@st.composite
def rmn_profiles(draw, min_n=1, max_n=8, connected=True):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    profile = []
    prev = 0
    for i in range(1, n + 1):
        lo = max(i + 1 if connected and i < n else i, prev)
        r = draw(st.integers(min_value=lo, max_value=n))
        profile.append(r)
        prev = r
    return tuple(profile)


@st.composite
def pigs(draw, min_n=1, max_n=8, connected=False, max_weight=1):
    profile = draw(rmn_profiles(min_n, max_n, connected))
    weights = None
    if max_weight > 1:
        weights = draw(st.lists(st.integers(1, max_weight), min_size=len(profile), max_size=len(profile)))
    return build_from_rmn(profile, weights=weights)
