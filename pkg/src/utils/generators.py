# src/utils/generators.py
"""
Воспроизводимые генераторы экземпляров: случайные PIG, веса, семейство
с Θ(n²) запрещёнными блоками, расщепляемые графы, CNF, запросы и полный
перебор профилей rmn. Все случайные функции принимают seed или
numpy.random.Generator.
"""
import itertools

import numpy as np

from pig_core import IntervalInstance, IntervalItem
from splitgraph_npc import CNF, SplitGraph
from lighttrail import TransmissionRequest


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _strictly_increasing_rights(lefts, lengths):
    """Правые концы ≥ left + length и строго возрастающие: это и делает граф собственным."""
    idx = np.arange(len(lefts))
    return np.maximum.accumulate(lefts + lengths - idx) + idx


def random_pig_instance(n, seed=None, max_gap=3, max_length=None, weights=None, shuffle=True):
    """Случайный PIG: левые и правые концы строго возрастают."""
    rng = _rng(seed)
    if max_length is None:
        max_length = int(rng.integers(1, 4 * max_gap + 2))
    lefts = np.cumsum(rng.integers(1, max_gap + 1, size=n))
    rights = _strictly_increasing_rights(lefts, rng.integers(1, max_length + 1, size=n))
    order = rng.permutation(n) if shuffle else np.arange(n)
    items = tuple(
        IntervalItem(f"v{j + 1}", int(lefts[j]), int(rights[j]), int(weights[j]) if weights is not None else 1)
        for j in order
    )
    return IntervalInstance(items)


def random_weights(n, max_weight, seed=None):
    return [int(w) for w in _rng(seed).integers(1, max_weight + 1, size=n)]


def random_weighted_instance(n, max_weight, seed=None, **kwargs):
    rng = _rng(seed)
    return random_pig_instance(n, rng, weights=random_weights(n, max_weight, rng), **kwargs)


def adversarial_instance(t):
    """
    Семейство с t² + t + 1 запрещёнными блоками при C = 2t.

    Три группы: t + 1 интервалов веса 2, t − 1 интервалов веса 2t, у которых
    общий левый конец разведён на единицу, и ещё t интервалов веса 2.
    Возвращает (экземпляр, C).
    """
    if t < 2:
        raise ValueError("семейство определено при t ≥ 2")
    m = t + 1
    items = []
    for j in range(1, t + 2):
        items.append(IntervalItem(f"a{j}", m * j, m * (2 * t + 2 * j - 1), 2))
    for j in range(2, t + 1):
        items.append(IntervalItem(f"b{j}", m * (t + 1) + (j - 1), m * (4 * t + j), 2 * t))
    for j in range(1, t + 1):
        items.append(IntervalItem(f"c{j}", m * (2 * t + 2 * j), m * (5 * t + j), 2))
    return IntervalInstance(tuple(items)), 2 * t


def random_rmn_profile(n, seed=None, connected=True):
    """Случайный монотонный профиль rmn длины n."""
    rng = _rng(seed)
    profile = []
    prev = 0
    for i in range(1, n + 1):
        lo = max(i + 1 if connected and i < n else i, prev)
        r = int(rng.integers(lo, n + 1))
        profile.append(r)
        prev = r
    return tuple(profile)


def enumerate_rmn_profiles(n, connected=True):
    """
    Все монотонные профили rmn длины n: rmn(i) ≥ max(i, rmn(i − 1)), rmn(n) = n.

    При connected=True дополнительно rmn(i) ≥ i + 1 для i < n.
    """
    profile = [0] * (n + 1)

    def rec(i):
        if i > n:
            yield tuple(profile[1:])
            return
        lo = max(i + 1 if connected and i < n else i, profile[i - 1])
        for r in range(lo, n + 1):
            profile[i] = r
            yield from rec(i + 1)

    yield from rec(1)


def random_split_graph(q_size, s_size, seed=None, density=0.5):
    rng = _rng(seed)
    q = tuple(f"q{i}" for i in range(1, q_size + 1))
    s = tuple(f"s{j}" for j in range(1, s_size + 1))
    adj = {w: {x for x in q if rng.random() < density} for w in s}
    return SplitGraph(q, s, adj)


def _all_clauses(p):
    # Не более одного литерала на переменную
    for signs in itertools.product((0, 1, -1), repeat=p):
        clause = tuple(sign * (i + 1) for i, sign in enumerate(signs) if sign)
        if clause:
            yield clause


def all_cnfs(p_max, q_max):
    """Все формулы с p ≤ p_max переменными и q ≤ q_max различными дизъюнкциями."""
    for p in range(1, p_max + 1):
        clauses = list(_all_clauses(p))
        for q in range(q_max + 1):
            for chosen in itertools.combinations(clauses, q):
                yield CNF(p, chosen)


def random_cnf(p, q, seed=None, max_len=3):
    rng = _rng(seed)
    clauses = []
    for _ in range(q):
        size = int(rng.integers(1, min(max_len, p) + 1))
        variables = rng.choice(np.arange(1, p + 1), size=size, replace=False)
        clauses.append(tuple(int(v) if rng.random() < 0.5 else -int(v) for v in variables))
    return CNF(p, tuple(clauses))


def random_requests(n, seed=None, max_gap=2, max_hops=6, max_bandwidth=1):
    """Набор запросов с собственным интервальным графом пересечений по каналам."""
    rng = _rng(seed)
    srcs = np.cumsum(rng.integers(1, max_gap + 1, size=n)) - 1
    dsts = _strictly_increasing_rights(srcs, rng.integers(1, max_hops + 1, size=n))
    bandwidths = rng.integers(1, max_bandwidth + 1, size=n)
    return [
        TransmissionRequest(f"r{j + 1}", int(srcs[j]), int(dsts[j]), int(bandwidths[j]))
        for j in rng.permutation(n)
    ]
