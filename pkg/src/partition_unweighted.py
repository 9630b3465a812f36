# src/partition_unweighted.py
"""
Точный решатель невзвешенной задачи на PIG за O(n).

Нижняя и верхняя оценки, разметка запрещённых вершин (mark_forbidden),
жадное построение блоков (comb_part), выбор оптимального λ по компонентам
и перевод разбиения в раскраску по правилу (i − 1) mod λ + 1.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockPartition:
    """Блоки [u, v] подряд покрывают 1..n; lam - пересечение с кликами."""

    blocks: tuple[tuple[int, int], ...]
    capacity: int
    lam: int

    def __len__(self):
        return len(self.blocks)

    def owner(self, n):
        """owner[v] = номер блока (с 1), содержащего v."""
        owner = [0] * (n + 1)
        for idx, (u, v) in enumerate(self.blocks, start=1):
            for x in range(u, v + 1):
                owner[x] = idx
        return owner


@dataclass(frozen=True)
class Coloring:
    color: tuple[int, ...]  # color[0] фиктивный
    lam: int

    def __len__(self):
        return len(self.color) - 1


@dataclass
class ForbiddenMarks:
    f: list
    ldist: list
    rnf: list

    def forbidden(self):
        return [i for i in range(1, len(self.f)) if self.f[i]]


def lower_bound(omega, capacity):
    return (omega + capacity - 1) // capacity


def upper_bound(omega, capacity):
    return (omega + 2 * capacity - 2) // capacity


def clique_intersection(g, blocks):
    """Максимум по кликам числа пересекаемых блоков; блоки должны покрывать 1..n подряд."""
    owner = [0] * (g.n + 1)
    for idx, (u, v) in enumerate(blocks, start=1):
        for x in range(u, v + 1):
            owner[x] = idx
    return max(owner[b] - owner[a] + 1 for a, b in g.cliques)


def _simple_blocks(lo, hi, capacity):
    return [(u, min(u + capacity - 1, hi)) for u in range(lo, hi + 1, capacity)]


def simple_part(g, capacity):
    """Блоки по C вершин слева направо внутри каждой компоненты."""
    blocks = []
    for lo, hi in g.components:
        blocks.extend(_simple_blocks(lo, hi, capacity))
    return BlockPartition(tuple(blocks), capacity, clique_intersection(g, blocks))


def mark_forbidden(g, capacity):
    """
    Разметка запрещённых вершин для подзадачи λ = k + 1.

    Фаза 1 отмечает первично запрещённые вершины, фаза 2 идёт справа налево,
    поддерживая rnf и распространяя отметки от лидеров к последователям.
    Лидер i проверяется по запрещённому отрезку [j, i] длины не больше C − 1:
    j = max(rnf(i) + 1, i − C + 2), условие - клика [i − kC, j].
    При k = 0 множество последователей пусто и фаза 2 пропускается.
    """
    n = g.n
    C = capacity
    k = g.k(C)
    f = [False] * (n + 1)
    ldist = [0] * (n + 1)
    rnf = [0] * (n + 1)

    # --- Фаза 1: клика [i - kC - 1, i] размера kC + 2 ---
    for i in range(n, 1, -1):
        if g.lmn[i] <= i - k * C - 1:
            f[i - 1] = True

    rnf[n] = n
    if k >= 1:
        # --- Фаза 2: последователи и лидеры ---
        for i in range(n - 1, 0, -1):
            r = min(i, rnf[i + 1])
            while r > 0 and f[r]:
                r -= 1
            rnf[i] = r
            target = i - C
            if f[i] and ldist[i] <= (k - 1) * C and target >= 1:
                f[target] = True
                ldist[target] = ldist[i] + C
            j = max(r + 1, i - C + 2)
            if f[i] and j <= i and g.lmn[j] <= i - k * C and target >= 1:
                f[target] = True
                ldist[target] = C
    else:
        for i in range(n - 1, 0, -1):
            r = min(i, rnf[i + 1])
            while r > 0 and f[r]:
                r -= 1
            rnf[i] = r

    LOGGER.debug("mark_forbidden: n=%d, C=%d, k=%d, запрещено %d", n, C, k, sum(f))
    return ForbiddenMarks(f, ldist, rnf)


def comb_part(g, capacity, marks=None):
    """
    Жадные блоки, оканчивающиеся в самой правой незапрещённой вершине.

    Возвращает None, если блок не удаётся закрыть или клика пересекает
    больше k + 1 блоков: тогда [k + 1, C]-разбиения нет.
    """
    n = g.n
    f = (marks or mark_forbidden(g, capacity)).f
    blocks = []
    u = 1
    while u <= n:
        v = min(u + capacity - 1, n)
        while v >= u and f[v]:
            v -= 1
        if v < u:
            return None
        blocks.append((u, v))
        u = v + 1
    lam = clique_intersection(g, blocks)
    if lam > g.k(capacity) + 1:
        return None
    return BlockPartition(tuple(blocks), capacity, lam)


def _solve_component(sub, capacity):
    if sub.n <= capacity:
        return [(1, sub.n)]
    if sub.omega % capacity == 1 % capacity:
        return _simple_blocks(1, sub.n, capacity)
    comb = comb_part(sub, capacity)
    if comb is not None:
        return list(comb.blocks)
    LOGGER.debug("comb_part: нет [k+1, C]-разбиения, берём simple_part (n=%d, ω=%d)", sub.n, sub.omega)
    return _simple_blocks(1, sub.n, capacity)


def solve_unweighted(g, capacity):
    """Оптимальное блочное разбиение; компоненты решаются независимо, λ - максимум."""
    blocks = []
    for shift, sub in g.iter_components():
        blocks.extend((u + shift, v + shift) for u, v in _solve_component(sub, capacity))
    return BlockPartition(tuple(blocks), capacity, clique_intersection(g, blocks))


def partition_to_coloring(p, g):
    color = [0] * (g.n + 1)
    for idx, (u, v) in enumerate(p.blocks):
        c = idx % p.lam + 1
        for x in range(u, v + 1):
            color[x] = c
    return Coloring(tuple(color), p.lam)


def partition_report(g, p, coloring=None):
    """Словарь для JSON-вывода: блоки в канонических позициях и цвета по id."""
    coloring = coloring or partition_to_coloring(p, g)
    return {
        "lambda": p.lam,
        "capacity": p.capacity,
        "blocks": [[u, v] for u, v in p.blocks],
        "block_ids": [[g.vertex_id(x) for x in range(u, v + 1)] for u, v in p.blocks],
        "ids": list(g.ids),
        "colors": list(coloring.color[1:]),
        "assignment": {g.vertex_id(x): coloring.color[x] for x in range(1, g.n + 1)},
    }
