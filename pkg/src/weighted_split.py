# src/weighted_split.py
"""
Взвешенные задачи на PIG.

Делимый вариант решается на неявном графе WXP(G), где вершина v заменена
W(v) смежными копиями, занимающими позиции [Z(v−1)+1, Z(v)]. Запрещённые
вершины WXP(G) хранятся отрезками (FB) в двусвязном списке FBList, поэтому
время зависит от числа FB, а не от суммы весов. Неделимый вариант получается
из делимого копированием блоков и даёт не более 2·λ'.
"""
from __future__ import annotations

import logging
from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass

from exceptions import PostconditionError, WeightTooLargeError
from partition_unweighted import BlockPartition, Coloring, clique_intersection, partition_to_coloring
from pig_core import IntervalInstance, build_canonical, build_from_rmn

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZArray:
    z: tuple[int, ...]

    @property
    def n_expanded(self):
        return self.z[-1]

    def copies(self, v):
        return self.z[v - 1] + 1, self.z[v]

    def owner(self, x):
        """h̄(x): исходная вершина, копией которой является позиция x."""
        lo, hi = 1, len(self.z) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.z[mid] >= x:
                hi = mid
            else:
                lo = mid + 1
        return lo


def z_array(inst, order):
    """Префиксные суммы весов в каноническом порядке."""
    z = [0]
    for j in order:
        z.append(z[-1] + inst.items[j].weight)
    return ZArray(tuple(z))


def z_of(g):
    z = [0]
    for v in range(1, g.n + 1):
        z.append(z[-1] + g.weights[v])
    return ZArray(tuple(z))


def omega_expanded(g, z=None):
    zz = (z or z_of(g)).z
    return max(zz[b] - zz[a - 1] for a, b in g.cliques)


def expand_weights(g):
    """Явный WXP(G) как невзвешенный CanonicalPIG; копии v получают id 'v#q'."""
    zz = z_of(g).z
    profile = []
    ids = []
    for v in range(1, g.n + 1):
        for q in range(1, g.weights[v] + 1):
            profile.append(zz[g.rmn[v]])
            ids.append(f"{g.vertex_id(v)}#{q}")
    return build_from_rmn(profile, ids=ids)


def check_weights(g, capacity):
    for v in range(1, g.n + 1):
        if g.weights[v] > capacity:
            raise WeightTooLargeError(g.vertex_id(v), g.weights[v], capacity)


def _as_pig(g):
    return build_canonical(g) if isinstance(g, IntervalInstance) else g


class ForbiddenBlock:
    """Узел FBList: отрезок [right − size + 1, right] запрещённых позиций."""

    __slots__ = ("right", "size", "ldist", "rnf", "prev", "next", "alive")

    def __init__(self, right, size, ldist=0):
        self.right = right
        self.size = size
        self.ldist = ldist
        self.rnf = self
        self.prev = None
        self.next = None
        self.alive = True

    @property
    def left(self):
        return self.right - self.size + 1

    def __repr__(self):
        return f"FB[{self.left},{self.right}] ldist={self.ldist}"


class FBList:
    """
    Упорядоченный список непересекающихся FB с ограничителями [−2, −1]
    и [n'+2, n'+3]. Курсор запоминает место последней вставки.
    """

    def __init__(self, n_expanded):
        self.n_expanded = n_expanded
        self.begin = ForbiddenBlock(-1, 2)
        self.end = ForbiddenBlock(n_expanded + 3, 2)
        self.begin.next = self.end
        self.end.prev = self.begin
        self._cursor = self.end
        self._count = 0
        self.k = 0
        self.omega = 0

    def __len__(self):
        return self._count

    def __iter__(self):
        node = self.begin.next
        while node is not self.end:
            yield node
            node = node.next

    def blocks(self):
        return [(node.left, node.right, node.ldist) for node in self]

    def marked(self):
        result = []
        for node in self:
            result.extend(range(node.left, node.right + 1))
        return result

    def runs(self):
        """Соседние FB, слитые в максимальные отрезки."""
        merged = []
        for node in self:
            if merged and merged[-1][1] == node.left - 1:
                merged[-1][1] = node.right
            else:
                merged.append([node.left, node.right])
        return [tuple(r) for r in merged]

    def _link_before(self, anchor, node):
        node.prev = anchor.prev
        node.next = anchor
        anchor.prev.next = node
        anchor.prev = node
        self._count += 1

    def _unlink(self, node):
        node.prev.next = node.next
        node.next.prev = node.prev
        node.alive = False
        self._count -= 1

    def inlay(self, rt, sz, ld):
        """
        Вставляет FB [rt − sz + 1, rt] с ldist = ld. Поглощённые FB удаляются,
        частично перекрытые обрезаются, FB, строго содержащий новый, делится.
        Позиции меньше 1 отбрасываются.
        """
        lo = max(1, rt - sz + 1)
        if rt < lo:
            return None

        x = self._cursor if self._cursor.alive else self.end
        while x.prev.right >= lo:
            x = x.prev
        while x.right < lo:
            x = x.next

        while x is not self.end and x.left <= rt:
            nxt = x.next
            x_left = x.left
            if x.right > rt:
                # x выходит правее нового FB: остаётся [rt + 1, x.right]
                if x_left < lo:
                    remainder = ForbiddenBlock(lo - 1, lo - x_left, x.ldist)
                    self._link_before(x, remainder)
                x.size = x.right - rt
                break
            if x_left >= lo:
                self._unlink(x)
            else:
                x.size = lo - x_left
                x.right = lo - 1
            x = nxt

        block = ForbiddenBlock(rt, rt - lo + 1, ld)
        self._link_before(x, block)
        self._cursor = block
        return block


def _lmn_expanded(g, z, x):
    """Lmn'(x): первая копия самого левого соседа владельца позиции x."""
    return z.z[g.lmn[z.owner(x)] - 1] + 1


def _leader_ranges(g, z, C, k, u, lo, hi):
    """
    Лидеры среди позиций [lo, hi] запрещённой цепочки, начинающейся в u.

    Позиция i - лидер, если [i − kC, j] - клика для j = max(u, i − C + 2),
    то есть запрещённый отрезок [j, i] короче C. Пока j = u, условие
    монотонно по i; дальше j сдвигается вместе с i, и Lmn'(j) постоянен
    на копиях одной вершины.
    """
    zz = z.z
    ranges = []

    def push(a, b):
        if a > b:
            return
        if ranges and ranges[-1][1] == a - 1:
            ranges[-1][1] = b
        else:
            ranges.append([a, b])

    push(max(lo, _lmn_expanded(g, z, u) + k * C), min(hi, u + C - 2))
    i = max(lo, u + C - 1)
    while i <= hi:
        h = z.owner(i - C + 2)
        seg_hi = min(hi, zz[h] + C - 2)
        push(max(i, zz[g.lmn[h] - 1] + 1 + k * C), seg_hi)
        i = seg_hi + 1
    return ranges


def split_mark(g, capacity):
    """
    Разметка FB графа WXP(G) для подзадачи λ = k + 1, k = ⌊(ω' − 1)/C⌋.

    Фаза 1 добавляет первично запрещённые FB по максимальным кликам, фаза 2
    обходит FB справа налево: последователи сдвигаются на C с ldist + C,
    лидеры внутри текущего FB ищутся по левому концу u максимальной цепочки
    соседних FB (см. _leader_ranges).
    """
    C = capacity
    check_weights(g, C)
    z = z_of(g)
    zz = z.z
    omega_x = omega_expanded(g, z)
    k = (omega_x - 1) // C
    fb = FBList(zz[g.n])
    fb.k = k
    fb.omega = omega_x

    # --- Фаза 1 ---
    for a, b in reversed(g.cliques):
        s = zz[b] - zz[a - 1] - (k * C + 2)
        if s >= 0:
            fb.inlay(zz[b] - 1, s + 1, 0)

    # --- Фаза 2 ---
    if k >= 1:
        node = fb.end.prev
        while node is not fb.begin:
            v = node.right
            size = node.size
            ld = node.ldist
            node_left = v - size + 1

            start = node
            nxt = node.next
            if nxt is not fb.end and nxt.left == v + 1:
                cached = nxt.rnf
                if cached.alive and cached.right <= v:
                    start = cached
            while start.prev.right == start.left - 1:
                start = start.prev
            node.rnf = start
            u = start.left

            if ld <= (k - 1) * C:
                fb.inlay(v - C, size, ld + C)

            for lo, hi in _leader_ranges(g, z, C, k, u, node_left, v):
                fb.inlay(hi - C, hi - lo + 1, C)
            node = node.prev

    LOGGER.debug("split_mark: n=%d, n'=%d, C=%d, k=%d, FB=%d", g.n, zz[g.n], C, k, len(fb))
    return fb


def expanded_lambda(g, z, blocks):
    """Пересечение клик WXP(G) с блоками в развёрнутых координатах."""
    zz = z.z
    starts = [u for u, _ in blocks]
    best = 0
    for a, b in g.cliques:
        first = bisect_right(starts, zz[a - 1] + 1)
        last = bisect_right(starts, zz[b])
        best = max(best, last - first + 1)
    return best


def split_part(g, capacity, fb=None):
    """
    Жадные блоки по позициям 1..n' в обход FB. Возвращает BlockPartition
    в развёрнутых координатах или None, если блок не удаётся закрыть или
    клика WXP(G) пересекает больше k + 1 блоков.
    """
    C = capacity
    fb = fb or split_mark(g, C)
    n_x = fb.n_expanded
    blocks = []
    u = 1
    node = fb.begin.next
    while u <= n_x:
        v = min(u + C - 1, n_x)
        while node.right < v:
            node = node.next
        if node.left <= v:
            v = node.left - 1
            back = node.prev
            while back is not fb.begin and back.right == v:
                v = back.left - 1
                back = back.prev
        if v < u:
            return None
        blocks.append((u, v))
        u = v + 1
    lam = expanded_lambda(g, z_of(g), blocks)
    if lam > fb.k + 1:
        return None
    return BlockPartition(tuple(blocks), C, lam)


@dataclass(frozen=True)
class SplitColoring:
    """assignment[v] - пары (цвет, количество) с суммой W(v); индекс 0 фиктивный."""

    assignment: tuple[tuple[tuple[int, int], ...], ...]
    lam: int
    partition: BlockPartition

    def to_dict(self, g):
        return {
            "lambda": self.lam,
            "capacity": self.partition.capacity,
            "expanded_blocks": [[u, v] for u, v in self.partition.blocks],
            "assignment": {
                g.vertex_id(v): [[c, a] for c, a in self.assignment[v]] for v in range(1, g.n + 1)
            },
        }


def _expanded_simple(n_x, capacity):
    return [(u, min(u + capacity - 1, n_x)) for u in range(1, n_x + 1, capacity)]


def _split_component(sub, capacity):
    z = z_of(sub)
    n_x = z.n_expanded
    if n_x <= capacity:
        return [(1, n_x)]
    if omega_expanded(sub, z) % capacity == 1 % capacity:
        return _expanded_simple(n_x, capacity)
    part = split_part(sub, capacity)
    if part is not None:
        return list(part.blocks)
    LOGGER.debug("split_part: нет [k+1, C]-разбиения, берём простые блоки (n'=%d)", n_x)
    return _expanded_simple(n_x, capacity)


def _vertex_spans(z, blocks):
    """Для каждой вершины пары (номер блока с 0, сколько её копий в блоке)."""
    zz = z.z
    spans = [()]
    bi = 0
    for v in range(1, len(zz)):
        lo, hi = zz[v - 1] + 1, zz[v]
        while blocks[bi][1] < lo:
            bi += 1
        pieces = []
        j = bi
        while j < len(blocks) and blocks[j][0] <= hi:
            a, b = blocks[j]
            pieces.append((j, min(b, hi) - max(a, lo) + 1))
            j += 1
        spans.append(tuple(pieces))
    return spans


def solve_split(g, capacity):
    """Оптимальная делимая раскраска: split_part для λ = k + 1, иначе простые блоки по C копий."""
    g = _as_pig(g)
    check_weights(g, capacity)
    z = z_of(g)
    zz = z.z
    blocks = []
    for shift, sub in g.iter_components():
        offset = zz[shift]
        blocks.extend((u + offset, v + offset) for u, v in _split_component(sub, capacity))
    lam = expanded_lambda(g, z, blocks)
    partition = BlockPartition(tuple(blocks), capacity, lam)

    assignment = [()]
    for pieces in _vertex_spans(z, blocks)[1:]:
        assignment.append(tuple((j % lam + 1, amount) for j, amount in pieces))
    return SplitColoring(tuple(assignment), lam, partition)


@dataclass(frozen=True)
class NonSplitResult:
    partition: BlockPartition
    coloring: Coloring
    split_lambda: int

    @property
    def ratio(self):
        return self.partition.lam / self.split_lambda


def two_approx_nonsplit(g, capacity):
    """
    Неделимое разбиение не хуже 2·λ'. Вершины обходятся слева направо;
    вершина, разрезанная границей блока P_i и не помещающаяся в P_i целиком,
    уходит в копию P'_i, вставленную сразу после P_i.
    """
    g = _as_pig(g)
    C = capacity
    split = solve_split(g, C)
    spans = _vertex_spans(z_of(g), split.partition.blocks)

    load = defaultdict(int)
    members = defaultdict(list)
    for v in range(1, g.n + 1):
        pieces = spans[v]
        if len(pieces) > 2:
            LOGGER.warning("вершина '%s' разрезана на %d блоков", g.vertex_id(v), len(pieces))
        key = (pieces[0][0], 0)
        if len(pieces) > 1 and load[key] + g.weights[v] > C:
            key = (pieces[0][0], 1)
        load[key] += g.weights[v]
        members[key].append(v)

    blocks = []
    for key in sorted(members):
        group = members[key]
        if group[-1] - group[0] + 1 != len(group) or load[key] > C:
            raise PostconditionError(f"некорректный блок после копирования: {group}")
        blocks.append((group[0], group[-1]))

    partition = BlockPartition(tuple(blocks), C, clique_intersection(g, blocks))
    if partition.lam > 2 * split.lam:
        raise PostconditionError(f"λ={partition.lam} превышает 2·λ'={2 * split.lam}")
    return NonSplitResult(partition, partition_to_coloring(partition, g), split.lam)
