# src/pig_core.py
"""
Собственные интервальные графы (PIG): разбор файла экземпляра, каноническое
упорядочение, максимальные клики, массивы rmn/lmn, ω и компоненты связности.

Вершины нумеруются с 1 в каноническом порядке (по левому концу, при равенстве
по правому). Числовые массивы rmn, lmn и weights хранят фиктивный элемент
с индексом 0, поэтому rmn[i] относится к вершине i. Кортежи order, ids, lefts
и rights индексируются с нуля: order[i - 1] описывает вершину i.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from exceptions import InstanceParseError, NotProperError

LOGGER = logging.getLogger(__name__)

# Карманная сортировка, пока диапазон координат не больше 8n + BUCKET_SLACK
BUCKET_SLACK = 1024


@dataclass(frozen=True)
class IntervalItem:
    id: str
    left: int
    right: int
    weight: int = 1


@dataclass(frozen=True)
class IntervalInstance:
    """Именованные интервалы с целыми весами, как они заданы во входном файле."""

    items: tuple[IntervalItem, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise InstanceParseError("экземпляр не содержит ни одного интервала")
        seen = set()
        for item in self.items:
            if item.id in seen:
                raise InstanceParseError(f"повторный идентификатор '{item.id}'")
            if item.left >= item.right:
                raise InstanceParseError(f"интервал '{item.id}': левый конец должен быть меньше правого")
            if item.weight < 1:
                raise InstanceParseError(f"интервал '{item.id}': вес должен быть не меньше 1")
            seen.add(item.id)

    def __len__(self):
        return len(self.items)

    @property
    def max_weight(self):
        return max(item.weight for item in self.items)

    @classmethod
    def from_rows(cls, rows):
        """Строит экземпляр из кортежей (id, left, right[, weight])."""
        return cls(tuple(IntervalItem(*row) for row in rows))


@dataclass(frozen=True)
class CanonicalPIG:
    n: int
    order: tuple[int, ...]
    ids: tuple[str, ...]
    lefts: tuple[int, ...]
    rights: tuple[int, ...]
    weights: tuple[int, ...]
    rmn: tuple[int, ...]
    lmn: tuple[int, ...]
    cliques: tuple[tuple[int, int], ...]
    omega: int
    components: tuple[tuple[int, int], ...]

    def k(self, capacity):
        """k(G) = ⌊(ω − 1) / C⌋, параметр подзадачи с целевым λ = k + 1."""
        return (self.omega - 1) // capacity

    def is_edge(self, u, v):
        return is_edge(self, u, v)

    @property
    def is_connected(self):
        return len(self.components) == 1

    @property
    def is_unit_weight(self):
        return all(w == 1 for w in self.weights[1:])

    def vertex_id(self, i):
        return self.ids[i - 1]

    def component(self, lo, hi):
        """Индуцированный подграф на отрезке [lo, hi] из целых компонент, перенумерованный 1..m."""
        if not (1 <= lo <= hi <= self.n) or self.rmn[hi] != hi or (lo > 1 and self.rmn[lo - 1] != lo - 1):
            raise ValueError(f"отрезок [{lo}, {hi}] не составлен из компонент связности")
        if lo == 1 and hi == self.n:
            return self
        shift = lo - 1
        rmn = (0,) + tuple(self.rmn[i] - shift for i in range(lo, hi + 1))
        cliques = tuple((a - shift, b - shift) for a, b in self.cliques if lo <= a and b <= hi)
        return CanonicalPIG(
            n=hi - lo + 1,
            order=self.order[lo - 1:hi],
            ids=self.ids[lo - 1:hi],
            lefts=self.lefts[lo - 1:hi],
            rights=self.rights[lo - 1:hi],
            weights=(0,) + self.weights[lo:hi + 1],
            rmn=rmn,
            lmn=(0,) + tuple(self.lmn[i] - shift for i in range(lo, hi + 1)),
            cliques=cliques,
            omega=max(b - a + 1 for a, b in cliques),
            components=_components(rmn, hi - lo + 1),
        )

    def iter_components(self):
        """Пары (смещение, подграф) по компонентам связности слева направо."""
        for lo, hi in self.components:
            yield lo - 1, self.component(lo, hi)


def parse_instance(text):
    """Разбирает строки вида `id left right [weight]`; '#' начинает комментарий."""
    items = []
    seen = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise InstanceParseError(f"ожидалось 'id left right [weight]', получено: '{line}'", line_no)
        item_id = parts[0]
        try:
            left, right = int(parts[1]), int(parts[2])
            weight = int(parts[3]) if len(parts) == 4 else 1
        except ValueError:
            raise InstanceParseError("координаты и вес должны быть целыми числами", line_no) from None
        if item_id in seen:
            raise InstanceParseError(f"идентификатор '{item_id}' уже встречался в строке {seen[item_id]}", line_no)
        if left >= right:
            raise InstanceParseError(f"у интервала '{item_id}' левый конец {left} не меньше правого {right}", line_no)
        if weight < 1:
            raise InstanceParseError(f"у интервала '{item_id}' вес {weight} меньше 1", line_no)
        seen[item_id] = line_no
        items.append(IntervalItem(item_id, left, right, weight))
    if not items:
        raise InstanceParseError("файл не содержит ни одного интервала")
    return IntervalInstance(tuple(items))


def serialize_instance(inst, with_weights=None):
    """Обратная к parse_instance запись; вес пишется, если он не равен 1 (или всегда при with_weights)."""
    if with_weights is None:
        with_weights = any(item.weight != 1 for item in inst.items)
    lines = []
    for item in inst.items:
        row = f"{item.id} {item.left} {item.right}"
        if with_weights:
            row += f" {item.weight}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def read_instance(path):
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def _counting_pass(indices, keys, lo, span):
    buckets = [[] for _ in range(span + 1)]
    for j in indices:
        buckets[keys[j] - lo].append(j)
    return [j for bucket in buckets for j in bucket]


def _check_proper(items, order):
    # Достаточно соседних пар: при неубывающих правых концах вложение видно на соседях
    for prev_j, j in zip(order, order[1:]):
        a, b = items[prev_j], items[j]
        if b.right < a.right:
            raise NotProperError(a.id, b.id)
        if a.left == b.left and b.right > a.right:
            raise NotProperError(b.id, a.id)
        if a.right == b.right and a.left < b.left:
            raise NotProperError(a.id, b.id)


def _scan_cliques(lefts, rights, order, lo, span, use_buckets):
    n = len(order)
    # Левые концы раньше правых при равной координате: отрезки замкнутые
    if use_buckets:
        buckets = [[] for _ in range(span + 1)]
        for p in range(1, n + 1):
            buckets[lefts[order[p - 1]] - lo].append((0, p))
        for p in range(1, n + 1):
            buckets[rights[order[p - 1]] - lo].append((1, p))
        events = [event for bucket in buckets for event in bucket]
    else:
        events = sorted(
            [(lefts[order[p - 1]], 0, p) for p in range(1, n + 1)]
            + [(rights[order[p - 1]], 1, p) for p in range(1, n + 1)]
        )
        events = [(kind, p) for _, kind, p in events]

    cliques = []
    last_left = 0
    prev_kind = None
    for kind, p in events:
        if kind == 0:
            last_left = p
        elif prev_kind == 0:
            cliques.append((p, last_left))
        prev_kind = kind
    return cliques


def _neighbor_arrays(n, cliques):
    rmn = [0] * (n + 1)
    lmn = [0] * (n + 1)
    c = 0
    for i in range(1, n + 1):
        while c + 1 < len(cliques) and cliques[c + 1][0] <= i:
            c += 1
        rmn[i] = cliques[c][1]
    c = 0
    for i in range(1, n + 1):
        while cliques[c][1] < i:
            c += 1
        lmn[i] = cliques[c][0]
    return tuple(rmn), tuple(lmn)


def _components(rmn, n):
    comps = []
    start = 1
    for i in range(1, n + 1):
        if rmn[i] == i:
            comps.append((start, i))
            start = i + 1
    return tuple(comps)


def build_canonical(inst):
    """
    Каноническое упорядочение, максимальные клики и производные массивы.

    Линейное время плюс диапазон координат, если он не больше 8n + BUCKET_SLACK,
    иначе сортировка сравнением. Бросает NotProperError при вложении интервалов.
    """
    items = inst.items
    n = len(items)
    lefts = [item.left for item in items]
    rights = [item.right for item in items]
    lo = min(lefts)
    span = max(rights) - lo
    use_buckets = span <= 8 * n + BUCKET_SLACK

    if use_buckets:
        order = _counting_pass(_counting_pass(range(n), rights, lo, span), lefts, lo, span)
    else:
        order = sorted(range(n), key=lambda j: (lefts[j], rights[j]))
    _check_proper(items, order)

    cliques = _scan_cliques(lefts, rights, order, lo, span, use_buckets)
    rmn, lmn = _neighbor_arrays(n, cliques)
    components = _components(rmn, n)
    omega = max(b - a + 1 for a, b in cliques)
    LOGGER.debug("PIG: n=%d, клик=%d, ω=%d, компонент=%d", n, len(cliques), omega, len(components))

    return CanonicalPIG(
        n=n,
        order=tuple(order),
        ids=tuple(items[j].id for j in order),
        lefts=tuple(lefts[j] for j in order),
        rights=tuple(rights[j] for j in order),
        weights=(0,) + tuple(items[j].weight for j in order),
        rmn=rmn,
        lmn=lmn,
        cliques=tuple(cliques),
        omega=omega,
        components=components,
    )


def is_edge(g, u, v):
    """Смежность по свойству зонтика: max(u, v) ≤ rmn(min(u, v))."""
    if not (1 <= u <= g.n and 1 <= v <= g.n):
        raise IndexError(f"вершина вне диапазона 1..{g.n}: ({u}, {v})")
    if u == v:
        return False
    a, b = (u, v) if u < v else (v, u)
    return b <= g.rmn[a]


def instance_from_rmn(rmn_profile, weights=None, ids=None):
    """
    Интервальное представление по профилю правых соседей rmn(1..n).

    Левый конец вершины i равен (n+1)·i, правый (n+1)·rmn(i) + i: концы строго
    возрастают, и i < j смежны ровно при j ≤ rmn(i).
    """
    n = len(rmn_profile)
    prev = 0
    for i, r in enumerate(rmn_profile, start=1):
        if not (i <= r <= n) or r < prev:
            raise ValueError(f"некорректный профиль rmn в позиции {i}: {r}")
        prev = r
    scale = n + 1
    items = []
    for i, r in enumerate(rmn_profile, start=1):
        items.append(IntervalItem(
            ids[i - 1] if ids else f"v{i}",
            scale * i,
            scale * r + i,
            weights[i - 1] if weights else 1,
        ))
    return IntervalInstance(tuple(items))


def build_from_rmn(rmn_profile, weights=None, ids=None):
    return build_canonical(instance_from_rmn(rmn_profile, weights, ids))
