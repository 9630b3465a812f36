# src/verify_oracle.py
"""
Независимые проверки и переборные оракулы.

Проверки не доверяют массивам rmn/lmn решателя там, где это возможно:
для малых графов смежность берётся из networkx-графа, построенного
прямо по интервалам. Переборы защищены ограничениями на размер.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx

from exceptions import PostconditionError, SizeGuardError
from partition_unweighted import BlockPartition, Coloring, comb_part, mark_forbidden, solve_unweighted
from pig_core import CanonicalPIG, build_from_rmn
from weighted_split import expand_weights, solve_split, split_mark, split_part, two_approx_nonsplit

LOGGER = logging.getLogger(__name__)

BLOCK_ORACLE_GUARD = 14
GENERAL_ORACLE_GUARD = 9
COLORING_ORACLE_GUARD = 8

SIZE = "size"
WEIGHT = "weight"
CONNECTEDNESS = "connectedness"
CLIQUE_INTERSECTION = "clique-intersection"
CONTIGUITY = "contiguity"
COVERAGE = "coverage"
PALETTE = "palette"


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: object

    def __str__(self):
        return f"{self.kind}: {self.witness}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, witness):
        self.violations.append(Violation(kind, witness))

    def kinds(self):
        return {v.kind for v in self.violations}

    def to_dict(self):
        return {"ok": self.ok, "violations": [{"kind": v.kind, "witness": repr(v.witness)} for v in self.violations]}


def interval_graph(intervals):
    """Граф пересечений замкнутых интервалов (name, left, right)."""
    graph = nx.Graph()
    rows = list(intervals)
    graph.add_nodes_from(name for name, _, _ in rows)
    for i, (a, la, ra) in enumerate(rows):
        for b, lb, rb in rows[i + 1:]:
            if la <= rb and lb <= ra:
                graph.add_edge(a, b)
    return graph


def pig_graph(g):
    """networkx-граф PIG на вершинах 1..n по исходным координатам, без rmn."""
    graph = interval_graph((i, g.lefts[i - 1], g.rights[i - 1]) for i in range(1, g.n + 1))
    nx.set_node_attributes(graph, {i: g.weights[i] for i in range(1, g.n + 1)}, "weight")
    return graph


class _PigView:
    def __init__(self, g):
        self.g = g
        self.vertices = range(1, g.n + 1)
        self.cliques = [range(a, b + 1) for a, b in g.cliques]

    def weight(self, v):
        return self.g.weights[v]

    def connected(self, part):
        members = sorted(part)
        return all(self.g.is_edge(a, b) for a, b in zip(members, members[1:]))


class _NxView:
    def __init__(self, graph, cliques=None):
        self.graph = graph
        self.vertices = list(graph.nodes)
        self.cliques = [list(c) for c in (cliques if cliques is not None else nx.find_cliques(graph))]

    def weight(self, v):
        return self.graph.nodes[v].get("weight", 1)

    def connected(self, part):
        return len(part) > 0 and nx.is_connected(self.graph.subgraph(part))


def graph_view(g, cliques=None):
    if isinstance(g, CanonicalPIG):
        return _PigView(g)
    if isinstance(g, nx.Graph):
        return _NxView(g, cliques)
    # SplitGraph и подобные: отдают networkx-граф и свои максимальные клики
    return _NxView(g.to_networkx(), cliques if cliques is not None else g.maximal_cliques())


def _color_lookup(coloring):
    if isinstance(coloring, Coloring):
        return lambda v: coloring.color[v]
    if isinstance(coloring, dict):
        return coloring.__getitem__
    return lambda v: coloring[v]


def chromons_of(g, coloring):
    """Максимальные связные одноцветные множества вершин."""
    color = _color_lookup(coloring)
    if isinstance(g, CanonicalPIG):
        # В PIG связность одноцветного класса видна на соседних членах класса
        last = {}
        current = {}
        chromons = []
        for v in range(1, g.n + 1):
            c = color(v)
            if c in last and g.is_edge(last[c], v):
                current[c].append(v)
            else:
                current[c] = [v]
                chromons.append(current[c])
            last[c] = v
        return chromons
    view = graph_view(g)
    by_color = {}
    for v in view.vertices:
        by_color.setdefault(color(v), []).append(v)
    chromons = []
    for members in by_color.values():
        for comp in nx.connected_components(view.graph.subgraph(members)):
            chromons.append(sorted(comp, key=view.vertices.index))
    return chromons


def coloring_to_partition(g, coloring):
    return chromons_of(g, coloring)


def _block_contiguity(report, blocks, n):
    expected = 1
    for u, v in blocks:
        if u != expected or v < u:
            report.add(CONTIGUITY, (u, v))
        expected = v + 1
    if expected != n + 1:
        report.add(CONTIGUITY, ("конец", expected - 1, n))


def validate(g, claim, capacity, lambda_claim=None, measure=SIZE, require_blocks=False, cliques=None):
    """
    Проверяет разбиение или раскраску: размер/вес частей, связность,
    непрерывность блоков, покрытие и пересечение с кликами ≤ lambda_claim.
    """
    report = ValidationReport()
    view = graph_view(g, cliques)

    if isinstance(claim, BlockPartition):
        if lambda_claim is None:
            lambda_claim = claim.lam
        _block_contiguity(report, claim.blocks, len(view.vertices))
        parts = [list(range(u, v + 1)) for u, v in claim.blocks]
    elif isinstance(claim, Coloring) or isinstance(claim, dict):
        color = _color_lookup(claim)
        palette = claim.lam if isinstance(claim, Coloring) else lambda_claim
        if lambda_claim is None:
            lambda_claim = palette
        for v in view.vertices:
            if palette is not None and not 1 <= color(v) <= palette:
                report.add(PALETTE, (v, color(v)))
        parts = chromons_of(g, claim)
    else:
        parts = [list(p) for p in claim]

    seen = Counter(v for part in parts for v in part)
    for v in view.vertices:
        if seen[v] != 1:
            report.add(COVERAGE, (v, seen[v]))
    extra = set(seen) - set(view.vertices)
    if extra:
        report.add(COVERAGE, ("лишние вершины", sorted(extra, key=str)))

    for part in parts:
        if measure == WEIGHT:
            load = sum(view.weight(v) for v in part)
            if load > capacity:
                report.add(WEIGHT, (tuple(part), load))
        elif len(part) > capacity:
            report.add(SIZE, (tuple(part), len(part)))
        if not view.connected(part):
            report.add(CONNECTEDNESS, tuple(part))
        if require_blocks and isinstance(g, CanonicalPIG):
            if max(part) - min(part) + 1 != len(part):
                report.add(CONTIGUITY, tuple(part))

    if lambda_claim is not None:
        owner = {v: idx for idx, part in enumerate(parts) for v in part}
        for clique in view.cliques:
            hit = {owner[v] for v in clique if v in owner}
            if len(hit) > lambda_claim:
                report.add(CLIQUE_INTERSECTION, (tuple(clique), len(hit), lambda_claim))
    return report


def validate_split_coloring(g, split_coloring, capacity):
    """Проверка делимой раскраски PIG: суммы долей, палитра и веса хромонов."""
    report = ValidationReport()
    lam = split_coloring.lam
    by_color = {}
    for v in range(1, g.n + 1):
        pieces = split_coloring.assignment[v]
        total = sum(amount for _, amount in pieces)
        if total != g.weights[v] or any(amount < 1 for _, amount in pieces):
            report.add(COVERAGE, (g.vertex_id(v), total, g.weights[v]))
        for c, amount in pieces:
            if not 1 <= c <= lam:
                report.add(PALETTE, (g.vertex_id(v), c))
            by_color.setdefault(c, []).append((v, amount))
    for c, members in by_color.items():
        chromon = [members[0]]
        for prev, cur in zip(members, members[1:]):
            if g.is_edge(prev[0], cur[0]):
                chromon.append(cur)
                continue
            _check_chromon_weight(report, g, c, chromon, capacity)
            chromon = [cur]
        _check_chromon_weight(report, g, c, chromon, capacity)
    return report


def _check_chromon_weight(report, g, color, chromon, capacity):
    load = sum(amount for _, amount in chromon)
    if load > capacity:
        report.add(WEIGHT, (color, tuple(g.vertex_id(v) for v, _ in chromon), load))


def brute_min_lambda_block(g, capacity, guard=BLOCK_ORACLE_GUARD, measure=SIZE):
    """Минимум пересечения с кликами по всем блочным разбиениям; (λ, блоки)."""
    if g.n > guard:
        raise SizeGuardError(g.n, guard)
    graph = pig_graph(g)
    cliques = [sorted(c) for c in nx.find_cliques(graph)]
    comp_end = {}
    for comp in nx.connected_components(graph):
        for v in comp:
            comp_end[v] = max(comp)
    best = [None, None]

    def load(u, v):
        return v - u + 1 if measure == SIZE else sum(g.weights[x] for x in range(u, v + 1))

    def rec(u, blocks):
        if u > g.n:
            lam = max(sum(1 for a, b in blocks if a <= clique[-1] and b >= clique[0]) for clique in cliques)
            if best[0] is None or lam < best[0]:
                best[0], best[1] = lam, list(blocks)
            return
        for v in range(u, comp_end[u] + 1):
            if load(u, v) > capacity:
                break
            blocks.append((u, v))
            rec(v + 1, blocks)
            blocks.pop()

    rec(1, [])
    return best[0], best[1]


def brute_min_lambda_general(g, capacity, guard=GENERAL_ORACLE_GUARD, measure=SIZE, cliques=None):
    """Минимум по всем разбиениям на связные части размера (веса) ≤ C; (λ, части)."""
    view = graph_view(g, cliques)
    vertices = list(view.vertices)
    if len(vertices) > guard:
        raise SizeGuardError(len(vertices), guard)
    cliques_of = {v: [i for i, c in enumerate(view.cliques) if v in c] for v in vertices}
    counts = [Counter() for _ in view.cliques]
    parts = []
    loads = []
    best = [None, None]

    def rec(idx):
        if idx == len(vertices):
            if all(view.connected(p) for p in parts):
                lam = max(len(c) for c in counts)
                if best[0] is None or lam < best[0]:
                    best[0], best[1] = lam, [list(p) for p in parts]
            return
        v = vertices[idx]
        w = view.weight(v) if measure == WEIGHT else 1
        for pi in range(len(parts) + 1):
            if pi == len(parts):
                parts.append([])
                loads.append(0)
            if loads[pi] + w <= capacity:
                parts[pi].append(v)
                loads[pi] += w
                for ci in cliques_of[v]:
                    counts[ci][pi] += 1
                limit = best[0] - 1 if best[0] is not None else None
                if limit is None or all(len(counts[ci]) <= limit for ci in cliques_of[v]):
                    rec(idx + 1)
                for ci in cliques_of[v]:
                    counts[ci][pi] -= 1
                    if counts[ci][pi] == 0:
                        del counts[ci][pi]
                parts[pi].pop()
                loads[pi] -= w
            if not parts[pi]:
                parts.pop()
                loads.pop()

    rec(0)
    return best[0], best[1]


def brute_min_colors(g, capacity, guard=COLORING_ORACLE_GUARD, cliques=None):
    """Наименьшее λ, при котором есть раскраска с хромонами размера ≤ C; (λ, раскраска)."""
    view = graph_view(g, cliques)
    vertices = list(view.vertices)
    if len(vertices) > guard:
        raise SizeGuardError(len(vertices), guard)
    graph = view.graph if isinstance(view, _NxView) else pig_graph(g)

    def fits(color):
        for c in set(color.values()):
            members = [v for v in vertices if color[v] == c]
            if any(len(comp) > capacity for comp in nx.connected_components(graph.subgraph(members))):
                return False
        return True

    for lam in range(1, len(vertices) + 1):
        color = {}

        def rec(idx, used):
            if idx == len(vertices):
                return fits(color)
            for c in range(1, min(used + 1, lam) + 1):
                color[vertices[idx]] = c
                if rec(idx + 1, max(used, c)):
                    return True
            del color[vertices[idx]]
            return False

        if rec(0, 0):
            return lam, dict(color)
    return None, None


def partition_to_chordal_coloring(graph, peo, parts):
    """
    Раскраска хордального графа, в которой каждая часть - хромон: вершины
    красятся в порядке, обратном совершенному порядку исключения; вершина
    берёт цвет уже окрашенной части или наименьший цвет, свободный у соседей.
    """
    part_of = {v: idx for idx, part in enumerate(parts) for v in part}
    part_color = {}
    color = {}
    for v in reversed(list(peo)):
        p = part_of[v]
        if p not in part_color:
            taken = {color[u] for u in graph.neighbors(v) if u in color}
            c = 1
            while c in taken:
                c += 1
            part_color[p] = c
        color[v] = part_color[p]
    return color


def blockify_partition(g, parts, capacity):
    """
    Превращает [λ, C]-разбиение PIG в блочное, не увеличивая λ.

    На каждом шаге берётся наименьшая терминальная вершина i (i и некоторая
    v > i + 1 в одной части, i + 1 в другой) и объединение двух частей
    делится заново. Возвращает (BlockPartition, число шагов).
    """
    n = g.n
    part_of = [0] * (n + 1)
    members = {}
    for idx, part in enumerate(parts):
        members[idx] = set(part)
        for v in part:
            part_of[v] = idx

    rounds = 0
    while True:
        top = {idx: max(ms) for idx, ms in members.items() if ms}
        terminal = next(
            (i for i in range(1, n) if part_of[i + 1] != part_of[i] and top[part_of[i]] > i + 1),
            None,
        )
        if terminal is None:
            break
        rounds += 1
        if rounds > n:
            raise PostconditionError("blockify_partition не сошёлся за n шагов")
        i = terminal
        p1, p2 = part_of[i], part_of[i + 1]
        merged = sorted(members[p1] | members[p2])
        right = [x for x in merged if x > i]
        if len(right) <= capacity:
            new1, new2 = [x for x in merged if x <= i], right
        else:
            new1, new2 = merged[:-capacity], merged[-capacity:]
        members[p1], members[p2] = set(new1), set(new2)
        for x in new1:
            part_of[x] = p1
        for x in new2:
            part_of[x] = p2

    blocks = sorted((min(ms), max(ms)) for ms in members.values() if ms)
    owner = [0] * (n + 1)
    for idx, (u, v) in enumerate(blocks, start=1):
        for x in range(u, v + 1):
            owner[x] = idx
    lam = max(owner[b] - owner[a] + 1 for a, b in g.cliques)
    return BlockPartition(tuple(blocks), capacity, lam), rounds


def definition_forbidden(g, capacity):
    """Запрещённые вершины как неподвижная точка определений первичного и вторичного запрета."""
    graph = pig_graph(g)
    C = capacity
    k = g.k(C)

    def is_clique(lo, hi):
        return all(graph.has_edge(a, b) for a in range(lo, hi + 1) for b in range(a + 1, hi + 1))

    forbidden = {i for i in range(1, g.n) if i - k * C >= 1 and is_clique(i - k * C, i + 1)}
    changed = k >= 1
    while changed:
        changed = False
        for v in range(1, g.n + 1):
            for s in range(1, C):
                lo = v - s + 1
                if lo < 1 or any(x not in forbidden for x in range(lo, v + 1)):
                    break
                if v - k * C >= 1 and is_clique(v - k * C, lo):
                    for q in range(1, k + 1):
                        w = v - q * C
                        if w >= 1 and w not in forbidden:
                            forbidden.add(w)
                            changed = True
    return sorted(forbidden)


def check_profile(profile, capacities, general_limit=GENERAL_ORACLE_GUARD):
    """Сверяет solve_unweighted с оракулами на одном профиле rmn; список расхождений."""
    g = build_from_rmn(profile)
    mismatches = []
    for C in capacities:
        if not forbidden_matches_definition(g, C):
            mismatches.append({"profile": list(profile), "C": C, "marks": "mark_forbidden расходится с определением"})
        lam = solve_unweighted(g, C).lam
        block_lam, _ = brute_min_lambda_block(g, C)
        if lam != block_lam:
            mismatches.append({"profile": list(profile), "C": C, "solver": lam, "block_oracle": block_lam})
        if g.n <= general_limit:
            general_lam, _ = brute_min_lambda_general(g, C)
            if lam != general_lam:
                mismatches.append({"profile": list(profile), "C": C, "solver": lam, "general_oracle": general_lam})
    return mismatches


def forbidden_matches_definition(g, capacity):
    return mark_forbidden(g, capacity).forbidden() == definition_forbidden(g, capacity)


def check_weighted_profile(profile, weights, capacities, nonsplit_limit=7):
    """
    Сверяет делимый решатель с явным WXP(G) и границу 2·λ неделимой версии
    на одном профиле rmn с заданными весами; список расхождений.
    """
    g = build_from_rmn(profile, weights=weights)
    gx = expand_weights(g)
    mismatches = []
    for C in capacities:
        if max(weights) > C:
            continue
        case = {"profile": list(profile), "weights": list(weights), "C": C}
        split_lam = solve_split(g, C).lam
        expanded_lam = solve_unweighted(gx, C).lam
        if split_lam != expanded_lam:
            mismatches.append({**case, "split": split_lam, "expanded": expanded_lam})

        if split_mark(g, C).marked() != mark_forbidden(gx, C).forbidden():
            mismatches.append({**case, "marks": "split_mark и mark_forbidden расходятся"})
        comb = comb_part(gx, C)
        part = split_part(g, C)
        if (comb is None) != (part is None) or (comb is not None and part.blocks != comb.blocks):
            mismatches.append({**case, "blocks": "split_part и comb_part расходятся"})

        try:
            approx = two_approx_nonsplit(g, C)
        except PostconditionError as exc:
            mismatches.append({**case, "nonsplit": str(exc), "split": split_lam})
            continue
        if g.n <= nonsplit_limit:
            optimum, _ = brute_min_lambda_general(g, C, guard=nonsplit_limit, measure=WEIGHT)
            if approx.partition.lam > 2 * optimum:
                mismatches.append({**case, "nonsplit": approx.partition.lam, "nonsplit_optimum": optimum})
    return mismatches
