# src/splitgraph_npc.py
"""
Расщепляемые графы (split graphs): верхняя оценка ⌈ω/C⌉ + 1 и цепочка
сведений SAT → SP → CP с переводом сертификатов в обе стороны.

SP (разбиение множества): 2n элементов нужно разбить на n пар так, чтобы
каждое подмножество целиком содержало хотя бы одну пару.
CP: есть ли у расщепляемого графа [n, 2]-разбиение.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import networkx as nx

from exceptions import CertificateError, InstanceParseError, SizeGuardError, TriviallyUnsatisfiableError
from verify_oracle import partition_to_chordal_coloring, validate

LOGGER = logging.getLogger(__name__)

CP_ORACLE_GUARD = 14
SP_ORACLE_GUARD = 16
SAT_ORACLE_GUARD = 20


# --- Расщепляемый граф ---

@dataclass(frozen=True)
class SplitGraph:
    """Клика q, независимое множество s и соседи каждой s-вершины в q."""

    q: tuple[str, ...]
    s: tuple[str, ...]
    adj: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "adj", {w: frozenset(self.adj.get(w, ())) for w in self.s})
        names = self.q + self.s
        if len(set(names)) != len(names):
            raise InstanceParseError("вершины расщепляемого графа должны быть различны")
        qs = set(self.q)
        for w, nbrs in self.adj.items():
            if not nbrs <= qs:
                raise InstanceParseError(f"соседи '{w}' должны лежать в клике: {sorted(nbrs - qs)}")

    @property
    def vertices(self):
        return self.q + self.s

    @property
    def omega(self):
        return max([len(self.q)] + [len(self.adj[w]) + 1 for w in self.s])

    def normalized(self):
        """s-вершина, смежная со всей кликой, переносится в клику (такая вершина не больше одной)."""
        full = [w for w in self.s if self.q and len(self.adj[w]) == len(self.q)]
        if not full:
            return self
        w = full[0]
        LOGGER.debug("нормализация: '%s' смежна со всей кликой, переносим в q", w)
        rest = tuple(x for x in self.s if x != w)
        return SplitGraph(self.q + (w,), rest, {x: self.adj[x] for x in rest})

    def maximal_cliques(self):
        """q и замкнутые окрестности s-вершин; q пропускается, если содержится в N[w]."""
        cliques = []
        if self.q and not any(len(self.adj[w]) == len(self.q) for w in self.s):
            cliques.append(list(self.q))
        for w in self.s:
            cliques.append([x for x in self.q if x in self.adj[w]] + [w])
        return cliques

    def to_networkx(self):
        graph = nx.complete_graph(self.q)
        graph.add_nodes_from(self.s)
        for w in self.s:
            graph.add_edges_from((w, x) for x in self.adj[w])
        return graph

    def peo(self):
        """Совершенный порядок исключения: сначала s, затем q."""
        return list(self.s) + list(self.q)


def parse_split_graph(text):
    """Строки `q v...`, `s w...` и `adj w v...`; '#' начинает комментарий."""
    q, s, adj = [], [], {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "q":
            q.extend(rest)
        elif head == "s":
            s.extend(rest)
        elif head == "adj":
            if not rest:
                raise InstanceParseError("строка adj без вершины", line_no)
            adj.setdefault(rest[0], set()).update(rest[1:])
        else:
            raise InstanceParseError(f"неизвестная запись '{head}'", line_no)
    unknown = set(adj) - set(s)
    if unknown:
        raise InstanceParseError(f"adj для вершин вне s: {sorted(unknown)}")
    if not q and not s:
        raise InstanceParseError("граф не содержит вершин")
    return SplitGraph(tuple(q), tuple(s), adj)


def serialize_split_graph(g):
    lines = [f"q {' '.join(g.q)}".rstrip(), f"s {' '.join(g.s)}".rstrip()]
    for w in g.s:
        if g.adj[w]:
            lines.append(f"adj {w} {' '.join(x for x in g.q if x in g.adj[w])}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SplitBound:
    parts: list
    coloring: dict
    lam: int
    colors: int
    omega: int


def clique_intersection_of(cliques, parts):
    owner = {v: idx for idx, part in enumerate(parts) for v in part}
    return max(len({owner[v] for v in clique}) for clique in cliques)


def split_upper_bound(g, capacity):
    """[⌈ω/C⌉ + 1, C]-разбиение: клика режется на куски по C, s-вершины поодиночке."""
    g = g.normalized()
    q = list(g.q)
    parts = [q[i:i + capacity] for i in range(0, len(q), capacity)] + [[w] for w in g.s]
    coloring = partition_to_chordal_coloring(g.to_networkx(), g.peo(), parts)
    lam = clique_intersection_of(g.maximal_cliques(), parts)
    colors = max(coloring.values())
    LOGGER.debug("split_upper_bound: |q|=%d, |s|=%d, λ=%d, цветов %d", len(q), len(g.s), lam, colors)
    return SplitBound(parts, coloring, lam, colors, g.omega)


def decide_cp_bruteforce(g, capacity, target=None, guard=CP_ORACLE_GUARD):
    """
    Есть ли [target, C]-разбиение (по умолчанию target = ⌈ω/C⌉).

    Перебор в порядке q, затем s: вершина открывает новую часть или входит
    в часть, где есть её сосед. Возвращает список частей или None.
    """
    if len(g.q) > guard:
        raise SizeGuardError(len(g.q), guard, "клика")
    if target is None:
        target = -(-g.omega // capacity)
    graph = g.to_networkx()
    order = list(g.q) + list(g.s)
    cliques = g.maximal_cliques()
    cliques_of = {v: [i for i, c in enumerate(cliques) if v in c] for v in order}
    counts = [Counter() for _ in cliques]
    parts = []

    def place(v, pi):
        parts[pi].append(v)
        for ci in cliques_of[v]:
            counts[ci][pi] += 1
        return all(len(counts[ci]) <= target for ci in cliques_of[v])

    def unplace(v, pi):
        parts[pi].pop()
        for ci in cliques_of[v]:
            counts[ci][pi] -= 1
            if counts[ci][pi] == 0:
                del counts[ci][pi]

    def rec(idx):
        if idx == len(order):
            return True
        v = order[idx]
        for pi, part in enumerate(parts):
            if len(part) < capacity and any(graph.has_edge(v, u) for u in part):
                if place(v, pi) and rec(idx + 1):
                    return True
                unplace(v, pi)
        parts.append([])
        if place(v, len(parts) - 1) and rec(idx + 1):
            return True
        unplace(v, len(parts) - 1)
        parts.pop()
        return False

    return [list(p) for p in parts] if rec(0) else None


# --- CNF ---

@dataclass(frozen=True)
class CNF:
    p: int
    clauses: tuple[tuple[int, ...], ...]


def parse_cnf(text):
    """DIMACS: `c` комментарии, заголовок `p cnf V M`, дизъюнкции через 0."""
    p = None
    clauses = []
    current = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InstanceParseError(f"ожидался заголовок 'p cnf V M': '{line}'", line_no)
            try:
                p = int(parts[2])
            except ValueError:
                raise InstanceParseError("число переменных должно быть целым", line_no) from None
            continue
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise InstanceParseError(f"литерал '{token}' не является целым", line_no) from None
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if p is not None and abs(lit) > p:
                    raise InstanceParseError(f"переменная {abs(lit)} больше объявленных {p}", line_no)
                current.append(lit)
    if current:
        clauses.append(current)
    if p is None:
        p = max((abs(lit) for clause in clauses for lit in clause), default=0)
    return CNF(p, tuple(_normalize_clauses(clauses)))


def _normalize_clauses(clauses):
    for clause in clauses:
        lits = tuple(dict.fromkeys(clause))
        if any(-lit in lits for lit in lits):
            LOGGER.debug("тавтология %s отброшена", lits)
            continue
        yield lits


def serialize_cnf(f):
    lines = [f"p cnf {f.p} {len(f.clauses)}"]
    lines.extend(" ".join(str(lit) for lit in clause + (0,)) for clause in f.clauses)
    return "\n".join(lines) + "\n"


def sat_satisfies(f, assignment):
    """assignment: словарь переменная → bool для 1..p."""
    return all(any(assignment.get(abs(lit), False) == (lit > 0) for lit in clause) for clause in f.clauses)


def sat_bruteforce(f, guard=SAT_ORACLE_GUARD):
    if f.p > guard:
        raise SizeGuardError(f.p, guard, "формула")
    for bits in itertools.product((False, True), repeat=f.p):
        assignment = {i + 1: bit for i, bit in enumerate(bits)}
        if sat_satisfies(f, assignment):
            return assignment
    return None


# --- SP ---

@dataclass(frozen=True)
class SPInstance:
    elements: tuple[str, ...]
    subsets: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "subsets", tuple(frozenset(s) for s in self.subsets))
        if len(self.elements) % 2:
            raise InstanceParseError(f"число элементов SP должно быть чётным, получено {len(self.elements)}")
        if len(set(self.elements)) != len(self.elements):
            raise InstanceParseError("элементы SP должны быть различны")
        known = set(self.elements)
        for j, subset in enumerate(self.subsets, start=1):
            if not subset <= known:
                raise InstanceParseError(f"подмножество {j} содержит неизвестные элементы {sorted(subset - known)}")


def parse_sp(text):
    """Строки `e a b ...` (элементы) и `s a b ...` (по одному подмножеству на строку)."""
    elements, subsets = [], []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "e":
            elements.extend(rest)
        elif head == "s":
            subsets.append(frozenset(rest))
        else:
            raise InstanceParseError(f"неизвестная запись '{head}'", line_no)
    return SPInstance(tuple(elements), tuple(subsets))


def serialize_sp(sp):
    lines = [f"e {' '.join(sp.elements)}"]
    lines.extend(f"s {' '.join(e for e in sp.elements if e in subset)}".rstrip() for subset in sp.subsets)
    return "\n".join(lines) + "\n"


def check_sp_grouping(sp, grouping):
    """Список нарушенных условий; пустой список означает корректную группировку."""
    problems = []
    groups = [frozenset(g) for g in grouping]
    used = Counter(e for g in groups for e in g)
    for g in groups:
        if len(g) != 2:
            problems.append(f"группа {sorted(g)} не из двух элементов")
    for e in sp.elements:
        if used[e] != 1:
            problems.append(f"элемент {e} входит в {used[e]} групп")
    for e in set(used) - set(sp.elements):
        problems.append(f"неизвестный элемент {e}")
    for j, subset in enumerate(sp.subsets, start=1):
        if not any(g <= subset for g in groups):
            problems.append(f"подмножество {j} не содержит ни одной группы")
    return problems


def sp_grouping_valid(sp, grouping):
    return not check_sp_grouping(sp, grouping)


def _perfect_matchings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in _perfect_matchings(rest[:i] + rest[i + 1:]):
            yield [frozenset((first, other))] + tail


def sp_bruteforce(sp, guard=SP_ORACLE_GUARD):
    if len(sp.elements) > guard:
        raise SizeGuardError(len(sp.elements), guard, "SP")
    for grouping in _perfect_matchings(list(sp.elements)):
        if all(any(g <= subset for g in grouping) for subset in sp.subsets):
            return grouping
    return None


# --- Сведения ---

def _lit_element(lit):
    return f"x{lit}" if lit > 0 else f"x{-lit}'"


def sat_to_sp(f):
    """4p элементов x_i, x'_i, T_i, F_i; четыре подмножества на переменную и одно на дизъюнкцию."""
    if any(not clause for clause in f.clauses):
        raise TriviallyUnsatisfiableError("формула содержит пустую дизъюнкцию")
    elements = []
    subsets = []
    for i in range(1, f.p + 1):
        x, xn, t, fl = f"x{i}", f"x{i}'", f"T{i}", f"F{i}"
        elements.extend((x, xn, t, fl))
        subsets.extend((
            frozenset((x, xn, t)),
            frozenset((x, xn, fl)),
            frozenset((x, t, fl)),
            frozenset((xn, t, fl)),
        ))
    for clause in f.clauses:
        subsets.append(frozenset(e for lit in clause for e in (_lit_element(lit), f"T{abs(lit)}")))
    return SPInstance(tuple(elements), tuple(subsets))


@dataclass(frozen=True)
class CPInstance:
    graph: SplitGraph
    capacity: int
    target: int


def sp_to_cp(sp):
    """Вершина v:e на элемент, w:j на подмножество; v:e - w:j смежны, когда e ∉ S_j."""
    q = tuple(f"v:{e}" for e in sp.elements)
    s = tuple(f"w:{j}" for j in range(1, len(sp.subsets) + 1))
    adj = {f"w:{j}": {f"v:{e}" for e in sp.elements if e not in subset}
           for j, subset in enumerate(sp.subsets, start=1)}
    return CPInstance(SplitGraph(q, s, adj), 2, len(sp.elements) // 2)


def sat_certificate_to_sp(f, assignment):
    if not sat_satisfies(f, assignment):
        raise CertificateError("присваивание не выполняет формулу")
    grouping = []
    for i in range(1, f.p + 1):
        if assignment.get(i, False):
            grouping += [frozenset((f"x{i}", f"T{i}")), frozenset((f"x{i}'", f"F{i}"))]
        else:
            grouping += [frozenset((f"x{i}", f"F{i}")), frozenset((f"x{i}'", f"T{i}"))]
    return grouping


def sp_certificate_to_cp(sp, cp, grouping):
    problems = check_sp_grouping(sp, grouping)
    if problems:
        raise CertificateError(f"группировка SP некорректна: {problems[0]}")
    return [sorted(f"v:{e}" for e in g) for g in grouping] + [[w] for w in cp.graph.s]


def cp_certificate_to_sp(sp, cp, partition):
    report = validate(cp.graph, partition, cp.capacity, lambda_claim=cp.target)
    if not report.ok:
        raise CertificateError(f"разбиение CP некорректно: {report.violations[0]}")
    qs = set(cp.graph.q)
    grouping = []
    for part in partition:
        on_q = [v for v in part if v in qs]
        if not on_q:
            continue
        if len(on_q) != 2 or len(part) != 2:
            raise CertificateError(f"часть {sorted(part)} на клике не является парой")
        grouping.append(frozenset(v.removeprefix("v:") for v in on_q))
    return grouping


def sp_certificate_to_sat(f, sp, grouping):
    """Литерал в паре с T_i истинен; свободная переменная считается ложной."""
    problems = check_sp_grouping(sp, grouping)
    if problems:
        raise CertificateError(f"группировка SP некорректна: {problems[0]}")
    groups = {frozenset(g) for g in grouping}
    assignment = {i: frozenset((f"x{i}", f"T{i}")) in groups for i in range(1, f.p + 1)}
    if not sat_satisfies(f, assignment):
        raise CertificateError("восстановленное присваивание не выполняет формулу")
    return assignment


DIRECTIONS = ("sat-sp", "sp-cp", "cp-sp", "sp-sat")


def map_certificates(direction, certificate, cnf=None, sp=None, cp=None):
    """Переводит сертификат между задачами; направление из DIRECTIONS."""
    if direction == "sat-sp":
        return sat_certificate_to_sp(cnf, certificate)
    if direction == "sp-cp":
        return sp_certificate_to_cp(sp, cp or sp_to_cp(sp), certificate)
    if direction == "cp-sp":
        return cp_certificate_to_sp(sp, cp or sp_to_cp(sp), certificate)
    if direction == "sp-sat":
        return sp_certificate_to_sat(cnf, sp, certificate)
    raise ValueError(f"неизвестное направление '{direction}', ожидалось одно из {DIRECTIONS}")


@dataclass
class ReductionReport:
    cnf: CNF
    sp: SPInstance | None = None
    cp: CPInstance | None = None
    sat: bool | None = None
    sp_yes: bool | None = None
    cp_yes: bool | None = None
    certificates_ok: bool | None = None
    trivially_unsat: bool = False

    @property
    def consistent(self):
        if self.trivially_unsat:
            return self.sat is False
        return self.sat == self.sp_yes == self.cp_yes and self.certificates_ok is not False

    def to_dict(self):
        return {
            "p": self.cnf.p,
            "clauses": [list(c) for c in self.cnf.clauses],
            "trivially_unsat": self.trivially_unsat,
            "sat": self.sat,
            "sp": self.sp_yes,
            "cp": self.cp_yes,
            "certificates_ok": self.certificates_ok,
            "consistent": self.consistent,
            "cp_instance": None if self.cp is None else {
                "q": list(self.cp.graph.q),
                "s": list(self.cp.graph.s),
                "adj": {w: sorted(self.cp.graph.adj[w]) for w in self.cp.graph.s},
                "capacity": self.cp.capacity,
                "target": self.cp.target,
            },
        }


def run_reduction(f, cp_guard=CP_ORACLE_GUARD):
    """SAT → SP → CP, три переборных ответа и проверка сертификатов по всей цепочке."""
    report = ReductionReport(f)
    assignment = sat_bruteforce(f)
    report.sat = assignment is not None
    try:
        sp = sat_to_sp(f)
    except TriviallyUnsatisfiableError:
        report.trivially_unsat = True
        return report
    cp = sp_to_cp(sp)
    report.sp, report.cp = sp, cp
    grouping = sp_bruteforce(sp)
    partition = decide_cp_bruteforce(cp.graph, cp.capacity, target=cp.target, guard=cp_guard)
    report.sp_yes = grouping is not None
    report.cp_yes = partition is not None

    try:
        if assignment is not None:
            forward = map_certificates("sp-cp", map_certificates("sat-sp", assignment, cnf=f), sp=sp, cp=cp)
            validate_cp = validate(cp.graph, forward, cp.capacity, lambda_claim=cp.target)
            if not validate_cp.ok:
                raise CertificateError(str(validate_cp.violations[0]))
        if partition is not None:
            back = map_certificates("cp-sp", partition, sp=sp, cp=cp)
            map_certificates("sp-sat", back, cnf=f, sp=sp)
        report.certificates_ok = True
    except CertificateError as e:
        LOGGER.warning("сертификат не прошёл проверку: %s", e)
        report.certificates_ok = False
    return report


def read_cnf(path):
    return parse_cnf(Path(path).read_text(encoding="utf-8"))
