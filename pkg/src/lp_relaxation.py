# src/lp_relaxation.py
"""
Целочисленная модель блочного разбиения и округление дробных решений.

Переменная x_j = 1, если в вершине j кончается блок. Ограничения:
  last       x_n = 1 (и x_v = 1 в конце каждой компоненты связности);
  size_i     x_i + ... + x_{i+C-1} ≥ 1, 1 ≤ i ≤ n − C + 1;
  clique_j   x_a + ... + x_{b-1} ≤ λ − 1 для максимальной клики [a, b].
Решатель ЛП не встроен: модель пишется в формате CPLEX LP, решение читается
строками `j value` и `lambda value`. Вся арифметика точная (Fraction).
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from exceptions import InfeasibleInputError, InstanceParseError, PostconditionError, SizeGuardError

LOGGER = logging.getLogger(__name__)

ILP_BRUTEFORCE_GUARD = 12
TERMS_PER_LINE = 12


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    lo: int          # первая переменная x суммы
    hi: int          # последняя; hi < lo означает пустую сумму
    sense: str       # '=', '>=', '<='
    rhs: int
    with_lambda: bool = False


@dataclass(frozen=True)
class IlpModel:
    n: int
    capacity: int
    constraints: tuple[LinearConstraint, ...]

    def count(self, prefix):
        return sum(1 for c in self.constraints if c.name.startswith(prefix))


@dataclass(frozen=True)
class FractionalSolution:
    x: tuple[Fraction, ...]  # x[0] фиктивный
    lam: Fraction

    @property
    def n(self):
        return len(self.x) - 1


@dataclass(frozen=True)
class Violation:
    constraint: str
    lhs: Fraction
    rhs: Fraction
    slack: Fraction

    def __str__(self):
        return f"{self.constraint}: {self.lhs} против {self.rhs} (зазор {self.slack})"


@dataclass
class FeasibilityReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


@dataclass(frozen=True)
class RoundedSolution:
    x: tuple[int, ...]  # x[0] фиктивный
    lam: int

    def block_ends(self):
        return [j for j in range(1, len(self.x)) if self.x[j]]


def build_ilp(g, capacity):
    C = capacity
    constraints = [LinearConstraint("last", g.n, g.n, "=", 1)]
    # Граница компоненты обязана быть концом блока
    for _, hi in g.components[:-1]:
        constraints.append(LinearConstraint(f"cut_{hi}", hi, hi, "=", 1))
    for i in range(1, g.n - C + 2):
        constraints.append(LinearConstraint(f"size_{i}", i, i + C - 1, ">=", 1))
    for j, (a, b) in enumerate(g.cliques, start=1):
        constraints.append(LinearConstraint(f"clique_{j}", a, b - 1, "<=", -1, with_lambda=True))
    return IlpModel(g.n, C, tuple(constraints))


def _format_terms(names):
    lines = []
    for start in range(0, len(names), TERMS_PER_LINE):
        lines.append(" + ".join(names[start:start + TERMS_PER_LINE]))
    return lines


def emit_ilp(g, capacity):
    """Текст модели в формате CPLEX LP."""
    model = build_ilp(g, capacity)
    lines = [
        f"\\ component coloring block partition: n={g.n}, C={capacity}, cliques={len(g.cliques)}",
        "Minimize",
        " obj: lam",
        "Subject To",
    ]
    for con in model.constraints:
        names = [f"x{j}" for j in range(con.lo, con.hi + 1)]
        body = _format_terms(names) or [""]
        if con.with_lambda:
            body[-1] = (body[-1] + " - lam") if body[-1] else "- lam"
        lines.append(f" {con.name}: {body[0]}")
        lines.extend(f"   + {part}" for part in body[1:])
        lines[-1] += f" {con.sense} {con.rhs}"
    lines.append("Binary")
    lines.extend(f" {chunk}" for chunk in _chunks([f"x{j}" for j in range(1, g.n + 1)]))
    lines.append("General")
    lines.append(" lam")
    lines.append("End")
    return "\n".join(lines) + "\n"


def _chunks(names):
    for start in range(0, len(names), TERMS_PER_LINE):
        yield " ".join(names[start:start + TERMS_PER_LINE])


def parse_fractional_solution(text, n):
    """Строки `j value` (отсутствующие x_j равны 0) и обязательная `lambda value`."""
    x = [Fraction(0)] * (n + 1)
    lam = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InstanceParseError(f"ожидалось 'j value' или 'lambda value', получено: '{line}'", line_no)
        try:
            value = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise InstanceParseError(f"не число: '{parts[1]}'", line_no) from None
        if parts[0] in ("lambda", "lam"):
            lam = value
            continue
        try:
            j = int(parts[0])
        except ValueError:
            raise InstanceParseError(f"неизвестная переменная '{parts[0]}'", line_no) from None
        if not 1 <= j <= n:
            raise InstanceParseError(f"индекс {j} вне диапазона 1..{n}", line_no)
        x[j] = value
    if lam is None:
        raise InstanceParseError("в решении нет строки 'lambda value'")
    return FractionalSolution(tuple(x), lam)


def solution_from_partition(g, partition):
    x = [Fraction(0)] * (g.n + 1)
    for _, v in partition.blocks:
        x[v] = Fraction(1)
    return FractionalSolution(tuple(x), Fraction(partition.lam))


def _prefix(x):
    y = [Fraction(0)] * len(x)
    for j in range(1, len(x)):
        y[j] = y[j - 1] + x[j]
    return y


def check_feasible(sol, g, capacity):
    """Все нарушенные ограничения LpPart с зазором (насколько не хватило)."""
    report = FeasibilityReport()
    if sol.n != g.n:
        report.violations.append(Violation("dimension", Fraction(sol.n), Fraction(g.n), Fraction(abs(sol.n - g.n))))
        return report
    for j in range(1, g.n + 1):
        if sol.x[j] < 0:
            report.violations.append(Violation(f"bound_{j}", sol.x[j], Fraction(0), -sol.x[j]))
        elif sol.x[j] > 1:
            report.violations.append(Violation(f"bound_{j}", sol.x[j], Fraction(1), sol.x[j] - 1))

    y = _prefix(sol.x)
    for con in build_ilp(g, capacity).constraints:
        lhs = y[con.hi] - y[con.lo - 1] if con.hi >= con.lo else Fraction(0)
        if con.with_lambda:
            lhs -= sol.lam
        if con.sense == "=" and lhs != con.rhs:
            report.violations.append(Violation(con.name, lhs, Fraction(con.rhs), abs(lhs - con.rhs)))
        elif con.sense == ">=" and lhs < con.rhs:
            report.violations.append(Violation(con.name, lhs, Fraction(con.rhs), con.rhs - lhs))
        elif con.sense == "<=" and lhs > con.rhs:
            report.violations.append(Violation(con.name, lhs, Fraction(con.rhs), lhs - con.rhs))
    return report


def round_fractional(sol, g, capacity):
    """
    x̄_j = 1 ровно когда ⌈y_{j−1}⌉ ≠ ⌈y_j⌉, где y - префиксные суммы x; λ̄ = ⌊λ⌋.

    При дробном λ клика может пересечь ⌈λ⌉ блоков; тогда берётся λ̄ = ⌈λ⌉,
    это всегда допустимо. Результат перепроверяется check_feasible.
    """
    report = check_feasible(sol, g, capacity)
    if not report.ok:
        raise InfeasibleInputError(report.violations)

    y = _prefix(sol.x)
    xbar = [0] * (g.n + 1)
    for j in range(1, g.n + 1):
        if math.ceil(y[j - 1]) != math.ceil(y[j]):
            xbar[j] = 1

    lam_bar = math.floor(sol.lam)
    ends = _prefix(xbar)
    needed = 1 + max(ends[b - 1] - ends[a - 1] for a, b in g.cliques)
    if needed > lam_bar:
        LOGGER.warning("округление: ⌊λ⌋=%d мало, клика пересекает %d блоков; берём ⌈λ⌉", lam_bar, needed)
        lam_bar = math.ceil(sol.lam)

    rounded = RoundedSolution(tuple(xbar), lam_bar)
    recheck = check_feasible(FractionalSolution(tuple(Fraction(v) for v in xbar), Fraction(lam_bar)), g, capacity)
    if not recheck.ok:
        raise PostconditionError(f"округлённое решение недопустимо: {recheck.violations[0]}")
    return rounded


def rounded_to_blocks(rounded):
    blocks = []
    u = 1
    for v in rounded.block_ends():
        blocks.append((u, v))
        u = v + 1
    return blocks


def ilp_bruteforce(g, capacity, guard=ILP_BRUTEFORCE_GUARD):
    """Оптимум IlpPart полным перебором x; возвращает (λ, x)."""
    if g.n > guard:
        raise SizeGuardError(g.n, guard)
    fixed = {hi for _, hi in g.components}
    free = [j for j in range(1, g.n + 1) if j not in fixed]
    best = None
    for bits in itertools.product((0, 1), repeat=len(free)):
        x = [0] * (g.n + 1)
        for j in fixed:
            x[j] = 1
        for j, bit in zip(free, bits):
            x[j] = bit
        ends = _prefix(x)
        if any(ends[i + capacity - 1] - ends[i - 1] < 1 for i in range(1, g.n - capacity + 2)):
            continue
        lam = int(1 + max(ends[b - 1] - ends[a - 1] for a, b in g.cliques))
        if best is None or lam < best[0]:
            best = (lam, tuple(x))
    return best
