# src/lighttrail.py
"""
Планирование световых трасс (light-trails) в оптической WDM-сети на пути.

Запрос src → dst занимает каналы src..dst−1 и переводится в замкнутый
интервал [2·src, 2·dst − 1]: два запроса пересекаются ровно тогда, когда у
них есть общий канал, общий процессор на конце пересечением не считается.
Цвет раскраски задаёт длину волны, а хромон задаёт трассу с выключенными
затворами на концах.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from exceptions import InstanceParseError, WeightTooLargeError
from partition_unweighted import partition_to_coloring, solve_unweighted
from pig_core import IntervalInstance, IntervalItem, build_canonical
from verify_oracle import COVERAGE, SIZE, WEIGHT, ValidationReport
from weighted_split import solve_split, two_approx_nonsplit

LOGGER = logging.getLogger(__name__)

MODES = ("unweighted", "splittable", "nonsplittable")

SPAN = "span"
LINK_OVERLAP = "link-overlap"
SHUTTER = "shutter"


@dataclass(frozen=True)
class TransmissionRequest:
    id: str
    src: int
    dst: int
    bandwidth: int = 1


@dataclass
class Trail:
    span: tuple[int, int]
    requests: list  # пары (id запроса, обслуженная полоса)
    load: int


@dataclass
class LightTrailPlan:
    mode: str
    capacity: int
    wavelengths: list = field(default_factory=list)  # wavelengths[c - 1] - трассы длины волны c
    shutters: list = field(default_factory=list)     # выключенные процессоры по длинам волн
    congestion: int = 0

    @property
    def lam(self):
        return len(self.wavelengths)


def parse_requests(text):
    """Строки `id src dst [bandwidth]`; src > dst меняются местами."""
    reqs = []
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise InstanceParseError(f"ожидалось 'id src dst [bandwidth]', получено: '{line}'", line_no)
        try:
            src, dst = int(parts[1]), int(parts[2])
            bandwidth = int(parts[3]) if len(parts) == 4 else 1
        except ValueError:
            raise InstanceParseError("процессоры и полоса должны быть целыми числами", line_no) from None
        if parts[0] in seen:
            raise InstanceParseError(f"повторный идентификатор запроса '{parts[0]}'", line_no)
        if src == dst:
            raise InstanceParseError(f"запрос '{parts[0]}' начинается и кончается в процессоре {src}", line_no)
        if min(src, dst) < 0 or bandwidth < 1:
            raise InstanceParseError(f"запрос '{parts[0]}': отрицательный процессор или полоса меньше 1", line_no)
        if src > dst:
            src, dst = dst, src
        seen.add(parts[0])
        reqs.append(TransmissionRequest(parts[0], src, dst, bandwidth))
    if not reqs:
        raise InstanceParseError("файл не содержит ни одного запроса")
    return reqs


def read_requests(path):
    return parse_requests(Path(path).read_text(encoding="utf-8"))


def requests_to_intervals(reqs, capacity, unweighted=False):
    items = []
    for r in reqs:
        if r.bandwidth > capacity:
            raise WeightTooLargeError(r.id, r.bandwidth, capacity)
        items.append(IntervalItem(r.id, 2 * r.src, 2 * r.dst - 1, 1 if unweighted else r.bandwidth))
    return IntervalInstance(tuple(items))


def congestion(reqs, unweighted=False):
    """Наибольшая суммарная полоса (или число запросов) через один канал."""
    srcs = np.array([r.src for r in reqs], dtype=np.int64)
    dsts = np.array([r.dst for r in reqs], dtype=np.int64)
    weights = np.ones(len(reqs), dtype=np.int64) if unweighted else np.array([r.bandwidth for r in reqs], dtype=np.int64)
    lo = int(srcs.min())
    delta = np.zeros(int(dsts.max()) - lo + 1, dtype=np.int64)
    np.add.at(delta, srcs - lo, weights)
    np.add.at(delta, dsts - lo, -weights)
    return int(np.cumsum(delta).max())


def _pieces(g, mode, capacity):
    """Тройки (вершина, цвет, количество) и λ для выбранного режима."""
    if mode == "splittable":
        sc = solve_split(g, capacity)
        return [(v, c, a) for v in range(1, g.n + 1) for c, a in sc.assignment[v]], sc.lam
    if mode == "nonsplittable":
        result = two_approx_nonsplit(g, capacity)
        coloring = result.coloring
    else:
        coloring = partition_to_coloring(solve_unweighted(g, capacity), g)
    return [(v, coloring.color[v], g.weights[v]) for v in range(1, g.n + 1)], coloring.lam


def schedule(reqs, capacity, mode="unweighted"):
    """Длина волны на цвет, трасса на хромон, затворы на концах трасс."""
    if mode not in MODES:
        raise ValueError(f"неизвестный режим '{mode}', ожидался один из {MODES}")
    by_id = {r.id: r for r in reqs}
    unweighted = mode == "unweighted"
    g = build_canonical(requests_to_intervals(reqs, capacity, unweighted=unweighted))
    pieces, lam = _pieces(g, mode, capacity)

    plan = LightTrailPlan(mode, capacity, congestion=congestion(reqs, unweighted))
    last = {}
    chromons = {c: [] for c in range(1, lam + 1)}
    for v, c, amount in pieces:
        if c in last and g.is_edge(last[c], v):
            chromons[c][-1].append((v, amount))
        else:
            chromons[c].append([(v, amount)])
        last[c] = v

    for c in range(1, lam + 1):
        trails = []
        for chromon in chromons[c]:
            served = [(g.vertex_id(v), by_id[g.vertex_id(v)].bandwidth if unweighted else a) for v, a in chromon]
            span = (
                min(by_id[rid].src for rid, _ in served),
                max(by_id[rid].dst for rid, _ in served),
            )
            load = len(served) if unweighted else sum(a for _, a in served)
            trails.append(Trail(span, served, load))
        plan.wavelengths.append(trails)
        plan.shutters.append(sorted({p for t in trails for p in t.span}))
    LOGGER.debug("schedule: %d запросов, режим %s, длин волн %d", len(reqs), mode, plan.lam)
    return plan


def validate_plan(plan, reqs, capacity):
    """Проверяет трассы, затворы, нагрузку и полное обслуживание запросов."""
    report = ValidationReport()
    by_id = {r.id: r for r in reqs}
    served = {r.id: 0 for r in reqs}
    unweighted = plan.mode == "unweighted"

    for c, trails in enumerate(plan.wavelengths, start=1):
        for trail in trails:
            for rid, amount in trail.requests:
                if rid not in by_id:
                    report.add(COVERAGE, (c, "неизвестный запрос", rid))
                    continue
                served[rid] += amount
            known = [by_id[rid] for rid, _ in trail.requests if rid in by_id]
            if not known:
                report.add(SPAN, (c, trail.span, "пустая трасса"))
                continue
            if trail.span != (min(r.src for r in known), max(r.dst for r in known)):
                report.add(SPAN, (c, trail.span))
            # Каналы запросов трассы должны покрывать её без разрывов
            reach = None
            for r in sorted(known, key=lambda r: r.src):
                if reach is not None and r.src >= reach:
                    report.add(SPAN, (c, trail.span, "разрыв", reach))
                reach = r.dst if reach is None else max(reach, r.dst)
            expected = len(trail.requests) if unweighted else sum(a for _, a in trail.requests)
            if trail.load != expected or trail.load > capacity:
                report.add(SIZE if unweighted else WEIGHT, (c, trail.span, trail.load))

        spans = sorted(t.span for t in trails)
        for (a1, b1), (a2, b2) in zip(spans, spans[1:]):
            if a2 < b1:
                report.add(LINK_OVERLAP, (c, (a1, b1), (a2, b2)))
        expected_shutters = sorted({p for t in trails for p in t.span})
        shutters = plan.shutters[c - 1] if c - 1 < len(plan.shutters) else []
        if sorted(shutters) != expected_shutters:
            report.add(SHUTTER, (c, list(shutters), expected_shutters))

    for rid, total in served.items():
        if total != by_id[rid].bandwidth:
            report.add(COVERAGE, (rid, total, by_id[rid].bandwidth))
    return report


def plan_to_dict(plan):
    return {
        "mode": plan.mode,
        "capacity": plan.capacity,
        "lambda": plan.lam,
        "congestion": plan.congestion,
        "wavelengths": [
            {
                "wavelength": c,
                "trails": [
                    {"span": list(t.span), "requests": [[rid, a] for rid, a in t.requests], "load": t.load}
                    for t in trails
                ],
                "shutters_off": list(plan.shutters[c - 1]),
            }
            for c, trails in enumerate(plan.wavelengths, start=1)
        ],
    }


def render_plan(plan):
    """ASCII-схема: строка на длину волны, '|' - выключенный затвор, '=' - канал трассы."""
    spans = [t.span for trails in plan.wavelengths for t in trails]
    lo = min(a for a, _ in spans)
    hi = max(b for _, b in spans)
    width = 2 * (hi - lo) + 1
    label = max(len(f"λ{plan.lam}"), 3)
    header = [" "] * width
    for p in range(lo, hi + 1):
        header[2 * (p - lo)] = str(p % 10)
    lines = [f"{'':<{label}} {''.join(header)}"]
    for c, trails in enumerate(plan.wavelengths, start=1):
        row = ["."] * width
        for p in range(lo, hi + 1):
            row[2 * (p - lo)] = "o"
        for t in trails:
            a, b = t.span
            for pos in range(2 * (a - lo) + 1, 2 * (b - lo)):
                row[pos] = "="
            row[2 * (a - lo)] = "|"
            row[2 * (b - lo)] = "|"
        lines.append(f"{f'λ{c}':<{label}} {''.join(row)}")
    lines.append("")
    for c, trails in enumerate(plan.wavelengths, start=1):
        for t in trails:
            reqs = ", ".join(f"{rid}({a})" for rid, a in t.requests)
            lines.append(f"λ{c} [{t.span[0]}, {t.span[1]}] нагрузка {t.load}/{plan.capacity}: {reqs}")
    return "\n".join(lines) + "\n"
