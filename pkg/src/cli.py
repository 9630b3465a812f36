# src/cli.py
"""
Командная строка решателя компонентной раскраски.

Команды: solve, solve-split, solve-weighted, oracle, verify, lp-emit,
lp-round, reduce, schedule, bench. Параметры берутся из config.yaml и
перекрываются флагами. Коды выхода: 0 успех; 1 ошибка разбора, чтения или
конфигурации; 2 неподдерживаемый или недопустимый вход; 3 превышен предел
перебора; 4 проверка не пройдена.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import product
from pathlib import Path

import yaml
from tqdm import tqdm

from bench import run_bench
from exceptions import (
    CertificateError,
    ComponentColoringError,
    ConfigError,
    InfeasibleInputError,
    InstanceParseError,
    NotProperError,
    PostconditionError,
    SizeGuardError,
    TriviallyUnsatisfiableError,
    WeightTooLargeError,
)
from lighttrail import MODES, plan_to_dict, read_requests, render_plan, schedule, validate_plan
from lp_relaxation import emit_ilp, parse_fractional_solution, round_fractional, rounded_to_blocks
from partition_unweighted import partition_report, partition_to_coloring, solve_unweighted
from pig_core import build_canonical, read_instance
from splitgraph_npc import (
    decide_cp_bruteforce,
    parse_split_graph,
    parse_sp,
    read_cnf,
    run_reduction,
    sp_bruteforce,
    sp_grouping_valid,
    sp_to_cp,
    split_upper_bound,
)
from utils.generators import all_cnfs, enumerate_rmn_profiles
from verify_oracle import (
    WEIGHT,
    brute_min_colors,
    brute_min_lambda_block,
    brute_min_lambda_general,
    check_profile,
    check_weighted_profile,
    pig_graph,
    validate,
    validate_split_coloring,
)
from weighted_split import SplitColoring, expand_weights, solve_split, two_approx_nonsplit

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2
EXIT_GUARD = 3
EXIT_INVALID = 4

DEFAULT_CONFIG_PATH = "config.yaml"
DEFAULT_GUARDS = {"block_oracle": 14, "general_oracle": 9, "cp_oracle": 14, "coloring_oracle": 8}
# Выше этих значений перебор не закончится за разумное время
GUARD_LIMITS = {"block_oracle": 16, "general_oracle": 11, "cp_oracle": 16, "coloring_oracle": 10}
DEFAULTS = {
    "capacity": None,
    "format": "text",
    "mode": "unweighted",
    "seed": 0,
    "workers": 4,
    "guards": DEFAULT_GUARDS,
    "bench": {"family": "random", "sizes": [10_000, 100_000, 1_000_000], "repeats": 3, "t_values": [50, 100, 200, 400]},
    "mlflow": {"tracking_uri": "http://mlflow-server:5000", "experiment_name": "Component Coloring Bench"},
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple = ()
    capacity: int | None = None
    mode: str = "unweighted"
    fmt: str = "text"
    seed: int = 0
    workers: int = 4
    verbose: bool = False
    guards: dict = field(default_factory=lambda: dict(DEFAULT_GUARDS))
    bench: dict = field(default_factory=dict)
    mlflow: dict = field(default_factory=dict)


def exit_code_for(exc):
    if isinstance(exc, SizeGuardError):
        return EXIT_GUARD
    if isinstance(exc, (WeightTooLargeError, NotProperError, InfeasibleInputError, TriviallyUnsatisfiableError)):
        return EXIT_UNSUPPORTED
    if isinstance(exc, (PostconditionError, CertificateError)):
        return EXIT_INVALID
    return EXIT_INPUT


def load_config(path=None):
    """Читает config.yaml поверх значений по умолчанию; отсутствие файла по умолчанию не ошибка."""
    config = {key: (dict(value) if isinstance(value, dict) else value) for key, value in DEFAULTS.items()}
    config_path = Path(path or DEFAULT_CONFIG_PATH)
    if not config_path.exists():
        if path is not None:
            raise ConfigError(f"файл конфигурации не найден: {config_path}")
        return config
    try:
        loaded = yaml.safe_load(config_path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"не удалось разобрать {config_path}: {e}") from None
    if not isinstance(loaded, dict):
        raise ConfigError(f"{config_path}: ожидался словарь верхнего уровня")
    unknown = set(loaded) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"{config_path}: неизвестные ключи {sorted(unknown)}")
    for key, value in loaded.items():
        if isinstance(config[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{config_path}: ключ '{key}' должен быть словарём")
            config[key].update(value)
        else:
            config[key] = value
    return config


def _collect_inputs(args):
    if getattr(args, "input_file", None):
        return (Path(args.input_file),)
    if getattr(args, "input_dir", None):
        directory = Path(args.input_dir)
        if not directory.is_dir():
            raise ConfigError(f"директория не найдена: {directory}")
        return tuple(sorted(p for p in directory.iterdir() if p.is_file() and not p.name.startswith(".")))
    return ()


def build_run_config(args):
    config = load_config(getattr(args, "config", None))
    for key in ("capacity", "mode", "seed", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    if getattr(args, "format", None):
        config["format"] = args.format
    if getattr(args, "guard", None) is not None:
        config["guards"] = {name: args.guard for name in config["guards"]}

    capacity = config["capacity"]
    if capacity is not None and (not isinstance(capacity, int) or capacity < 1):
        raise ConfigError(f"ёмкость C должна быть целым числом не меньше 1, получено {capacity}")
    if config["format"] not in ("json", "text"):
        raise ConfigError(f"формат вывода должен быть json или text, получено {config['format']}")
    if config["mode"] not in MODES:
        raise ConfigError(f"режим должен быть одним из {MODES}, получено {config['mode']}")
    for name, value in config["guards"].items():
        if name not in GUARD_LIMITS:
            raise ConfigError(f"неизвестный предел перебора '{name}'")
        if not isinstance(value, int) or not 1 <= value <= GUARD_LIMITS[name]:
            raise ConfigError(f"предел '{name}'={value} вне допустимого диапазона 1..{GUARD_LIMITS[name]}")
    if not isinstance(config["workers"], int) or config["workers"] < 1:
        raise ConfigError("число процессов workers должно быть не меньше 1")

    return RunConfig(
        command=args.command,
        inputs=_collect_inputs(args),
        capacity=capacity,
        mode=config["mode"],
        fmt=config["format"],
        seed=config["seed"],
        workers=config["workers"],
        verbose=bool(getattr(args, "verbose", False)),
        guards=dict(config["guards"]),
        bench=dict(config["bench"]),
        mlflow=dict(config["mlflow"]),
    )


def _require_capacity(cfg):
    if cfg.capacity is None:
        raise ConfigError("не задана ёмкость C: укажите --capacity или capacity в config.yaml")
    return cfg.capacity


def _require_single_input(cfg):
    if len(cfg.inputs) != 1:
        raise ConfigError("команда принимает ровно один файл --input_file")
    return cfg.inputs[0]


def _violations(report):
    return [{"kind": v.kind, "witness": repr(v.witness)} for v in report.violations]


# --- Обработчики одного файла: возвращают (код, словарь, текст) ---

def handle_solve(path, cfg):
    C = _require_capacity(cfg)
    g = build_canonical(read_instance(path))
    if not g.is_unit_weight:
        LOGGER.warning("%s: веса игнорируются, задача решается как невзвешенная", path)
    partition = solve_unweighted(g, C)
    coloring = partition_to_coloring(partition, g)
    report = validate(g, partition, C)
    colored = validate(g, coloring, C)
    ok = report.ok and colored.ok
    payload = {"file": str(path), **partition_report(g, partition, coloring), "valid": ok,
               "violations": _violations(report) + _violations(colored)}
    text = [f"{path}: λ = {partition.lam}, C = {C}, блоков {len(partition)}"]
    for idx, (u, v) in enumerate(partition.blocks):
        ids = " ".join(g.vertex_id(x) for x in range(u, v + 1))
        text.append(f"  цвет {idx % partition.lam + 1}: {ids}")
    text.append(f"  проверка: {'OK' if ok else 'НАРУШЕНИЯ'}")
    return (EXIT_OK if ok else EXIT_INVALID), payload, "\n".join(text)


def handle_solve_split_graph(path, cfg):
    C = _require_capacity(cfg)
    g = parse_split_graph(Path(path).read_text(encoding="utf-8"))
    bound = split_upper_bound(g, C)
    report = validate(g.normalized(), bound.parts, C, lambda_claim=bound.lam)
    lower = -(-bound.omega // C)
    payload = {"file": str(path), "omega": bound.omega, "lambda": bound.lam, "colors": bound.colors,
               "lower_bound": lower, "parts": bound.parts, "coloring": bound.coloring,
               "valid": report.ok, "violations": _violations(report)}
    if len(g.q) <= cfg.guards["cp_oracle"]:
        payload["lower_bound_attainable"] = decide_cp_bruteforce(g, C, target=lower) is not None
    text = (f"{path}: ω = {bound.omega}, λ = {bound.lam}, цветов {bound.colors}, нижняя оценка {lower}"
            f"\n  проверка: {'OK' if report.ok else 'НАРУШЕНИЯ'}")
    return (EXIT_OK if report.ok else EXIT_INVALID), payload, text


def handle_solve_split(path, cfg):
    C = _require_capacity(cfg)
    g = build_canonical(read_instance(path))
    sc = solve_split(g, C)
    report = validate_split_coloring(g, sc, C)
    payload = {"file": str(path), **sc.to_dict(g), "valid": report.ok, "violations": _violations(report)}
    text = [f"{path}: λ = {sc.lam}, C = {C}"]
    for v in range(1, g.n + 1):
        pieces = ", ".join(f"цвет {c} × {a}" for c, a in sc.assignment[v])
        text.append(f"  {g.vertex_id(v)}: {pieces}")
    text.append(f"  проверка: {'OK' if report.ok else 'НАРУШЕНИЯ'}")
    return (EXIT_OK if report.ok else EXIT_INVALID), payload, "\n".join(text)


def handle_solve_weighted(path, cfg):
    C = _require_capacity(cfg)
    g = build_canonical(read_instance(path))
    result = two_approx_nonsplit(g, C)
    report = validate(g, result.partition, C, measure=WEIGHT)
    payload = {"file": str(path), **partition_report(g, result.partition, result.coloring),
               "split_lambda": result.split_lambda, "ratio": result.ratio,
               "valid": report.ok, "violations": _violations(report)}
    text = [f"{path}: λ = {result.partition.lam}, делимое λ' = {result.split_lambda}, "
            f"отношение {result.ratio:.3f} (≤ 2)"]
    for u, v in result.partition.blocks:
        load = sum(g.weights[x] for x in range(u, v + 1))
        text.append(f"  цвет {result.coloring.color[u]}: {' '.join(g.vertex_id(x) for x in range(u, v + 1))} (вес {load})")
    text.append(f"  проверка: {'OK' if report.ok else 'НАРУШЕНИЯ'}")
    return (EXIT_OK if report.ok else EXIT_INVALID), payload, "\n".join(text)


def handle_schedule(path, cfg):
    C = _require_capacity(cfg)
    reqs = read_requests(path)
    plan = schedule(reqs, C, cfg.mode)
    report = validate_plan(plan, reqs, C)
    payload = {"file": str(path), **plan_to_dict(plan), "valid": report.ok, "violations": _violations(report)}
    text = f"{path}: длин волн {plan.lam}, перегрузка канала {plan.congestion}\n{render_plan(plan)}"
    text += f"проверка: {'OK' if report.ok else 'НАРУШЕНИЯ'}"
    return (EXIT_OK if report.ok else EXIT_INVALID), payload, text


def handle_oracle(path, cfg):
    C = _require_capacity(cfg)
    g = build_canonical(read_instance(path))
    payload = {"file": str(path), "n": g.n, "capacity": C}
    if g.is_unit_weight:
        payload["solver_lambda"] = solve_unweighted(g, C).lam
        payload["block_oracle"], witness = brute_min_lambda_block(g, C, guard=cfg.guards["block_oracle"])
        payload["block_witness"] = [[g.vertex_id(x) for x in range(u, v + 1)] for u, v in witness]
        if g.n <= cfg.guards["general_oracle"]:
            payload["general_oracle"], _ = brute_min_lambda_general(g, C, guard=cfg.guards["general_oracle"])
        if g.n <= cfg.guards["coloring_oracle"]:
            payload["min_colors"], _ = brute_min_colors(pig_graph(g), C, guard=cfg.guards["coloring_oracle"])
        agree = payload["solver_lambda"] == payload["block_oracle"] == payload.get("general_oracle", payload["block_oracle"])
    else:
        gx = expand_weights(g)
        split_lam = solve_split(g, C).lam
        payload["split_lambda"] = split_lam
        payload["split_oracle"], _ = brute_min_lambda_block(gx, C, guard=cfg.guards["block_oracle"])
        approx = two_approx_nonsplit(g, C)
        payload["nonsplit_lambda"] = approx.partition.lam
        if g.n <= cfg.guards["general_oracle"]:
            payload["nonsplit_oracle"], _ = brute_min_lambda_general(g, C, guard=cfg.guards["general_oracle"], measure=WEIGHT)
        agree = split_lam == payload["split_oracle"] and approx.partition.lam <= 2 * payload.get("nonsplit_oracle", split_lam)
    payload["agree"] = agree
    text = "\n".join(f"  {key}: {value}" for key, value in payload.items() if key not in ("file", "block_witness"))
    return (EXIT_OK if agree else EXIT_INVALID), payload, f"{path}:\n{text}"


def handle_lp_emit(path, cfg):
    C = _require_capacity(cfg)
    g = build_canonical(read_instance(path))
    model = emit_ilp(g, C)
    return EXIT_OK, {"file": str(path), "model": model}, model.rstrip("\n")


HANDLERS = {
    "solve": handle_solve,
    "solve-split": handle_solve_split,
    "solve-weighted": handle_solve_weighted,
    "schedule": handle_schedule,
    "oracle": handle_oracle,
    "lp-emit": handle_lp_emit,
}


def _run_one(path, cfg, handler_name):
    try:
        return HANDLERS[handler_name](path, cfg)
    except (ComponentColoringError, OSError) as e:
        code = exit_code_for(e)
        return code, {"file": str(path), "error": str(e), "exit_code": code}, f"[ОШИБКА] {path}: {e}"


def run_batch(cfg, handler_name):
    """Файлы обрабатываются независимо; при нескольких файлах - пулом процессов."""
    if not cfg.inputs:
        raise ConfigError("не задан вход: --input_file или --input_dir")
    if len(cfg.inputs) == 1:
        results = [_run_one(cfg.inputs[0], cfg, handler_name)]
    else:
        worker = partial(_run_one, cfg=cfg, handler_name=handler_name)
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(tqdm(pool.map(worker, cfg.inputs), total=len(cfg.inputs), desc=f"{cfg.command}", file=sys.stderr))
    code = max(r[0] for r in results)
    payloads = [r[1] for r in results]
    texts = [r[2] for r in results]
    return code, (payloads[0] if len(payloads) == 1 else payloads), "\n".join(texts)


# --- Команды с особым входом ---

def _claim_to_positions(g, ids_lists):
    pos = {g.vertex_id(i): i for i in range(1, g.n + 1)}
    try:
        return [[pos[rid] for rid in ids] for ids in ids_lists]
    except KeyError as e:
        raise InstanceParseError(f"в утверждении неизвестная вершина {e}") from None


def cmd_verify(cfg, claim_path):
    C = _require_capacity(cfg)
    path = _require_single_input(cfg)
    g = build_canonical(read_instance(path))
    try:
        claim = json.loads(Path(claim_path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InstanceParseError(f"утверждение не является JSON: {e}") from None
    lam = claim.get("lambda")
    measure = WEIGHT if cfg.mode != "unweighted" else "size"
    assignment = claim.get("assignment")

    if isinstance(assignment, dict) and assignment and all(isinstance(v, list) for v in assignment.values()):
        pos = {g.vertex_id(i): i for i in range(1, g.n + 1)}
        padded = [()] * (g.n + 1)
        for rid, pieces in assignment.items():
            if rid not in pos:
                raise InstanceParseError(f"в утверждении неизвестная вершина '{rid}'")
            padded[pos[rid]] = tuple((int(c), int(a)) for c, a in pieces)
        report = validate_split_coloring(g, SplitColoring(tuple(padded), int(lam), None), C)
    elif "block_ids" in claim or "parts" in claim:
        parts = _claim_to_positions(g, claim.get("block_ids") or claim.get("parts"))
        report = validate(g, parts, C, lambda_claim=lam, measure=measure, require_blocks="block_ids" in claim)
    elif isinstance(assignment, dict):
        coloring = {pos: assignment.get(g.vertex_id(pos)) for pos in range(1, g.n + 1)}
        missing = [g.vertex_id(p) for p, c in coloring.items() if c is None]
        if missing:
            raise InstanceParseError(f"в раскраске нет вершин {missing}")
        report = validate(g, coloring, C, lambda_claim=lam, measure=measure)
    else:
        raise InstanceParseError("утверждение должно содержать block_ids, parts или assignment")

    payload = {"file": str(path), "claim": str(claim_path), **report.to_dict()}
    lines = [f"{path}: {'OK' if report.ok else 'НАРУШЕНИЯ'}"]
    lines.extend(f"  {v}" for v in report.violations)
    return (EXIT_OK if report.ok else EXIT_INVALID), payload, "\n".join(lines)


def cmd_lp_round(cfg, solution_path):
    C = _require_capacity(cfg)
    path = _require_single_input(cfg)
    g = build_canonical(read_instance(path))
    sol = parse_fractional_solution(Path(solution_path).read_text(encoding="utf-8"), g.n)
    rounded = round_fractional(sol, g, C)
    blocks = rounded_to_blocks(rounded)
    payload = {"file": str(path), "x": list(rounded.x[1:]), "lambda": rounded.lam,
               "lp_lambda": str(sol.lam), "blocks": [[u, v] for u, v in blocks]}
    text = f"{path}: λ̄ = {rounded.lam} (λ = {sol.lam}), x̄ = {' '.join(map(str, rounded.x[1:]))}"
    return EXIT_OK, payload, text


def _yes_no(flag):
    return "ДА" if flag else "НЕТ"


def _reduction_summary(f, cp_guard):
    report = run_reduction(f, cp_guard=cp_guard)
    return report.consistent, report.to_dict()


def cmd_reduce(cfg, kind, exhaustive=False, max_p=3, max_q=4):
    guard = cfg.guards["cp_oracle"]
    if exhaustive:
        formulas = list(all_cnfs(max_p, max_q))
        worker = partial(_reduction_summary, cp_guard=guard)
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(tqdm(pool.map(worker, formulas, chunksize=64), total=len(formulas), desc="SAT → SP → CP", file=sys.stderr))
        bad = [d for ok, d in results if not ok]
        payload = {"formulas": len(formulas), "inconsistent": bad}
        text = f"формул проверено: {len(formulas)}, расхождений: {len(bad)}"
        return (EXIT_OK if not bad else EXIT_INVALID), payload, text

    path = _require_single_input(cfg)
    if kind == "sp":
        sp = parse_sp(Path(path).read_text(encoding="utf-8"))
        cp = sp_to_cp(sp)
        grouping = sp_bruteforce(sp)
        if grouping is not None and not sp_grouping_valid(sp, grouping):
            raise PostconditionError(f"перебор SP вернул некорректную группировку {grouping}")
        partition = decide_cp_bruteforce(cp.graph, cp.capacity, target=cp.target, guard=guard)
        payload = {"file": str(path), "sp": grouping is not None, "cp": partition is not None,
                   "grouping": [sorted(g) for g in grouping] if grouping else None, "partition": partition}
        text = f"{path}: SP {_yes_no(grouping)}, CP {_yes_no(partition)}"
        return (EXIT_OK if payload["sp"] == payload["cp"] else EXIT_INVALID), payload, text

    f = read_cnf(path)
    report = run_reduction(f, cp_guard=guard)
    if report.trivially_unsat:
        raise TriviallyUnsatisfiableError("формула содержит пустую дизъюнкцию, сведение не строится")
    payload = {"file": str(path), **report.to_dict()}
    text = (f"{path}: SAT {_yes_no(report.sat)}, SP {_yes_no(report.sp_yes)}, CP {_yes_no(report.cp_yes)}"
            f"\n  CP: |Q| = {len(report.cp.graph.q)}, |S| = {len(report.cp.graph.s)}, C = 2, λ = {report.cp.target}"
            f"\n  сертификаты: {'OK' if report.certificates_ok else 'ОШИБКА'}")
    return (EXIT_OK if report.consistent else EXIT_INVALID), payload, text


def cmd_oracle_exhaustive(cfg, max_n, capacities, weighted=False, max_weight=4, nonsplit_limit=7):
    if nonsplit_limit > cfg.guards["general_oracle"]:
        raise ConfigError(f"--nonsplit_limit={nonsplit_limit} больше предела general_oracle={cfg.guards['general_oracle']}")
    jobs = [profile for n in range(1, max_n + 1) for profile in enumerate_rmn_profiles(n)]
    if weighted:
        # один профиль - одна задача: векторы весов перебираются внутри воркера
        worker = partial(_weighted_job, capacities=tuple(capacities), max_weight=max_weight,
                         nonsplit_limit=nonsplit_limit)
        chunksize = 1
        instances = sum(max_weight ** len(profile) for profile in jobs)
    else:
        worker = partial(check_profile, capacities=tuple(capacities), general_limit=cfg.guards["general_oracle"])
        chunksize = 32
        instances = len(jobs)
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        results = list(tqdm(pool.map(worker, jobs, chunksize=chunksize), total=len(jobs), desc="перебор профилей",
                            file=sys.stderr))
    mismatches = [m for batch in results for m in batch]
    payload = {"instances": instances, "capacities": list(capacities), "weighted": weighted, "mismatches": mismatches}
    if weighted:
        payload["max_weight"] = max_weight
        payload["nonsplit_limit"] = nonsplit_limit
    text = f"экземпляров: {instances}, C ∈ {list(capacities)}, расхождений: {len(mismatches)}"
    return (EXIT_OK if not mismatches else EXIT_INVALID), payload, text


def _weighted_job(profile, capacities, max_weight, nonsplit_limit):
    mismatches = []
    for weights in product(range(1, max_weight + 1), repeat=len(profile)):
        mismatches.extend(check_weighted_profile(profile, list(weights), capacities, nonsplit_limit=nonsplit_limit))
    return mismatches


def cmd_bench(cfg, args):
    bench = cfg.bench
    summary = run_bench(
        args.family or bench.get("family", "random"),
        sizes=args.sizes or bench.get("sizes"),
        t_values=args.t_values or bench.get("t_values"),
        capacity=cfg.capacity or 3,
        repeats=args.repeats or bench.get("repeats", 3),
        seed=cfg.seed,
        csv_path=args.output_csv,
        use_mlflow=args.mlflow,
        tracking_uri=cfg.mlflow.get("tracking_uri"),
        experiment_name=cfg.mlflow.get("experiment_name"),
    )
    table = summary.pop("table")
    ok = summary["fb_count_ok"] is not False
    return (EXIT_OK if ok else EXIT_INVALID), summary, table


# --- Разбор аргументов ---

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=None, help='Путь к config.yaml (по умолчанию ./config.yaml, если есть).')
    common.add_argument('--format', choices=('json', 'text'), default=None, help='Формат вывода.')
    common.add_argument('--capacity', type=int, default=None, help='Ёмкость C: наибольший размер (вес) хромона.')
    common.add_argument('--guard', type=int, default=None, help='Предел размера для переборных оракулов.')
    common.add_argument('--workers', type=int, default=None, help='Число процессов для пакетной обработки.')
    common.add_argument('--seed', type=int, default=None, help='Seed генераторов.')
    common.add_argument('--verbose', action='store_true', help='Подробный журнал (DEBUG).')

    def with_input(sub, required=True):
        group = sub.add_mutually_exclusive_group(required=required)
        group.add_argument('--input_file', type=str, help='Файл экземпляра.')
        group.add_argument('--input_dir', type=str, help='Папка с файлами экземпляров.')
        return sub

    parser = argparse.ArgumentParser(description="Компонентная раскраска собственных интервальных и расщепляемых графов.")
    commands = parser.add_subparsers(dest='command', required=True)

    solve = with_input(commands.add_parser('solve', parents=[common], help='Точный невзвешенный решатель.'))
    solve.add_argument('--split_graph', action='store_true', help='Вход - расщепляемый граф: разбиение с λ ≤ ⌈ω/C⌉ + 1.')
    with_input(commands.add_parser('solve-split', parents=[common], help='Делимая взвешенная раскраска.'))
    with_input(commands.add_parser('solve-weighted', parents=[common], help='Неделимая взвешенная 2-аппроксимация.'))

    oracle = with_input(commands.add_parser('oracle', parents=[common], help='Переборные оракулы.'), required=False)
    oracle.add_argument('--exhaustive', action='store_true', help='Перебрать все связные профили rmn.')
    oracle.add_argument('--max_n', type=int, default=12, help='Наибольшее n при полном переборе.')
    oracle.add_argument('--capacities', type=int, nargs='+', default=[1, 2, 3, 4], help='Значения C при полном переборе.')
    oracle.add_argument('--weighted', action='store_true', help='Перебирать ещё и веса 1..--max_weight.')
    oracle.add_argument('--max_weight', type=int, default=4, help='Наибольший вес при взвешенном переборе.')
    oracle.add_argument('--nonsplit_limit', type=int, default=7,
                        help='Наибольшее n, при котором неделимый ответ сверяется с перебором.')

    verify = with_input(commands.add_parser('verify', parents=[common], help='Проверка разбиения или раскраски.'))
    verify.add_argument('--claim', required=True, type=str, help='JSON-вывод одной из команд solve.')
    verify.add_argument('--mode', choices=MODES, default=None, help='Мера частей: unweighted - размер, иначе вес.')

    with_input(commands.add_parser('lp-emit', parents=[common], help='Модель ЦЛП в формате CPLEX LP.'))
    lp_round = with_input(commands.add_parser('lp-round', parents=[common], help='Округление дробного решения.'))
    lp_round.add_argument('--solution', required=True, type=str, help='Файл строк `j value` и `lambda value`.')

    reduce = with_input(commands.add_parser('reduce', parents=[common], help='Сведение SAT → SP → CP.'), required=False)
    reduce.add_argument('--kind', choices=('cnf', 'sp'), default='cnf', help='Тип входного файла.')
    reduce.add_argument('--exhaustive', action='store_true', help='Перебрать все формулы с p ≤ --max_p, q ≤ --max_q.')
    reduce.add_argument('--max_p', type=int, default=3, help='Наибольшее число переменных.')
    reduce.add_argument('--max_q', type=int, default=4, help='Наибольшее число дизъюнкций.')

    sched = with_input(commands.add_parser('schedule', parents=[common], help='План световых трасс по файлу запросов.'))
    sched.add_argument('--mode', choices=MODES, default=None, help='Режим учёта полосы.')

    bench = commands.add_parser('bench', parents=[common], help='Замеры времени.')
    bench.add_argument('--family', choices=('random', 'adversarial'), default=None, help='Семейство экземпляров.')
    bench.add_argument('--sizes', type=int, nargs='+', default=None, help='Размеры n для random.')
    bench.add_argument('--t', dest='t_values', type=int, nargs='+', default=None, help='Значения t для adversarial.')
    bench.add_argument('--repeats', type=int, default=None, help='Число повторов.')
    bench.add_argument('--output_csv', type=str, default=None, help='CSV с таблицей замеров.')
    bench.add_argument('--mlflow', action='store_true', help='Логировать запуск в MLflow.')
    return parser


def _dispatch(cfg, args):
    command = args.command
    if command == "solve" and args.split_graph:
        return _run_split_graphs(cfg)
    if command in ("solve", "solve-split", "solve-weighted", "schedule", "lp-emit"):
        return run_batch(cfg, command)
    if command == "oracle":
        if args.exhaustive:
            return cmd_oracle_exhaustive(cfg, args.max_n, args.capacities, args.weighted, args.max_weight,
                                         args.nonsplit_limit)
        return run_batch(cfg, "oracle")
    if command == "verify":
        return cmd_verify(cfg, args.claim)
    if command == "lp-round":
        return cmd_lp_round(cfg, args.solution)
    if command == "reduce":
        return cmd_reduce(cfg, args.kind, args.exhaustive, args.max_p, args.max_q)
    if command == "bench":
        return cmd_bench(cfg, args)
    raise ConfigError(f"неизвестная команда '{command}'")


def _run_split_graphs(cfg):
    if not cfg.inputs:
        raise ConfigError("не задан вход: --input_file или --input_dir")
    results = []
    for path in cfg.inputs:
        try:
            results.append(handle_solve_split_graph(path, cfg))
        except (ComponentColoringError, OSError) as e:
            code = exit_code_for(e)
            results.append((code, {"file": str(path), "error": str(e), "exit_code": code}, f"[ОШИБКА] {path}: {e}"))
    payloads = [r[1] for r in results]
    return max(r[0] for r in results), (payloads[0] if len(payloads) == 1 else payloads), "\n".join(r[2] for r in results)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = build_run_config(args)
        code, payload, text = _dispatch(cfg, args)
    except (ComponentColoringError, OSError) as e:
        print(f"[ОШИБКА] {e}", file=sys.stderr)
        return exit_code_for(e)

    if cfg.fmt == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(text)
    if code != EXIT_OK:
        print(f"[ОШИБКА] команда {args.command} завершилась с кодом {code}", file=sys.stderr)
    return code


if __name__ == '__main__':
    sys.exit(main())
