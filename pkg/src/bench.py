# src/bench.py (замеры масштабирования с логированием в MLflow)
"""
Замеры времени решателей на растущих семействах экземпляров.

random       - solve_unweighted на случайных PIG (ожидается показатель ≈ 1);
adversarial  - split_mark на семействе с t² + t + 1 FB (ожидается ≈ 2).
Показатель степени - наклон прямой в логарифмических осях (numpy.polyfit).
"""
import argparse
import csv
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import mlflow
import numpy as np
from tqdm import tqdm

from partition_unweighted import solve_unweighted
from pig_core import build_canonical
from utils.generators import adversarial_instance, random_pig_instance
from weighted_split import split_mark, z_of

FAMILIES = ("random", "adversarial")
DEFAULT_SIZES = (10_000, 30_000, 100_000, 300_000, 1_000_000)
DEFAULT_T_VALUES = (50, 100, 200, 400)


@dataclass
class BenchRow:
    family: str
    param: int
    n: int
    n_expanded: int
    capacity: int
    seconds: float
    lam: int = 0
    fb_count: int = 0
    fb_expected: int = 0


def best_time(fn, repeats):
    """Лучшее из repeats измерений и результат последнего вызова."""
    best = None
    result = None
    for _ in range(max(1, repeats)):
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def bench_random(sizes, capacity, repeats, seed):
    rng = np.random.default_rng(seed)
    rows = []
    for n in tqdm(sizes, desc="random: solve_unweighted"):
        g = build_canonical(random_pig_instance(n, rng, max_gap=3, max_length=12, shuffle=False))
        seconds, partition = best_time(lambda: solve_unweighted(g, capacity), repeats)
        rows.append(BenchRow("random", n, n, n, capacity, seconds, lam=partition.lam))
    return rows


def bench_adversarial(t_values, repeats):
    rows = []
    for t in tqdm(t_values, desc="adversarial: split_mark"):
        inst, capacity = adversarial_instance(t)
        g = build_canonical(inst)
        seconds, fb = best_time(lambda: split_mark(g, capacity), repeats)
        rows.append(BenchRow(
            "adversarial", t, g.n, z_of(g).n_expanded, capacity, seconds,
            fb_count=len(fb), fb_expected=t * t + t + 1,
        ))
    return rows


def fit_exponent(rows):
    """Наклон log(время) от log(n); None, если точек меньше двух."""
    points = [(r.n, r.seconds) for r in rows if r.seconds > 0]
    if len(points) < 2:
        return None
    xs, ys = np.log(np.array(points, dtype=float)).T
    return float(np.polyfit(xs, ys, 1)[0])


def write_csv(rows, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(asdict(rows[0])))
        writer.writeheader()
        writer.writerows(asdict(r) for r in rows)


def format_table(rows, exponent):
    lines = [f"{'param':>9} {'n':>9} {'n_exp':>10} {'C':>4} {'сек':>10} {'λ':>4} {'FB':>8} {'t²+t+1':>8}"]
    for r in rows:
        lines.append(
            f"{r.param:>9} {r.n:>9} {r.n_expanded:>10} {r.capacity:>4} {r.seconds:>10.4f} "
            f"{r.lam or '-':>4} {r.fb_count or '-':>8} {r.fb_expected or '-':>8}"
        )
    lines.append(f"показатель степени: {exponent:.3f}" if exponent is not None else "показатель степени: недостаточно точек")
    return "\n".join(lines)


def log_to_mlflow(rows, exponent, params, csv_path, tracking_uri, experiment_name):
    mlflow.set_tracking_uri(tracking_uri)
    mlflow.set_experiment(experiment_name)
    with mlflow.start_run() as run:
        print(f"MLflow Run ID: {run.info.run_id}", file=sys.stderr)
        mlflow.log_params(params)
        for r in rows:
            mlflow.log_metric("seconds", r.seconds, step=r.n)
            if r.family == "adversarial":
                mlflow.log_metric("fb_count", r.fb_count, step=r.n)
        if exponent is not None:
            mlflow.log_metric("exponent", exponent)
        if csv_path and Path(csv_path).exists():
            mlflow.log_artifact(str(csv_path), "bench")


def run_bench(family, sizes=DEFAULT_SIZES, t_values=DEFAULT_T_VALUES, capacity=3, repeats=3, seed=0,
              csv_path=None, use_mlflow=False, tracking_uri="http://mlflow-server:5000",
              experiment_name="Component Coloring Bench"):
    """Прогоняет семейство и возвращает словарь со строками таблицы и показателем степени."""
    if family == "random":
        rows = bench_random(sizes, capacity, repeats, seed)
    elif family == "adversarial":
        rows = bench_adversarial(t_values, repeats)
    else:
        raise ValueError(f"неизвестное семейство '{family}', ожидалось одно из {FAMILIES}")
    exponent = fit_exponent(rows)
    if csv_path:
        write_csv(rows, csv_path)
    if use_mlflow:
        params = {"family": family, "capacity": capacity, "repeats": repeats, "seed": seed,
                  "sizes": list(sizes) if family == "random" else list(t_values)}
        log_to_mlflow(rows, exponent, params, csv_path, tracking_uri, experiment_name)
    return {
        "family": family,
        "exponent": exponent,
        "rows": [asdict(r) for r in rows],
        "fb_count_ok": all(r.fb_count == r.fb_expected for r in rows) if family == "adversarial" else None,
        "table": format_table(rows, exponent),
    }


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description="Замеры времени решателей компонентной раскраски.")
    parser.add_argument('--family', choices=FAMILIES, default='random', help='Семейство экземпляров.')
    parser.add_argument('--sizes', type=int, nargs='+', default=list(DEFAULT_SIZES), help='Размеры n для семейства random.')
    parser.add_argument('--t', dest='t_values', type=int, nargs='+', default=list(DEFAULT_T_VALUES), help='Значения t для семейства adversarial.')
    parser.add_argument('--capacity', type=int, default=3, help='Ёмкость C для семейства random.')
    parser.add_argument('--repeats', type=int, default=3, help='Число повторов, берётся лучшее время.')
    parser.add_argument('--seed', type=int, default=0, help='Seed генератора.')
    parser.add_argument('--output_csv', type=str, default=None, help='Куда сохранить таблицу в CSV.')
    parser.add_argument('--mlflow', action='store_true', help='Логировать запуск в MLflow.')
    parser.add_argument('--mlflow_experiment_name', type=str, default='Component Coloring Bench', help='Имя эксперимента в MLflow.')
    args = parser.parse_args()

    if args.capacity < 1:
        print("[ОШИБКА] Ёмкость C должна быть не меньше 1", file=sys.stderr)
        sys.exit(1)
    summary = run_bench(
        args.family, args.sizes, args.t_values, args.capacity, args.repeats, args.seed,
        csv_path=args.output_csv, use_mlflow=args.mlflow, experiment_name=args.mlflow_experiment_name,
    )
    print(summary["table"])
