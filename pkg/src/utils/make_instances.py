# src/utils/make_instances.py
import argparse
import os
import sys

import numpy as np
from tqdm import tqdm

from lighttrail import TransmissionRequest
from pig_core import IntervalInstance, serialize_instance
from splitgraph_npc import CNF, SPInstance, serialize_cnf, serialize_sp, serialize_split_graph
from utils.generators import random_cnf, random_pig_instance, random_requests, random_split_graph, random_weights

KINDS = ("pig", "requests", "split", "cnf")

# Разобранные вручную примеры: файл -> содержимое
WORKED_EXAMPLES = {
    "lower_bound_gap.txt": IntervalInstance.from_rows([("1", 1, 3), ("2", 2, 5), ("3", 4, 6)]),
    "simple_part_gap.txt": IntervalInstance.from_rows([
        ("a", 1, 6), ("b", 2, 7), ("c", 3, 10), ("d", 4, 11), ("e", 5, 12), ("f", 8, 13), ("g", 9, 14),
    ]),
    "weighted_overlap.txt": IntervalInstance.from_rows([("v1", 1, 10, 2), ("v2", 2, 11, 2), ("v3", 3, 12, 2)]),
}


def write_worked_examples(output_dir):
    os.makedirs(output_dir, exist_ok=True)
    for name, inst in WORKED_EXAMPLES.items():
        with open(os.path.join(output_dir, name), "w", encoding="utf-8") as fh:
            fh.write(serialize_instance(inst))
    requests = [TransmissionRequest("r1", 0, 2, 2), TransmissionRequest("r2", 1, 3, 2), TransmissionRequest("r3", 1, 3, 2)]
    with open(os.path.join(output_dir, "requests_overlap.txt"), "w", encoding="utf-8") as fh:
        fh.writelines(f"{r.id} {r.src} {r.dst} {r.bandwidth}\n" for r in requests)
    with open(os.path.join(output_dir, "contradiction.cnf"), "w", encoding="utf-8") as fh:
        fh.write(serialize_cnf(CNF(1, ((1,), (-1,)))))
    pairing = SPInstance(("a", "b", "c", "d"), (frozenset({"a", "b"}), frozenset({"c", "d"})))
    with open(os.path.join(output_dir, "pairing.sp"), "w", encoding="utf-8") as fh:
        fh.write(serialize_sp(pairing))
    return len(WORKED_EXAMPLES) + 3


def _render(kind, n, rng, max_weight):
    if kind == "pig":
        weights = random_weights(n, max_weight, rng) if max_weight > 1 else None
        return serialize_instance(random_pig_instance(n, rng, weights=weights)), ".txt"
    if kind == "requests":
        reqs = random_requests(n, rng, max_bandwidth=max_weight)
        return "".join(f"{r.id} {r.src} {r.dst} {r.bandwidth}\n" for r in reqs), ".txt"
    if kind == "split":
        q_size = int(rng.integers(1, n + 1))
        return serialize_split_graph(random_split_graph(q_size, n - q_size + 1, rng)), ".split"
    return serialize_cnf(random_cnf(max(1, n // 3), n, rng)), ".cnf"


def make_instances(output_dir, kind, count, n, seed, max_weight):
    """Пишет count случайных файлов одного вида; имена инстансов нумеруются с нуля."""
    os.makedirs(output_dir, exist_ok=True)
    rng = np.random.default_rng(seed)
    for idx in tqdm(range(count), desc=f"Генерация ({kind})"):
        text, suffix = _render(kind, n, rng, max_weight)
        with open(os.path.join(output_dir, f"{kind}_{idx:05d}{suffix}"), "w", encoding="utf-8") as fh:
            fh.write(text)
    print(f"\n--- Сгенерировано {count} файлов в {output_dir} ---")


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description="Генерация наборов экземпляров для пакетных прогонов.")
    parser.add_argument('--output_dir', required=True, type=str, help='Папка для файлов экземпляров.')
    parser.add_argument('--kind', choices=KINDS, default='pig', help='Вид экземпляров.')
    parser.add_argument('--count', type=int, default=100, help='Сколько файлов сгенерировать.')
    parser.add_argument('--n', type=int, default=50, help='Размер одного экземпляра.')
    parser.add_argument('--seed', type=int, default=0, help='Seed генератора.')
    parser.add_argument('--max_weight', type=int, default=1, help='Наибольший вес (полоса); 1 - невзвешенные.')
    parser.add_argument('--examples', action='store_true', help='Записать также разобранные вручную примеры.')
    args = parser.parse_args()

    if args.count < 0 or args.n < 1 or args.max_weight < 1:
        print("[ОШИБКА] count ≥ 0, n ≥ 1 и max_weight ≥ 1", file=sys.stderr)
        sys.exit(1)
    if args.examples:
        written = write_worked_examples(args.output_dir)
        print(f"Записано разобранных примеров: {written}")
    make_instances(args.output_dir, args.kind, args.count, args.n, args.seed, args.max_weight)
