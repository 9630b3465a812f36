# src/run_acceptance.py (полный прогон приёмочных проверок)
import os
import subprocess
import sys

# --- КОНФИГУРАЦИЯ ---
INSTANCES_DIR = "data/instances"
WORKED_DIR = "data/worked"
RESULTS_DIR = "data/results"
WORKERS = "8"
PYTHON = sys.executable or "python3"

env = dict(os.environ, PYTHONPATH="src")


def cli(*args, output=None):
    """Запускает src/cli.py; при output сохраняет stdout в файл."""
    command = [PYTHON, "src/cli.py", *args, "--workers", WORKERS]
    if output is None:
        subprocess.run(command, check=True, env=env)
        return
    with open(output, "w", encoding="utf-8") as fh:
        subprocess.run(command, check=True, env=env, stdout=fh)


os.makedirs(RESULTS_DIR, exist_ok=True)

print("--- Запуск приёмочных проверок ---")

try:
    # --- ЭТАП 1: Разобранные примеры и случайные наборы ---
    print(f"\n[ЭТАП 1/7] Генерация экземпляров в {WORKED_DIR} и {INSTANCES_DIR}")
    subprocess.run([PYTHON, "src/utils/make_instances.py", "--output_dir", WORKED_DIR,
                    "--count", "0", "--examples"], check=True, env=env)
    subprocess.run([PYTHON, "src/utils/make_instances.py", "--output_dir", INSTANCES_DIR,
                    "--kind", "pig", "--count", "200", "--n", "200"], check=True, env=env)

    # --- ЭТАП 2: Примеры с известным ответом ---
    print("\n[ЭТАП 2/7] Решение разобранных примеров")
    cli("solve", "--input_file", f"{WORKED_DIR}/lower_bound_gap.txt", "--capacity", "2", "--format", "json",
        output=f"{RESULTS_DIR}/lower_bound_gap.json")
    cli("solve", "--input_file", f"{WORKED_DIR}/simple_part_gap.txt", "--capacity", "3", "--format", "json",
        output=f"{RESULTS_DIR}/simple_part_gap.json")
    cli("solve-weighted", "--input_file", f"{WORKED_DIR}/weighted_overlap.txt", "--capacity", "3")
    cli("schedule", "--input_file", f"{WORKED_DIR}/requests_overlap.txt", "--capacity", "3", "--mode", "splittable")
    cli("reduce", "--input_file", f"{WORKED_DIR}/contradiction.cnf")
    cli("reduce", "--kind", "sp", "--input_file", f"{WORKED_DIR}/pairing.sp")
    cli("solve", "--input_dir", INSTANCES_DIR, "--capacity", "3", "--format", "json",
        output=f"{RESULTS_DIR}/batch.json")
    print("[УСПЕХ] Все решения прошли проверку.")

    # --- ЭТАП 3: Сверка с переборными оракулами ---
    print("\n[ЭТАП 3/7] Полный перебор связных PIG, n ≤ 12, C ∈ {1..4}")
    cli("oracle", "--exhaustive", "--max_n", "12", "--capacities", "1", "2", "3", "4",
        "--format", "json", output=f"{RESULTS_DIR}/oracle_unweighted.json")

    # --- ЭТАП 4: Делимые веса и 2-аппроксимация ---
    print("\n[ЭТАП 4/7] Взвешенный перебор, n ≤ 8, веса ≤ 4, C ∈ {1..4}")
    cli("oracle", "--exhaustive", "--weighted", "--max_n", "8", "--max_weight", "4", "--capacities", "1", "2", "3", "4",
        "--nonsplit_limit", "0", "--format", "json", output=f"{RESULTS_DIR}/oracle_weighted.json")

    # --- ЭТАП 5: Неделимые веса против перебора ---
    print("\n[ЭТАП 5/7] Неделимый перебор, n ≤ 7, веса ≤ 3, C ∈ {1..4}")
    cli("oracle", "--exhaustive", "--weighted", "--max_n", "7", "--max_weight", "3", "--capacities", "1", "2", "3", "4",
        "--nonsplit_limit", "7", "--format", "json", output=f"{RESULTS_DIR}/oracle_nonsplit.json")

    # --- ЭТАП 6: Сведение SAT → SP → CP ---
    print("\n[ЭТАП 6/7] Все формулы с p ≤ 3, q ≤ 4")
    cli("reduce", "--exhaustive", "--max_p", "3", "--max_q", "4", "--format", "json",
        output=f"{RESULTS_DIR}/reduction.json")

    # --- ЭТАП 7: Замеры времени ---
    print("\n[ЭТАП 7/7] Замеры: число FB и показатели степени")
    cli("bench", "--family", "adversarial", "--t", *map(str, range(2, 21)), "--repeats", "1")
    cli("bench", "--family", "adversarial", "--t", "50", "100", "200", "400",
        "--output_csv", f"{RESULTS_DIR}/bench_adversarial.csv")
    cli("bench", "--family", "random", "--capacity", "3", "--sizes", "10000", "100000", "1000000",
        "--output_csv", f"{RESULTS_DIR}/bench_random.csv")

    print("\n--- Приёмочные проверки успешно завершены! ---")
    print(f"Результаты находятся в папке: {RESULTS_DIR}")

except subprocess.CalledProcessError as e:
    print(f"\n[ОШИБКА] Один из этапов завершился с ошибкой: {e}", file=sys.stderr)
    sys.exit(1)
except FileNotFoundError as e:
    print(f"\n[ОШИБКА] Файл не найден: {e}", file=sys.stderr)
    sys.exit(1)
