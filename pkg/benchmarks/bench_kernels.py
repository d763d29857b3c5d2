"""Benchmark the search kernels: compiled extension vs pure Python.

Runs the hot kernels on a fixed battery — short-vector searches, positive
primitive-embedding searches, and the expensive rank-3 absence proof — once
per backend and prints a timing table.

    python3 benchmarks/bench_kernels.py [--repeat N] [--pure-absence-bound B]

The absence proof enumerates the whole box, so its pure-Python time grows
quickly with the bound; the default keeps the pure run at a few seconds.
"""

from __future__ import annotations

import argparse
import time

from abmirror import kernels

VECTOR_GRAMS = [
    [[2]],
    [[8]],
    [[0, 1], [1, 0]],
    [[2, 1], [1, -2]],
    [[2, 0], [0, -12]],
    [[0, 3], [3, 2]],
    [[2, 1, 0], [1, -2, 1], [0, 1, -4]],
]

EMBED_TARGETS = [
    [[2]],
    [[-6]],
    [[0, 1], [1, 0]],
    [[2, 1], [1, -2]],
    [[0, 3], [3, 2]],
    [[2, 0], [0, -8]],
    [[0, 1, 0], [1, 0, 0], [0, 0, -2]],
    [[0, 1, 0], [1, 0, 0], [0, 0, -6]],
]

ABSENCE_GRAM = [[2, 0, 0], [0, -2, 0], [0, 0, -2]]


def run_vector_battery(bound: int) -> int:
    hits = 0
    for gram in VECTOR_GRAMS:
        for target in range(-8, 9, 2):
            if kernels.find_vector_with_norm(gram, target, bound) is not None:
                hits += 1
            hits += len(kernels.vectors_with_norm(gram, target, bound))
    return hits


def run_embedding_battery(bound: int) -> int:
    found = 0
    for target in EMBED_TARGETS:
        if kernels.find_primitive_embedding(target, bound) is not None:
            found += 1
    return found


def timed(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument(
        "--pure-absence-bound",
        type=int,
        default=5,
        help="box bound for the pure-Python rank-3 absence proof",
    )
    args = parser.parse_args()

    tasks = [
        ("vector battery, bound 4", lambda: run_vector_battery(4)),
        ("vector battery, bound 8", lambda: run_vector_battery(8)),
        ("embeddings, bound 3", lambda: run_embedding_battery(3)),
        ("embeddings, bound 6", lambda: run_embedding_battery(6)),
    ]
    absence_bounds = {"pure": args.pure_absence_bound, "compiled": 8}

    backends = ["pure"]
    if kernels.compiled_available():
        backends.append("compiled")
    else:
        print("note: compiled extension not built; timing the pure twin only")

    results: dict[str, dict[str, float]] = {name: {} for name, _ in tasks}
    absence: dict[str, tuple[int, float]] = {}
    for backend in backends:
        kernels.FORCE_PURE = backend == "pure"
        try:
            for name, fn in tasks:
                results[name][backend] = timed(fn, args.repeat)
            bound = absence_bounds[backend]
            start = time.perf_counter()
            witness = kernels.find_primitive_embedding(ABSENCE_GRAM, bound)
            assert witness is None, "absence case unexpectedly embedded"
            absence[backend] = (bound, time.perf_counter() - start)
        finally:
            kernels.FORCE_PURE = False

    width = max(len(name) for name, _ in tasks) + 28
    print(f"{'task':<{width}}" + "".join(f"{b:>12}" for b in backends))
    for name, _ in tasks:
        row = f"{name:<{width}}"
        for backend in backends:
            row += f"{results[name][backend] * 1000:>10.1f}ms"
        print(row)
    for backend in backends:
        bound, elapsed = absence[backend]
        print(
            f"{'rank-3 absence proof, bound ' + str(bound):<{width}}"
            + f"{elapsed * 1000:>10.1f}ms  ({backend})"
        )
    if len(backends) == 2:
        base = results[tasks[1][0]]["pure"]
        fast = results[tasks[1][0]]["compiled"]
        if fast > 0:
            print(f"\nvector battery speedup at bound 8: {base / fast:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
