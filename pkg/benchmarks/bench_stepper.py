#!/usr/bin/env python3
"""Benchmark the compiled step kernel against the numpy fallback.

The measured walk applies one tiny operator thousands of times, so the
per-step dispatch overhead is what matters; this script reports steps/s
for both backends on the same workload.

Usage: python benchmarks/bench_stepper.py [--steps N] [--repeats R]
"""

import argparse
import importlib.util
import time

import numpy as np

from ihtwalk import _steppy
from ihtwalk.cayley import build_hypercube
from ihtwalk.coins import grover
from ihtwalk.walk import build_unitary, final_projector, random_state


def load_compiled():
    if importlib.util.find_spec("ihtwalk._stepcore") is None:
        return None
    from ihtwalk import _stepcore
    return _stepcore


def bench(impl, psi, coin, perm, rows, steps, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        q, _ = impl.measured_run(psi, coin, perm, rows, steps)
        best = min(best, time.perf_counter() - start)
    return best, float(q.sum())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=5000)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--dimension", type=int, default=5,
                        help="hypercube dimension")
    args = parser.parse_args()

    graph = build_hypercube(args.dimension)
    u = build_unitary(graph, grover(graph.degree))
    proj = final_projector(graph, [graph.n_vertices - 1])
    psi = random_state(u.n, 0)
    coin = np.ascontiguousarray(u.coin.matrix)
    perm = np.ascontiguousarray(u.shift.permutation)
    rows = np.ascontiguousarray(proj.rows)

    print(f"workload: {args.dimension}-cube grover walk, N = {u.n}, "
          f"{args.steps} measured steps, best of {args.repeats}")

    t_py, q_py = bench(_steppy, psi, coin, perm, rows, args.steps,
                       args.repeats)
    print(f"python  backend: {t_py:8.4f} s  ({args.steps / t_py:12.0f} "
          f"steps/s)")

    compiled = load_compiled()
    if compiled is None:
        print("compiled backend: not built (pip install -e . rebuilds it)")
        return
    t_cy, q_cy = bench(compiled, psi, coin, perm, rows, args.steps,
                       args.repeats)
    print(f"compiled backend: {t_cy:8.4f} s  ({args.steps / t_cy:12.0f} "
          f"steps/s)")
    print(f"speedup: {t_py / t_cy:.1f}x")
    if abs(q_py - q_cy) > 1e-10:
        raise SystemExit(f"backends disagree: {q_py!r} vs {q_cy!r}")
    print(f"agreement: total absorbed probability matches "
          f"({q_py:.12f})")


if __name__ == "__main__":
    main()
