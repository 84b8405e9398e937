#!/usr/bin/env python3
"""Benchmark the jitted and pure-numpy oracle kernels on fixed workloads.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from prodlabel import Graph
from prodlabel._kernels import HAS_NUMBA, search_first_proper


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_graph(n, m, seed):
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    return Graph(n, sorted(pairs[:m]))


WORKLOADS = [
    ("K5 k=2 exhaustive miss", complete_graph(5), 2),
    ("K6 k=2 exhaustive miss", complete_graph(6), 2),
    ("K6 k=3 witness search", complete_graph(6), 3),
    ("G(12,16) k=2 exhaustive", random_graph(12, 16, seed=7), 2),
    ("G(10,14) k=3 witness search", random_graph(10, 14, seed=3), 3),
]


def time_kernel(g, k, kernel, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = search_first_proper(g, k, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
    return result, best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    kernels = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    if HAS_NUMBA:
        search_first_proper(complete_graph(4), 2, kernel="numba")  # JIT warmup

    print(f"{'workload':<30} {'kernel':<7} {'result':>12} {'best of ' + str(args.repeat):>12}")
    for name, g, k in WORKLOADS:
        reference = None
        times = {}
        for kernel in kernels:
            result, secs = time_kernel(g, k, kernel, args.repeat)
            times[kernel] = secs
            if reference is None:
                reference = result
            elif result != reference:
                raise SystemExit(f"kernel disagreement on {name}: {result} vs {reference}")
            print(f"{name:<30} {kernel:<7} {result:>12} {secs * 1e3:>10.2f}ms")
        if len(times) == 2:
            print(f"{'':<30} numba speedup: {times['numpy'] / times['numba']:.1f}x")
    print("kernels agree on all workloads")


if __name__ == "__main__":
    main()
