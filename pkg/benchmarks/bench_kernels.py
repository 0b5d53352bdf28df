#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure fallback paths.

Times triangle enumeration, rooted-K4 link enumeration, and the integer
max-flow kernel on K_n minus a Hamilton cycle, with the backend toggled at
runtime. Usage:

    python benchmarks/bench_kernels.py --n 40 --repeat 3
"""

import argparse
import time
from itertools import combinations

from tridecomp import kernels
from tridecomp.decompose import build_network, initial_weight
from tridecomp.graph import (
    degree_stats,
    enumerate_rooted_k4_links,
    enumerate_triangles,
    from_edge_list,
)
from tridecomp.maxflow import max_flow


def hamilton_complement(n):
    cycle = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    pairs = [p for p in combinations(range(n), 2) if p not in cycle]
    return from_edge_list(pairs, n)


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def run(n, repeat):
    g = hamilton_complement(n)
    stats = degree_stats(g)
    network = build_network(g, initial_weight(g), stats.deficiency)
    arcnet, _ = network.to_arc_network()
    print(f"K{n} minus Hamilton: m={g.m}, links={len(network.links)}")

    tasks = [
        ("triangles", lambda: enumerate_triangles(g)),
        ("k4 links", lambda: enumerate_rooted_k4_links(g)),
        ("max flow", lambda: max_flow(arcnet)),
    ]

    results = {}
    for backend, flag in (("numba", True), ("fallback", False)):
        if flag and not kernels.HAVE_NUMBA:
            print("numba not importable, skipping the jit backend")
            continue
        kernels.set_use_numba(flag)
        for name, fn in tasks:
            fn()  # warm up (jit compile / caches)
            results[(name, backend)] = best_of(repeat, fn)
    kernels.set_use_numba(True)

    print(f"{'kernel':<12} {'numba':>10} {'fallback':>10} {'speedup':>8}")
    for name, _ in tasks:
        jit = results.get((name, "numba"))
        py = results.get((name, "fallback"))
        if jit is None or py is None:
            continue
        print(f"{name:<12} {jit * 1e3:>8.1f}ms {py * 1e3:>8.1f}ms {py / jit:>7.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=40)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    run(args.n, args.repeat)


if __name__ == "__main__":
    main()
