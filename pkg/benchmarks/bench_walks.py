#!/usr/bin/env python3
"""Compare the compiled and pure-Python walk-enumeration kernels.

Usage: python benchmarks/bench_walks.py [--repeat N]

Generates a spread of random digraphs, enumerates all closed walks of
several lengths with both kernels, checks the outputs agree, and prints
per-case timings with the speedup.
"""

from __future__ import annotations

import argparse
import random
import time

from cyclekit import _walks_py
from cyclekit.digraph import make_digraph

try:
    from cyclekit import _walks_c
except ImportError:
    _walks_c = None


def random_digraph(rng, vertices, density):
    edges = [(u, v) for u in range(vertices) for v in range(vertices)
             if rng.random() < density]
    return make_digraph(vertices, edges)


def best_time(impl, successors, length, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        started = time.perf_counter()
        result = impl(successors, length, None)
        best = min(best, time.perf_counter() - started)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _walks_c is None:
        print("compiled kernel not built; showing pure-Python timings only")

    rng = random.Random(0)
    cases = [
        (6, 0.4, 8),
        (8, 0.4, 8),
        (8, 0.5, 9),
        (10, 0.35, 9),
        (12, 0.3, 10),
    ]
    header = f"{'vertices':>8} {'density':>8} {'length':>7} {'walks':>9} " \
             f"{'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for vertices, density, length in cases:
        g = random_digraph(rng, vertices, density)
        successors = g.successors()
        pure_t, pure_out = best_time(
            _walks_py.enumerate_closed_walks, successors, length, args.repeat)
        if _walks_c is not None:
            fast_t, fast_out = best_time(
                _walks_c.enumerate_closed_walks, successors, length,
                args.repeat)
            assert fast_out == pure_out, "kernel outputs differ"
            print(f"{vertices:>8} {density:>8.2f} {length:>7} "
                  f"{len(pure_out):>9} {pure_t:>10.4f} {fast_t:>13.4f} "
                  f"{pure_t / fast_t:>7.1f}x")
        else:
            print(f"{vertices:>8} {density:>8.2f} {length:>7} "
                  f"{len(pure_out):>9} {pure_t:>10.4f} {'-':>13} {'-':>8}")


if __name__ == "__main__":
    main()
