"""Shared random generators and independent brute-force oracles.

The oracles here deliberately avoid the library's enumeration kernel and
counting code paths: they recurse over adjacency lists directly, so tests
compare two independent routes to the same numbers.
"""

from __future__ import annotations

import random

from cyclekit import (
    Digraph,
    FiniteDds,
    SemiDirectSpec,
    make_dds,
    make_digraph,
    make_product_function,
    make_semidirect_spec,
)
from cyclekit.wiring import decode_state


def random_digraph(rng: random.Random, max_vertices: int = 8,
                   min_density: float = 0.1, max_density: float = 0.5) -> Digraph:
    n = rng.randint(1, max_vertices)
    p = rng.uniform(min_density, max_density)
    edges = [(u, v) for u in range(n) for v in range(n) if rng.random() < p]
    return make_digraph(n, edges)


def random_dds(rng: random.Random, max_states: int = 8) -> FiniteDds:
    n = rng.randint(1, max_states)
    return make_dds(n, [rng.randrange(n) for _ in range(n)])


def random_semidirect_spec(rng: random.Random, max_base: int = 6,
                           max_env: int = 3, max_fiber: int = 4) -> SemiDirectSpec:
    base = random_dds(rng, max_base)
    env = rng.randint(1, max_env)
    fiber = rng.randint(1, max_fiber)
    drive = [rng.randrange(env) for _ in range(base.size)]
    update = [[rng.randrange(fiber) for _ in range(fiber)] for _ in range(env)]
    return make_semidirect_spec(base, env, drive, fiber, update)


def random_product_function(rng: random.Random, max_arity: int = 4,
                            alphabets=(2, 3)):
    q = rng.choice(alphabets)
    k = rng.randint(1, max_arity)
    names = [f"x{i + 1}" for i in range(k)]
    size = q ** k
    tables = [[rng.randrange(q) for _ in range(size)] for _ in range(k)]
    return make_product_function(q, names, tables)


def random_semidirect_function(rng: random.Random, max_arity: int = 5,
                               alphabets=(2, 3)):
    """A product function assembled blockwise, plus its assembly block size.

    The first m coordinates read only the first m inputs; the rest read a
    random subset of the first block plus the second block.
    """
    q = rng.choice(alphabets)
    k = rng.randint(2, max_arity)
    m = rng.randint(1, k - 1)
    kept = [i for i in range(m) if rng.random() < 0.7]
    names = [f"x{i + 1}" for i in range(k)]
    size = q ** k

    g_tables = [[rng.randrange(q) for _ in range(q ** m)] for _ in range(m)]
    h_inputs = kept + list(range(m, k))
    h_tables = [[rng.randrange(q) for _ in range(q ** len(h_inputs))]
                for _ in range(k - m)]

    tables = []
    for i in range(m):
        table = []
        for s in range(size):
            digits = decode_state(s, k, q)
            index = 0
            for d in digits[:m]:
                index = index * q + d
            table.append(g_tables[i][index])
        tables.append(table)
    for j in range(k - m):
        table = []
        for s in range(size):
            digits = decode_state(s, k, q)
            index = 0
            for pos in h_inputs:
                index = index * q + digits[pos]
            table.append(h_tables[j][index])
        tables.append(table)
    return make_product_function(q, names, tables), m


# --- independent oracles ------------------------------------------------------

def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def closed_walks_oracle(g: Digraph, n: int) -> list[tuple[int, ...]]:
    """All closed n-walks by plain recursion over adjacency lists."""
    succ = g.successors()
    out = []

    def rec(path):
        v = path[-1]
        if len(path) == n:
            if path[0] in succ[v]:
                out.append(tuple(path))
            return
        for w in succ[v]:
            rec(path + [w])

    for start in range(g.vertex_count):
        rec([start])
    return out


def aperiodic_orbit_counts_oracle(g: Digraph, bound: int) -> dict[int, int]:
    """Count rotation classes of aperiodic closed walks, per length."""
    counts = {}
    for n in range(1, bound + 1):
        reps = set()
        for walk in closed_walks_oracle(g, n):
            if any(walk[d:] + walk[:d] == walk for d in _divisors(n)[:-1]):
                continue
            reps.add(min(walk[i:] + walk[:i] for i in range(n)))
        counts[n] = len(reps)
    return counts


def brute_force_cuts(g: Digraph) -> list[tuple[int, ...]]:
    """All predecessor-closed vertex subsets by scanning every coloring."""
    n = g.vertex_count
    out = []
    for mask in range(1 << n):
        inside = {v for v in range(n) if mask >> v & 1}
        if all(u in inside or v not in inside for u, v in g.edges):
            out.append(tuple(sorted(inside)))
    return sorted(out, key=lambda x: (len(x), x))
