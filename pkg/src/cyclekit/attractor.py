"""Cycles of a digraph, organized level by level with rotation and repetition.

An n-cycle of a digraph is a closed walk of length n with a marked start,
stored as the tuple of its n vertices.  For each n the set of n-cycles
carries a rotate-by-one permutation, and for n | m each n-cycle repeats to
an m-cycle.  A TruncatedCycleSet records these sets and operators for all
levels up to a caller-chosen bound; results at level n are exact for any
bound >= n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ._kernels import WalkCapExceeded, enumerate_closed_walks
from ._util import canonical_key, divisors, totient
from .dds import FiniteDds
from .digraph import Digraph, cycle_graph, graph_coproduct

DEFAULT_CAP = 10 ** 6


# --- walk helpers -----------------------------------------------------------

def rotate_walk(walk: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate the marked start one step forward along the walk."""
    return walk[1:] + walk[:1]


def repeat_walk(walk: tuple[int, ...], m: int) -> tuple[int, ...]:
    """Repeat an n-cycle m/n times to an m-cycle (requires n | m)."""
    n = len(walk)
    if m % n != 0:
        raise ValueError(f"cannot repeat a {n}-cycle to length {m}")
    return walk * (m // n)


def minimal_period(seq: tuple) -> int:
    """Least p dividing len(seq) such that seq repeats its p-prefix."""
    n = len(seq)
    for p in divisors(n):
        if seq[:p] * (n // p) == seq:
            return p
    return n


def is_aperiodic(seq: tuple) -> bool:
    return minimal_period(seq) == len(seq)


# --- counting and enumeration ----------------------------------------------

def _adjacency_matrix(g: Digraph) -> list[list[int]]:
    n = g.vertex_count
    a = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        a[u][v] = 1
    return a


def _mat_mul(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(n):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(n):
                    oi[j] += x * bk[j]
    return out


def closed_walk_count(g: Digraph, n: int) -> int:
    """Number of closed walks of length n with a marked start.

    Computed as the trace of the n-th power of the adjacency matrix, with
    exact integer arithmetic.  For a functional digraph this is the number
    of states x with f^n(x) = x.
    """
    if n < 1:
        raise ValueError("cycle length must be positive")
    a = _adjacency_matrix(g)
    power = None
    base = a
    e = n
    while e:
        if e & 1:
            power = base if power is None else _mat_mul(power, base)
        e >>= 1
        if e:
            base = _mat_mul(base, base)
    assert power is not None
    return sum(power[i][i] for i in range(g.vertex_count))


def enumerate_n_cycles(g: Digraph, n: int, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All n-cycles of g, lexicographically sorted.

    Aborts with WalkCapExceeded if there are more than `cap` of them; the
    count is checked up front so the abort is cheap.
    """
    if n < 1:
        raise ValueError("cycle length must be positive")
    if cap is not None and closed_walk_count(g, n) > cap:
        raise WalkCapExceeded(
            f"more than {cap} closed walks of length {n}")
    return enumerate_closed_walks(g.successors(), n, cap)


# --- the truncated cycle set -------------------------------------------------

@dataclass(frozen=True)
class TruncatedCycleSet:
    """Levels 1..bound of a cycle set with its rotation and repetition maps.

    `levels[n]` lists the n-cycles in a canonical order, `rot[n]` maps each
    n-cycle to its rotation by one, and `deg[(n, m)]` (for n | m, n < m)
    maps each n-cycle to its repetition at level m.  Elements are opaque:
    vertex tuples for digraph attractors, labels for abstract data.
    """

    bound: int
    levels: Mapping[int, tuple]
    rot: Mapping[int, Mapping]
    deg: Mapping[tuple[int, int], Mapping]
    provenance: str = "explicit"

    def level(self, n: int) -> tuple:
        return self.levels[n]

    def rotate(self, n: int, x):
        return self.rot[n][x]

    def rotate_power(self, n: int, x, k: int):
        for _ in range(k % n):
            x = self.rot[n][x]
        return x

    def degenerate(self, x, n: int, m: int):
        """The repetition of the n-cycle x at level m (n | m <= bound)."""
        if m == n:
            return x
        return self.deg[(n, m)][x]

    def orbit_of(self, n: int, x) -> tuple:
        """The rotation orbit of x, listed from its least element."""
        orbit = [x]
        y = self.rot[n][x]
        while y != x:
            orbit.append(y)
            y = self.rot[n][y]
        start = min(range(len(orbit)), key=lambda i: canonical_key(orbit[i]))
        return tuple(orbit[start:] + orbit[:start])

    def orbits(self, n: int) -> list[tuple]:
        """All rotation orbits at level n, ordered by their least element."""
        seen = set()
        out = []
        for x in self.levels[n]:
            if x in seen:
                continue
            orbit = self.orbit_of(n, x)
            seen.update(orbit)
            out.append(orbit)
        out.sort(key=lambda orbit: canonical_key(orbit[0]))
        return out

    def degeneracy_witnesses(self, n: int, x) -> list[tuple[int, object]]:
        """All (d, y) with d a proper divisor level and y repeating to x."""
        out = []
        for d in divisors(n)[:-1]:
            for y in self.levels[d]:
                if self.deg[(d, n)][y] == x:
                    out.append((d, y))
        return out

    def is_degenerate(self, n: int, x) -> bool:
        return bool(self.degeneracy_witnesses(n, x))

    def nondegenerate(self, n: int) -> list:
        return [x for x in self.levels[n] if not self.is_degenerate(n, x)]


def attractor_truncated(g: Digraph, bound: int, cap: int = DEFAULT_CAP) -> TruncatedCycleSet:
    """The cycle set of g at levels 1..bound.

    Rotation moves the marked start forward; repetition concatenates the
    walk with itself.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    levels = {}
    rot = {}
    deg = {}
    for n in range(1, bound + 1):
        walks = enumerate_n_cycles(g, n, cap)
        levels[n] = tuple(walks)
        rot[n] = {w: rotate_walk(w) for w in walks}
    for n in range(1, bound + 1):
        for m in range(2 * n, bound + 1, n):
            deg[(n, m)] = {w: repeat_walk(w, m) for w in levels[n]}
    return TruncatedCycleSet(bound, levels, rot, deg, provenance="attractor-derived")


# --- orbit counting ----------------------------------------------------------

def orbit_count_burnside(g: Digraph, n: int) -> int:
    """Rotation-orbit count at level n via the averaged fixed-point formula.

    A walk fixed by rotating d steps is the repetition of a d-cycle, so the
    fixed-point count of the rotation by k is the walk count at gcd(k, n).
    """
    total = sum(totient(n // d) * closed_walk_count(g, d) for d in divisors(n))
    assert total % n == 0
    return total // n


def orbit_count_enumerated(g: Digraph, n: int, cap: int = DEFAULT_CAP) -> int:
    """Rotation-orbit count by enumerating walks and grouping rotations."""
    canon = set()
    for walk in enumerate_n_cycles(g, n, cap):
        best = walk
        w = walk
        for _ in range(n - 1):
            w = rotate_walk(w)
            if w < best:
                best = w
        canon.add(best)
    return len(canon)


def orbit_count(g: Digraph, n: int, cap: int = DEFAULT_CAP) -> int:
    """Number of rotation orbits of n-cycles.

    Enumerates when the walk count fits under `cap` (keeping the answer
    independently checkable), and falls back to the counting formula above
    when it does not.
    """
    if n < 1:
        raise ValueError("cycle length must be positive")
    if closed_walk_count(g, n) <= cap:
        return orbit_count_enumerated(g, n, cap)
    return orbit_count_burnside(g, n)


def nondeg_orbit_counts(g: Digraph, bound: int, cap: int = DEFAULT_CAP) -> dict[int, int]:
    """Per-length counts of rotation orbits of aperiodic cycles.

    Every orbit at level n repeats from an aperiodic orbit at a unique
    divisor level, so subtracting the shorter levels' counts from the orbit
    count at n isolates the aperiodic orbits of length exactly n.
    """
    counts: dict[int, int] = {}
    for n in range(1, bound + 1):
        value = orbit_count(g, n, cap) - sum(
            counts[d] for d in divisors(n)[:-1])
        assert value >= 0, "negative aperiodic-orbit count on a digraph input"
        counts[n] = value
    return counts


# --- presentation of a system's attractors ----------------------------------

@dataclass(frozen=True)
class CycleSetPresentation:
    """A cycle set described by one aperiodic representative per orbit.

    Generators are (length, representative) pairs; representatives are
    vertex tuples for systems and opaque labels for abstract cycle sets,
    listed once per rotation orbit.
    """

    generators: tuple[tuple[int, object], ...] = field(default_factory=tuple)

    def lengths(self) -> list[int]:
        return [k for k, _ in self.generators]

    def count_by_length(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k, _ in self.generators:
            out[k] = out.get(k, 0) + 1
        return out


def attractor_presentation(d: FiniteDds) -> CycleSetPresentation:
    """One generator per periodic orbit of the system.

    The representative of an orbit is its state sequence started at the
    least periodic state; its length is the orbit's minimal period.
    """
    color = [0] * d.size  # 0 unexplored, 1 on current path, 2 settled
    generators = []
    for s in range(d.size):
        if color[s]:
            continue
        path = []
        pos: dict[int, int] = {}
        x = s
        while color[x] == 0:
            color[x] = 1
            pos[x] = len(path)
            path.append(x)
            x = d.update[x]
        if color[x] == 1:
            cycle = path[pos[x]:]
            start = cycle.index(min(cycle))
            generators.append((len(cycle), tuple(cycle[start:] + cycle[:start])))
        for y in path:
            color[y] = 2
    generators.sort(key=lambda g: (g[0], g[1]))
    return CycleSetPresentation(tuple(generators))


def realize_presentation(p: CycleSetPresentation) -> Digraph:
    """Disjoint union of one cycle graph per generator."""
    out = Digraph(0, ())
    for k, _ in p.generators:
        out = graph_coproduct(out, cycle_graph(k))
    return out


def system_cycles(d: FiniteDds, n: int) -> list[tuple[int, ...]]:
    """The n-cycles of the system's state space.

    For a functional digraph each periodic state of period dividing n
    starts exactly one closed n-walk, so this scans states directly.
    """
    out = []
    for x in range(d.size):
        walk = [x]
        y = d.update[x]
        for _ in range(n - 1):
            walk.append(y)
            y = d.update[y]
        if y == x:
            out.append(tuple(walk))
    return out


def periodic_states(d: FiniteDds) -> list[int]:
    """States lying on a cycle of the system."""
    return sorted(
        v for _, rep in attractor_presentation(d).generators for v in rep)
