"""Finite discrete dynamical systems and their structure-preserving maps.

A system is a finite set of states {0, ..., size-1} together with a total
update function.  Maps between systems are functions on states commuting
with the updates.  The module also provides the finite limits and colimits
the rest of the toolkit relies on: binary products and coproducts,
pullbacks, and the partition of states into weakly connected orbits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from ._util import UnionFind


class DdsError(ValueError):
    """Raised on malformed systems or maps."""


@dataclass(frozen=True)
class FiniteDds:
    """A finite state set with a total update map.

    `update[x]` is the successor of state x.  `labels`, when present, is a
    bijective presentation-layer naming of the states.
    """

    update: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    @property
    def size(self) -> int:
        return len(self.update)

    def apply(self, x: int) -> int:
        return self.update[x]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)


def make_dds(size: int, update, labels=None) -> FiniteDds:
    """Validate and build a system.

    Raises DdsError if the update is not total on {0..size-1} or labels
    are not unique.
    """
    update = tuple(update)
    if len(update) != size:
        raise DdsError(f"update has length {len(update)}, expected {size}")
    for x, y in enumerate(update):
        if not (0 <= y < size):
            raise DdsError(f"update target {y} of state {x} out of range")
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != size:
            raise DdsError("label count does not match state count")
        if len(set(labels)) != size:
            raise DdsError("duplicate state label")
    return FiniteDds(update, labels)


def cyclic_dds(n: int) -> FiniteDds:
    """The n-state successor system: x maps to x+1 mod n."""
    if n < 1:
        raise DdsError("cyclic system needs at least one state")
    return FiniteDds(tuple((x + 1) % n for x in range(n)))


def step(d: FiniteDds, x: int, t: int) -> int:
    """Apply the update t times to state x."""
    if not (0 <= x < d.size):
        raise DdsError(f"invalid state id {x}")
    if t < 0:
        raise DdsError("negative step count")
    for _ in range(t):
        x = d.update[x]
    return x


@dataclass(frozen=True)
class Trajectory:
    """Forward orbit split into a repetition-free tail and the reached cycle."""

    tail: tuple[int, ...]
    cycle: tuple[int, ...]

    @property
    def period(self) -> int:
        return len(self.cycle)


def trajectory(d: FiniteDds, x: int) -> Trajectory:
    """Walk forward from x until the first repeated state.

    The tail is the pre-periodic prefix; the cycle starts at the first state
    seen twice and has minimal period.
    """
    if d.size == 0:
        raise DdsError("trajectory undefined on the empty system")
    if not (0 <= x < d.size):
        raise DdsError(f"invalid state id {x}")
    seen: dict[int, int] = {}
    path = []
    while x not in seen:
        seen[x] = len(path)
        path.append(x)
        x = d.update[x]
    start = seen[x]
    return Trajectory(tuple(path[:start]), tuple(path[start:]))


@dataclass(frozen=True)
class DdsMorphism:
    """A state map source -> target commuting with the updates."""

    source: FiniteDds
    target: FiniteDds
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]


def make_morphism(source: FiniteDds, target: FiniteDds, map) -> DdsMorphism:
    map = tuple(map)
    if len(map) != source.size:
        raise DdsError("map not total on source states")
    for y in map:
        if not (0 <= y < target.size):
            raise DdsError(f"map target {y} out of range")
    return DdsMorphism(source, target, map)


def identity_morphism(d: FiniteDds) -> DdsMorphism:
    return DdsMorphism(d, d, tuple(range(d.size)))


def compose_morphisms(g: DdsMorphism, f: DdsMorphism) -> DdsMorphism:
    """g after f."""
    if f.target is not g.source and f.target != g.source:
        raise DdsError("morphisms are not composable")
    return DdsMorphism(f.source, g.target, tuple(g.map[y] for y in f.map))


def equivariance_witness(m: DdsMorphism) -> Optional[int]:
    """A state where map(f(x)) != g(map(x)), or None if the square commutes."""
    f, g = m.source.update, m.target.update
    for x in range(m.source.size):
        if m.map[f[x]] != g[m.map[x]]:
            return x
    return None


def check_morphism(m: DdsMorphism) -> bool:
    return equivariance_witness(m) is None


def is_isomorphism(m: DdsMorphism) -> bool:
    """True iff m is equivariant and bijective on states."""
    if not check_morphism(m):
        return False
    return sorted(m.map) == list(range(m.target.size))


def inverse_morphism(m: DdsMorphism) -> DdsMorphism:
    if not is_isomorphism(m):
        raise DdsError("morphism is not invertible")
    inv = [0] * m.target.size
    for x, y in enumerate(m.map):
        inv[y] = x
    return DdsMorphism(m.target, m.source, tuple(inv))


class ProductResult(NamedTuple):
    system: FiniteDds
    proj1: DdsMorphism
    proj2: DdsMorphism


class CoproductResult(NamedTuple):
    system: FiniteDds
    inj1: DdsMorphism
    inj2: DdsMorphism


class PullbackResult(NamedTuple):
    system: FiniteDds
    proj1: DdsMorphism
    proj2: DdsMorphism


def pair_id(x: int, y: int, size2: int) -> int:
    """Mixed-radix encoding of a state pair; first component most significant."""
    return x * size2 + y


def product(d1: FiniteDds, d2: FiniteDds) -> ProductResult:
    """Componentwise-update system on pairs, with its two projections."""
    n2 = d2.size
    update = [0] * (d1.size * n2)
    p1 = [0] * len(update)
    p2 = [0] * len(update)
    for x in range(d1.size):
        fx = d1.update[x]
        for y in range(n2):
            i = pair_id(x, y, n2)
            update[i] = pair_id(fx, d2.update[y], n2)
            p1[i] = x
            p2[i] = y
    system = FiniteDds(tuple(update))
    return ProductResult(
        system,
        DdsMorphism(system, d1, tuple(p1)),
        DdsMorphism(system, d2, tuple(p2)),
    )


def coproduct(d1: FiniteDds, d2: FiniteDds) -> CoproductResult:
    """Disjoint union; the second block of states is offset by d1.size."""
    n1 = d1.size
    update = tuple(d1.update) + tuple(y + n1 for y in d2.update)
    system = FiniteDds(update)
    return CoproductResult(
        system,
        DdsMorphism(d1, system, tuple(range(n1))),
        DdsMorphism(d2, system, tuple(range(n1, n1 + d2.size))),
    )


def pullback(m1: DdsMorphism, m2: DdsMorphism) -> PullbackResult:
    """The subsystem of pairs (x, y) with m1(x) = m2(y)."""
    if m1.target != m2.target:
        raise DdsError("pullback legs must share a target")
    d1, d2 = m1.source, m2.source
    states = [
        (x, y)
        for x in range(d1.size)
        for y in range(d2.size)
        if m1.map[x] == m2.map[y]
    ]
    index = {s: i for i, s in enumerate(states)}
    update = tuple(index[(d1.update[x], d2.update[y])] for x, y in states)
    system = FiniteDds(update)
    return PullbackResult(
        system,
        DdsMorphism(system, d1, tuple(x for x, _ in states)),
        DdsMorphism(system, d2, tuple(y for _, y in states)),
    )


def orbit_components(d: FiniteDds) -> list[list[int]]:
    """Partition of states: x ~ y iff their forward orbits eventually meet.

    Equals the weakly connected components of the state space.  Components
    are sorted by their least state.
    """
    uf = UnionFind(d.size)
    for x, y in enumerate(d.update):
        uf.union(x, y)
    groups: dict[int, list[int]] = {}
    for x in range(d.size):
        groups.setdefault(uf.find(x), []).append(x)
    return sorted(groups.values())


def find_dds_isomorphism(d1: FiniteDds, d2: FiniteDds) -> Optional[DdsMorphism]:
    """Brute-force search for an isomorphism (intended for tiny systems)."""
    if d1.size != d2.size:
        return None
    for perm in itertools.permutations(range(d2.size)):
        m = DdsMorphism(d1, d2, perm)
        if check_morphism(m):
            return m
    return None
