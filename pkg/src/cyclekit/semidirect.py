"""Semi-direct products of finite systems and the attractor decomposition.

A semi-direct product couples a base system (X, f) to a fiber update
g: E x Y -> Y through a drive map p: X -> E, giving the system
(x, y) |-> (f(x), g(p(x), y)) on X x Y.  Its n-cycles decompose, orbit by
orbit of the base's n-cycles, into the n-cycles of small "driven" systems
in which the base is replaced by one cycle; the bijection is explicit and
equivariant for the rotation action, and this module constructs and
verifies it element by element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._util import canonical_key
from .attractor import minimal_period, rotate_walk, system_cycles
from .cycleset import ZnSet, make_znset
from .dds import (
    DdsError,
    DdsMorphism,
    FiniteDds,
    check_morphism,
    cyclic_dds,
    is_isomorphism,
    make_dds,
    make_morphism,
    pair_id,
)


@dataclass(frozen=True)
class SemiDirectSpec:
    """Base system, environment, drive map, and fiber update table."""

    base: FiniteDds
    env_size: int
    drive: tuple[int, ...]
    fiber_size: int
    fiber_update: tuple[tuple[int, ...], ...]  # [env][fiber] -> fiber


def make_semidirect_spec(base: FiniteDds, env_size: int, drive,
                         fiber_size: int, fiber_update) -> SemiDirectSpec:
    drive = tuple(drive)
    if len(drive) != base.size or any(not 0 <= e < env_size for e in drive):
        raise DdsError("drive map is not a total map into the environment")
    fiber_update = tuple(tuple(row) for row in fiber_update)
    if len(fiber_update) != env_size:
        raise DdsError("fiber update needs one row per environment value")
    for row in fiber_update:
        if len(row) != fiber_size or any(not 0 <= y < fiber_size for y in row):
            raise DdsError("fiber update row is not a total self-map")
    return SemiDirectSpec(base, env_size, drive, fiber_size, fiber_update)


def semidirect(spec: SemiDirectSpec) -> tuple[FiniteDds, DdsMorphism]:
    """The coupled system on base x fiber, with its base projection."""
    nx, ny = spec.base.size, spec.fiber_size
    update = [0] * (nx * ny)
    proj = [0] * (nx * ny)
    for x in range(nx):
        fx = spec.base.update[x]
        row = spec.fiber_update[spec.drive[x]]
        for y in range(ny):
            i = pair_id(x, y, ny)
            update[i] = pair_id(fx, row[y], ny)
            proj[i] = x
    system = make_dds(nx * ny, update)
    return system, DdsMorphism(system, spec.base, tuple(proj))


def cycle_to_morphism(base: FiniteDds, walk: tuple[int, ...]) -> DdsMorphism:
    """View a closed orbit walk of the base as a map from a cyclic system."""
    k = len(walk)
    m = make_morphism(cyclic_dds(k), base, walk)
    if not check_morphism(m):
        raise DdsError(f"{walk} is not a closed orbit walk of the base")
    return m


def driven_system(c: DdsMorphism, spec: SemiDirectSpec) -> FiniteDds:
    """The semi-direct product with the base replaced by the cycle c.

    c must be a map from a cyclic system into the base; the driven system
    lives on (cycle position) x (fiber state).
    """
    if c.target != spec.base:
        raise DdsError("cycle does not land in the spec's base system")
    if not check_morphism(c):
        raise DdsError("c is not a morphism from a cyclic system")
    k = c.source.size
    driven_spec = SemiDirectSpec(
        cyclic_dds(k), spec.env_size,
        tuple(spec.drive[c.map[t]] for t in range(k)),
        spec.fiber_size, spec.fiber_update)
    system, _ = semidirect(driven_spec)
    return system


def verify_pullback(alpha: DdsMorphism, p: Sequence[int], p_prime: Sequence[int],
                    env_size: int, fiber_size: int, fiber_update
                    ) -> tuple[bool, DdsMorphism]:
    """Check that coupling along alpha realizes the comparison as a pullback.

    Given alpha: (X, f) -> (X', f') with p = p' o alpha, forms the explicit
    pullback P of the projection of the primed coupled system along alpha,
    and verifies that (x, y) |-> (x, alpha(x), y) is an isomorphism from
    the unprimed coupled system onto P.
    """
    p = tuple(p)
    p_prime = tuple(p_prime)
    if any(p[x] != p_prime[alpha.map[x]] for x in range(alpha.source.size)):
        raise DdsError("drive maps do not commute with alpha")
    spec = make_semidirect_spec(alpha.source, env_size, p, fiber_size,
                                fiber_update)
    system, _ = semidirect(spec)

    f, f_prime = alpha.source.update, alpha.target.update
    triples = [
        (x, alpha.map[x], y)
        for x in range(alpha.source.size)
        for y in range(fiber_size)
    ]
    index = {t: i for i, t in enumerate(triples)}
    update = tuple(
        index[(f[x], f_prime[xp], spec.fiber_update[p_prime[xp]][y])]
        for x, xp, y in triples)
    pullback_system = make_dds(len(triples), update)

    phi = DdsMorphism(system, pullback_system, tuple(
        index[(x, alpha.map[x], y)]
        for x in range(alpha.source.size)
        for y in range(fiber_size)))
    return is_isomorphism(phi), phi


def compress_cycle(walk: tuple[int, ...]) -> tuple[int, ...]:
    """Cut a periodic walk to one minimal period, lex-least rotation first."""
    k = minimal_period(walk)
    best = walk[:k]
    w = best
    for _ in range(k - 1):
        w = rotate_walk(w)
        if w < best:
            best = w
    return best


@dataclass(frozen=True)
class OrbitBlock:
    """One base orbit's contribution to the decomposition."""

    representative: tuple[int, ...]  # aperiodic base cycle, lex-least rotation
    period: int
    driven: FiniteDds
    cycles: tuple[tuple[int, ...], ...]  # n-cycles of the driven system


@dataclass(frozen=True)
class DecompositionReport:
    """Level-n comparison of the coupled system's cycles with the driven ones.

    `mapping` sends (block index, driven cycle) to the corresponding cycle
    of the coupled system; it is a verified equivariant bijection.
    """

    level: int
    system: FiniteDds
    projection: DdsMorphism
    lhs: ZnSet
    blocks: tuple[OrbitBlock, ...]
    mapping: dict


def decompose_attractors(spec: SemiDirectSpec, n: int) -> DecompositionReport:
    """Split the coupled system's n-cycles along the base's n-cycle orbits.

    For each rotation orbit of base n-cycles, the representative is
    compressed to its minimal period k and drives a system on k x fiber
    states; a driven n-cycle maps to the coupled system by applying the
    representative positionwise.  Bijectivity and equivariance of the
    combined map are checked element by element.
    """
    if n < 1:
        raise ValueError("level must be positive")
    system, proj = semidirect(spec)
    ny = spec.fiber_size
    lhs_walks = system_cycles(system, n)
    lhs = make_znset(n, lhs_walks, {tuple(w): rotate_walk(tuple(w))
                                    for w in lhs_walks})

    base_walks = system_cycles(spec.base, n)
    base_action = {w: rotate_walk(w) for w in base_walks}
    base_orbits = make_znset(n, base_walks, base_action).orbits()

    blocks = []
    mapping = {}
    seen = set()
    for b, orbit in enumerate(base_orbits):
        rep = compress_cycle(orbit[0])
        k = len(rep)
        assert k == len(orbit), "orbit size differs from the minimal period"
        driven = driven_system(cycle_to_morphism(spec.base, rep), spec)
        cycles = tuple(system_cycles(driven, n))
        blocks.append(OrbitBlock(rep, k, driven, cycles))
        for walk in cycles:
            image = tuple(
                pair_id(rep[state // ny], state % ny, ny) for state in walk)
            mapping[(b, walk)] = image
            assert image not in seen, "decomposition map is not injective"
            seen.add(image)
            # equivariance: rotating before mapping = rotating after
            rotated = tuple(
                pair_id(rep[state // ny], state % ny, ny)
                for state in rotate_walk(walk))
            assert rotated == rotate_walk(image)

    assert seen == set(lhs.elements), "decomposition map is not onto"
    return DecompositionReport(n, system, proj, lhs, tuple(blocks), mapping)


def representative_invariance(spec: SemiDirectSpec, orbit: Sequence[tuple[int, ...]],
                              i: int) -> bool:
    """Driving by a rotated representative gives an isomorphic system.

    The isomorphism candidate shifts the cycle position by i and keeps the
    fiber state; returns whether it validates.
    """
    rep = compress_cycle(tuple(sorted(orbit, key=canonical_key)[0]))
    k = len(rep)
    i %= k
    rotated = tuple(rep[(t + i) % k] for t in range(k))
    driven_plain = driven_system(cycle_to_morphism(spec.base, rep), spec)
    driven_rotated = driven_system(cycle_to_morphism(spec.base, rotated), spec)
    ny = spec.fiber_size
    vmap = tuple(
        pair_id((t + i) % k, y, ny)
        for t in range(k) for y in range(ny))
    return is_isomorphism(DdsMorphism(driven_rotated, driven_plain, vmap))
