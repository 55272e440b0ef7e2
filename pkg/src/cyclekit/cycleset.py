"""Abstract cycle sets: validation, structural properties, and realization.

A cycle set need not come from a digraph.  This module validates raw level
data against the rotation/repetition relations, checks the two structural
properties that characterize digraph-realizable cycle sets (injective
repetitions, and rotation-fixed cycles being genuine repetitions), builds
the standard counterexamples, evaluates levels to sets with a cyclic group
action together with both adjoints of that evaluation, glues the truncated
digraph realization, and recognizes realizable cycle sets by producing
their presentation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from ._util import canonical_key, divisors
from .attractor import (
    CycleSetPresentation,
    TruncatedCycleSet,
    attractor_truncated,
    realize_presentation,
)
from .digraph import (
    Digraph,
    compose_cycle_maps,
    cycle_hom_set,
    make_digraph,
    repeat_map,
    rotation_map,
)
from ._util import UnionFind


class CycleSetValidationError(ValueError):
    """A relation of the cycle-set presentation failed; carries a witness."""

    def __init__(self, relation: str, level: int, other_level: Optional[int],
                 element, message: str):
        self.relation = relation
        self.level = level
        self.other_level = other_level
        self.element = element
        super().__init__(message)


def _sorted_level(elements) -> tuple:
    return tuple(sorted(elements, key=canonical_key))


def validate(bound: int, levels: Mapping[int, tuple], rot: Mapping[int, Mapping],
             deg: Mapping[tuple[int, int], Mapping],
             provenance: str = "explicit") -> TruncatedCycleSet:
    """Check raw level data against all presentation relations.

    Raises CycleSetValidationError naming the first violated relation
    instance; returns the validated TruncatedCycleSet otherwise.
    """
    if bound < 1:
        raise CycleSetValidationError("bound", 0, None, None,
                                      "bound must be positive")
    norm_levels: dict[int, tuple] = {}
    for n in range(1, bound + 1):
        elems = tuple(levels.get(n, ()))
        if len(set(elems)) != len(elems):
            raise CycleSetValidationError(
                "level", n, None, None, f"duplicate element at level {n}")
        norm_levels[n] = _sorted_level(elems)

    norm_rot: dict[int, dict] = {}
    for n in range(1, bound + 1):
        elems = norm_levels[n]
        table = dict(rot.get(n, {}))
        if set(table) != set(elems):
            raise CycleSetValidationError(
                "rot-domain", n, None, None,
                f"rotation at level {n} is not defined on exactly the level")
        if set(table.values()) != set(elems):
            raise CycleSetValidationError(
                "rot-bijective", n, None, None,
                f"rotation at level {n} is not a permutation")
        for x in elems:
            y = x
            for _ in range(n):
                y = table[y]
            if y != x:
                raise CycleSetValidationError(
                    "rot-order", n, None, x,
                    f"rotating {x!r} {n} times at level {n} is not the identity")
        norm_rot[n] = table

    norm_deg: dict[tuple[int, int], dict] = {}
    for n in range(1, bound + 1):
        for m in range(2 * n, bound + 1, n):
            table = dict(deg.get((n, m), {}))
            if set(table) != set(norm_levels[n]):
                raise CycleSetValidationError(
                    "deg-domain", n, m, None,
                    f"repetition {n}->{m} is not defined on exactly level {n}")
            for x, y in table.items():
                if y not in set(norm_levels[m]):
                    raise CycleSetValidationError(
                        "deg-target", n, m, x,
                        f"repetition {n}->{m} sends {x!r} outside level {m}")
            norm_deg[(n, m)] = table

    # composite repetitions agree along divisor chains
    for n in range(1, bound + 1):
        for m in range(2 * n, bound + 1, n):
            for l in range(2 * m, bound + 1, m):
                for x in norm_levels[n]:
                    if norm_deg[(m, l)][norm_deg[(n, m)][x]] != norm_deg[(n, l)][x]:
                        raise CycleSetValidationError(
                            "deg-composition", n, l, x,
                            f"repetitions {n}->{m}->{l} and {n}->{l} "
                            f"disagree at {x!r}")

    # repeating then rotating once equals rotating once then repeating
    for (n, m), table in sorted(norm_deg.items()):
        for x in norm_levels[n]:
            if norm_rot[m][table[x]] != table[norm_rot[n][x]]:
                raise CycleSetValidationError(
                    "rot-deg-naturality", n, m, x,
                    f"rotation does not commute with repetition {n}->{m} "
                    f"at {x!r}")

    return TruncatedCycleSet(bound, norm_levels, norm_rot, norm_deg, provenance)


# --- structural properties ---------------------------------------------------

@dataclass(frozen=True)
class PropertyViolation:
    """Witness of a failed structural property.

    kind "A": elements x != y at `level` with the same repetition at
    `other_level`.  kind "B": x at `level` fixed by rotating `other_level`
    steps, with no repetition witness at that divisor level (y is None).
    """

    kind: str
    level: int
    other_level: int
    x: object
    y: object = None

    def recheck(self, cs: TruncatedCycleSet) -> bool:
        if self.kind == "A":
            return (self.x != self.y
                    and cs.degenerate(self.x, self.level, self.other_level)
                    == cs.degenerate(self.y, self.level, self.other_level))
        k, n = self.other_level, self.level
        if cs.rotate_power(n, self.x, k) != self.x:
            return False
        return all(cs.degenerate(y, k, n) != self.x for y in cs.level(k))


def check_property_a(cs: TruncatedCycleSet) -> Optional[PropertyViolation]:
    """First witness of a non-injective repetition map, if any."""
    for n in range(1, cs.bound + 1):
        for m in range(2 * n, cs.bound + 1, n):
            seen: dict = {}
            for x in cs.level(n):
                image = cs.degenerate(x, n, m)
                if image in seen:
                    return PropertyViolation("A", n, m, seen[image], x)
                seen[image] = x
    return None


def check_property_b(cs: TruncatedCycleSet) -> Optional[PropertyViolation]:
    """First rotation-fixed cycle that is not an actual repetition, if any."""
    for n in range(1, cs.bound + 1):
        for x in cs.level(n):
            for k in divisors(n)[:-1]:
                if cs.rotate_power(n, x, k) != x:
                    continue
                if not any(cs.degenerate(y, k, n) == x for y in cs.level(k)):
                    return PropertyViolation("B", n, k, x)
    return None


# --- ancestors ----------------------------------------------------------------

@dataclass(frozen=True)
class Ancestor:
    """The unique aperiodic source of a cycle: x = rotate^offset(rep) repeated.

    `element` is the witness at divisor `level`; `offset` locates it inside
    its rotation orbit relative to the orbit's canonical representative.
    """

    level: int
    element: object
    offset: int


@dataclass(frozen=True)
class AncestorAmbiguity:
    """All (level, element) witnesses when the aperiodic source is not unique."""

    witnesses: tuple[tuple[int, object], ...]


def nondegenerate_ancestor(cs: TruncatedCycleSet, n: int, x
                           ) -> Union[Ancestor, AncestorAmbiguity]:
    """Find the non-degenerate cycle(s) whose repetition gives x."""
    if x not in set(cs.level(n)):
        raise ValueError(f"{x!r} is not an element of level {n}")
    witnesses = []
    for d in divisors(n):
        for y in cs.level(d):
            if cs.is_degenerate(d, y):
                continue
            if cs.degenerate(y, d, n) == x:
                witnesses.append((d, y))
    if len(witnesses) == 1:
        d, y = witnesses[0]
        orbit = cs.orbit_of(d, y)
        return Ancestor(d, y, orbit.index(y))
    witnesses.sort(key=lambda w: (w[0], canonical_key(w[1])))
    return AncestorAmbiguity(tuple(witnesses))


# --- builtin counterexamples ---------------------------------------------------

def _tautological(bound: int, occupied, label, provenance: str) -> TruncatedCycleSet:
    """Singleton levels where `occupied` holds, identity rotations, forced maps."""
    levels = {n: ((label(n),) if occupied(n) else ()) for n in range(1, bound + 1)}
    rot = {n: {x: x for x in levels[n]} for n in range(1, bound + 1)}
    deg = {}
    for n in range(1, bound + 1):
        for m in range(2 * n, bound + 1, n):
            deg[(n, m)] = {x: levels[m][0] for x in levels[n]}
    return validate(bound, levels, rot, deg, provenance)


def builtin_examples(bound: int) -> dict[str, TruncatedCycleSet]:
    """The four standard cycle sets separating the structural properties.

    Needs bound >= 6 so the ambiguous level-6 element of the last example
    is in range.
    """
    if bound < 6:
        raise ValueError("builtin examples need bound >= 6")
    out = {}
    out["a-not-b"] = _tautological(
        bound, lambda n: n % 2 == 0, lambda n: f"*{n}", "builtin-example")

    levels = {n: (f"*{n}",) if n >= 2 else ("0", "1") for n in range(1, bound + 1)}
    rot = {n: {x: x for x in levels[n]} for n in range(1, bound + 1)}
    deg = {}
    for n in range(1, bound + 1):
        for m in range(2 * n, bound + 1, n):
            deg[(n, m)] = {x: levels[m][0] for x in levels[n]}
    out["b-not-a"] = validate(bound, levels, rot, deg, "builtin-example")

    out["not-ab"] = cycle_set_coproduct(
        out["a-not-b"], out["b-not-a"],
        tag_left=lambda x: f"a:{x}", tag_right=lambda x: f"b:{x}",
        provenance="builtin-example")

    out["a-without-unique-degens"] = _tautological(
        bound, lambda n: n >= 2, lambda n: f"*{n}", "builtin-example")
    return out


def cycle_set_coproduct(left: TruncatedCycleSet, right: TruncatedCycleSet,
                        tag_left=lambda x: (0, x), tag_right=lambda x: (1, x),
                        provenance: str = "coproduct") -> TruncatedCycleSet:
    """Level-wise disjoint union; elements are relabelled by the tag functions."""
    if left.bound != right.bound:
        raise ValueError("coproduct needs equal bounds")
    bound = left.bound
    levels = {}
    rot = {}
    deg = {}
    for n in range(1, bound + 1):
        levels[n] = tuple(tag_left(x) for x in left.level(n)) + \
            tuple(tag_right(x) for x in right.level(n))
        table = {tag_left(x): tag_left(y) for x, y in left.rot[n].items()}
        table.update({tag_right(x): tag_right(y) for x, y in right.rot[n].items()})
        rot[n] = table
    for n in range(1, bound + 1):
        for m in range(2 * n, bound + 1, n):
            table = {tag_left(x): tag_left(y) for x, y in left.deg[(n, m)].items()}
            table.update(
                {tag_right(x): tag_right(y) for x, y in right.deg[(n, m)].items()})
            deg[(n, m)] = table
    return validate(bound, levels, rot, deg, provenance)


# --- representables and evaluation ---------------------------------------------

def representable(k: int, bound: int) -> TruncatedCycleSet:
    """The cycle set whose n-cycles are the cycle maps C_n -> C_k."""
    if k < 1:
        raise ValueError("cycle length must be positive")
    levels = {n: tuple(cycle_hom_set(n, k)) for n in range(1, bound + 1)}
    rot = {
        n: {x: compose_cycle_maps(x, rotation_map(n, 1)) for x in levels[n]}
        for n in range(1, bound + 1)
    }
    deg = {}
    for n in range(1, bound + 1):
        for m in range(2 * n, bound + 1, n):
            deg[(n, m)] = {x: compose_cycle_maps(x, repeat_map(m, n))
                           for x in levels[n]}
    return validate(bound, levels, rot, deg, "representable")


@dataclass(frozen=True)
class ZnSet:
    """A finite set with an action of the cyclic group of order n."""

    n: int
    elements: tuple
    action: Mapping

    def act(self, x):
        return self.action[x]

    def act_power(self, x, k: int):
        for _ in range(k % self.n):
            x = self.action[x]
        return x

    def orbit_of(self, x) -> tuple:
        orbit = [x]
        y = self.action[x]
        while y != x:
            orbit.append(y)
            y = self.action[y]
        start = min(range(len(orbit)), key=lambda i: canonical_key(orbit[i]))
        return tuple(orbit[start:] + orbit[:start])

    def orbits(self) -> list[tuple]:
        seen = set()
        out = []
        for x in self.elements:
            if x in seen:
                continue
            orbit = self.orbit_of(x)
            seen.update(orbit)
            out.append(orbit)
        out.sort(key=lambda orbit: canonical_key(orbit[0]))
        return out


def make_znset(n: int, elements, action: Mapping) -> ZnSet:
    elements = _sorted_level(elements)
    if set(action) != set(elements) or set(action.values()) != set(elements):
        raise ValueError("action is not a permutation of the elements")
    for x in elements:
        y = x
        for _ in range(n):
            y = action[y]
        if y != x:
            raise ValueError(f"action order does not divide {n}")
    return ZnSet(n, elements, dict(action))


def ev(cs: TruncatedCycleSet, n: int) -> ZnSet:
    """Level n of the cycle set with its rotation action."""
    if not (1 <= n <= cs.bound):
        raise ValueError(f"level {n} outside bound {cs.bound}")
    return ZnSet(n, cs.level(n), dict(cs.rot[n]))


def zn_isomorphism(a: ZnSet, b: ZnSet) -> Optional[dict]:
    """An equivariant bijection a -> b, or None.

    Cyclic-group sets are determined by their orbit sizes, so orbits of
    equal size are matched in canonical order and each is mapped rotation
    by rotation.
    """
    if a.n != b.n or len(a.elements) != len(b.elements):
        return None
    a_orbits = sorted(a.orbits(), key=lambda o: (len(o), canonical_key(o[0])))
    b_orbits = sorted(b.orbits(), key=lambda o: (len(o), canonical_key(o[0])))
    if [len(o) for o in a_orbits] != [len(o) for o in b_orbits]:
        return None
    mapping = {}
    for oa, ob in zip(a_orbits, b_orbits):
        for x, y in zip(oa, ob):
            mapping[x] = y
    # explicit check: bijective and commutes with the action
    assert sorted(map(canonical_key, mapping.values())) == \
        sorted(map(canonical_key, b.elements))
    for x in a.elements:
        if mapping[a.act(x)] != b.act(mapping[x]):
            return None
    return mapping


def zn_isomorphic(a: ZnSet, b: ZnSet) -> bool:
    return zn_isomorphism(a, b) is not None


# --- adjoints of evaluation ------------------------------------------------------

def adjoint_left(x_set: ZnSet, bound: int) -> TruncatedCycleSet:
    """Left adjoint of level-n evaluation.

    Level k starts from the pairs (x, phi) with phi: C_k -> C_n and the
    operators composing into phi, then identifies acting on x with
    post-rotating phi.  Every class then has a unique representative whose
    map component is the plain repetition, so level k (for n | k; other
    levels are empty) is a copy of the points of X, rotation acts by the
    group action, and repetitions are identities.  On a free orbit this
    reproduces the cycle set of maps into C_n, as the adjunction forces.
    """
    n = x_set.n
    levels = {
        k: x_set.elements if k % n == 0 else ()
        for k in range(1, bound + 1)
    }
    rot = {
        k: {x: x_set.act(x) for x in levels[k]}
        for k in range(1, bound + 1)
    }
    deg = {}
    for k in range(1, bound + 1):
        for m in range(2 * k, bound + 1, k):
            deg[(k, m)] = {x: x for x in levels[k]}
    return validate(bound, levels, rot, deg, "explicit")


def adjoint_right(x_set: ZnSet, bound: int) -> TruncatedCycleSet:
    """Right adjoint: level k keeps the points fixed by acting k times when
    k divides n, and is a point otherwise.

    Repetition keeps the point; rotation acts by the group generator.
    """
    n = x_set.n
    levels = {}
    rot = {}
    for k in range(1, bound + 1):
        if n % k == 0:
            elems = tuple(x for x in x_set.elements if x_set.act_power(x, k) == x)
            levels[k] = elems
            rot[k] = {x: x_set.act(x) for x in elems}
        else:
            levels[k] = ("*",)
            rot[k] = {"*": "*"}
    deg = {}
    for k in range(1, bound + 1):
        for m in range(2 * k, bound + 1, k):
            if n % m == 0:
                deg[(k, m)] = {x: x for x in levels[k]}
            else:
                deg[(k, m)] = {x: "*" for x in levels[k]}
    return validate(bound, levels, rot, deg, "explicit")


# --- realization ------------------------------------------------------------------

def realize_truncated(cs: TruncatedCycleSet) -> Digraph:
    """Glue one cycle graph per element along all operator identifications.

    Each n-cycle x contributes a copy of the directed n-cycle; for every
    map phi: C_m -> C_n between in-bound cycle graphs, vertex j of the copy
    of x.phi is identified with vertex phi(j) of the copy of x.  Edges are
    induced on the quotient and deduplicated.  For inputs satisfying both
    structural properties this equals the full realization; in general it
    is the realization truncated at the bound.
    """
    nodes = []
    offset: dict[tuple[int, object], int] = {}
    for n in range(1, cs.bound + 1):
        for x in cs.level(n):
            offset[(n, x)] = len(nodes)
            nodes.extend((n, x, v) for v in range(n))
    uf = UnionFind(len(nodes))

    for n in range(1, cs.bound + 1):
        for m in range(n, cs.bound + 1, n):
            for phi in cycle_hom_set(m, n):
                for x in cs.level(n):
                    # x . (rotation_i then repeat) at level m
                    y = cs.rotate_power(n, x, phi.offset)
                    y = cs.degenerate(y, n, m)
                    base_y = offset[(m, y)]
                    base_x = offset[(n, x)]
                    for j in range(m):
                        uf.union(base_y + j, base_x + phi(j))

    roots: dict[int, int] = {}
    for i in range(len(nodes)):
        r = uf.find(i)
        if r not in roots:
            roots[r] = len(roots)
    edges = set()
    for n in range(1, cs.bound + 1):
        for x in cs.level(n):
            base = offset[(n, x)]
            for v in range(n):
                u = roots[uf.find(base + v)]
                w = roots[uf.find(base + (v + 1) % n)]
                edges.add((u, w))
    return make_digraph(len(roots), sorted(edges), dedup=True)


# --- recognition --------------------------------------------------------------------

def cycle_set_presentation(cs: TruncatedCycleSet) -> CycleSetPresentation:
    """One generator per rotation orbit of non-degenerate cycles."""
    generators = []
    for n in range(1, cs.bound + 1):
        nondeg = set(cs.nondegenerate(n))
        for orbit in cs.orbits(n):
            if orbit[0] in nondeg:
                generators.append((n, orbit[0]))
    return CycleSetPresentation(tuple(generators))


def recognize(cs: TruncatedCycleSet
              ) -> Union[CycleSetPresentation, list[PropertyViolation]]:
    """Decide digraph-realizability at the truncation bound.

    If either structural property fails, the violations are returned.
    Otherwise the presentation by non-degenerate orbits is computed, and
    the round trip through its realization is verified: re-taking the
    cycles of the realized digraph must give a level-wise equivariantly
    isomorphic cycle set.
    """
    violations = [v for v in (check_property_a(cs), check_property_b(cs))
                  if v is not None]
    if violations:
        return violations
    presentation = cycle_set_presentation(cs)
    realized = realize_presentation(presentation)
    back = attractor_truncated(realized, cs.bound)
    for n in range(1, cs.bound + 1):
        if zn_isomorphism(ev(back, n), ev(cs, n)) is None:
            raise AssertionError(
                f"round trip through the realization failed at level {n}")
    return presentation


def aperiodic_orbit_count_recursion(cs: TruncatedCycleSet) -> dict[int, int]:
    """Orbit counts minus shorter-level contributions, without sign checks.

    For realizable cycle sets this reproduces the per-length generator
    counts; a negative value is a quick diagnostic that the input cannot
    come from a digraph.
    """
    counts: dict[int, int] = {}
    for n in range(1, cs.bound + 1):
        counts[n] = len(cs.orbits(n)) - sum(counts[d] for d in divisors(n)[:-1])
    return counts


# --- natural maps between cycle sets (tiny-scale enumeration) -----------------------

def enumerate_cycle_set_maps(src: TruncatedCycleSet, dst: TruncatedCycleSet,
                             limit: int = 10 ** 6) -> list[dict[int, dict]]:
    """All families of level maps commuting with rotation and repetition.

    Exponential in the level sizes; guarded by `limit` on the raw search
    space.  Intended for adjunction sanity checks on tiny cycle sets.
    """
    if src.bound != dst.bound:
        raise ValueError("bounds must agree")
    total = 1
    for n in range(1, src.bound + 1):
        total *= max(1, len(dst.level(n))) ** len(src.level(n))
        if total > limit:
            raise ValueError("search space too large")
        if src.level(n) and not dst.level(n):
            return []

    results: list[dict[int, dict]] = []

    def extend(n: int, chosen: dict[int, dict]):
        if n > src.bound:
            results.append({k: dict(v) for k, v in chosen.items()})
            return
        src_elems = src.level(n)
        for images in itertools.product(dst.level(n), repeat=len(src_elems)):
            alpha = dict(zip(src_elems, images))
            if any(alpha[src.rotate(n, x)] != dst.rotate(n, alpha[x])
                   for x in src_elems):
                continue
            ok = True
            for d in divisors(n)[:-1]:
                for x in src.level(d):
                    if alpha[src.degenerate(x, d, n)] != \
                            dst.degenerate(chosen[d][x], d, n):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                chosen[n] = alpha
                extend(n + 1, chosen)
                del chosen[n]

    extend(1, {})
    return results


def enumerate_equivariant_maps(a: ZnSet, b: ZnSet, limit: int = 10 ** 6
                               ) -> list[dict]:
    """All action-commuting functions a -> b (tiny-scale)."""
    if a.n != b.n:
        raise ValueError("group orders must agree")
    orbits = a.orbits()
    choices = []
    total = 1
    for orbit in orbits:
        fixed = [y for y in b.elements if b.act_power(y, len(orbit)) == y]
        choices.append(fixed)
        total *= max(1, len(fixed))
        if total > limit:
            raise ValueError("search space too large")
        if not fixed:
            return []
    out = []
    for picks in itertools.product(*choices):
        mapping = {}
        for orbit, image in zip(orbits, picks):
            y = image
            for x in orbit:
                mapping[x] = y
                y = b.act(y)
        out.append(mapping)
    return out
