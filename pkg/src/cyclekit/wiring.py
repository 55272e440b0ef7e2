"""Coordinate dependency analysis and semi-direct decomposition of tables.

A product function updates k coordinates over a finite alphabet; its wiring
diagram has an edge i -> j whenever coordinate j's update reads input i.
Cuts of the wiring diagram (bipartitions with no edge from the second block
into the first) are exactly the vertex maps onto the walking looped edge,
and each cut yields an explicit semi-direct decomposition: a permutation
sorting the blocks, a self-contained update on the first block, and a
fiber update driven by the first-block inputs it actually reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .dds import FiniteDds, make_dds
from .digraph import Digraph, make_digraph
from .semidirect import SemiDirectSpec, make_semidirect_spec, semidirect


class WiringError(ValueError):
    pass


class InvalidCutError(WiringError):
    """The requested bipartition has a dependency edge crossing it backwards."""


def decode_state(state: int, arity: int, alphabet: int) -> tuple[int, ...]:
    """Mixed-radix digits of a state, first coordinate most significant."""
    digits = []
    for _ in range(arity):
        digits.append(state % alphabet)
        state //= alphabet
    return tuple(reversed(digits))


def encode_state(digits: Sequence[int], alphabet: int) -> int:
    state = 0
    for d in digits:
        state = state * alphabet + d
    return state


@dataclass(frozen=True)
class ProductFunction:
    """A function A^k -> A^k given by one lookup table per coordinate.

    Tables are indexed by the mixed-radix state encoding with coordinate 0
    most significant.
    """

    alphabet: int
    names: tuple[str, ...]
    tables: tuple[tuple[int, ...], ...]

    @property
    def arity(self) -> int:
        return len(self.names)

    @property
    def state_count(self) -> int:
        return self.alphabet ** self.arity

    def coordinate(self, j: int, state: int) -> int:
        return self.tables[j][state]

    def apply(self, state: int) -> int:
        return encode_state([t[state] for t in self.tables], self.alphabet)

    def state_label(self, state: int) -> str:
        digits = decode_state(state, self.arity, self.alphabet)
        if self.alphabet <= 10:
            return "".join(str(d) for d in digits)
        return ",".join(str(d) for d in digits)

    def to_dds(self) -> FiniteDds:
        return make_dds(
            self.state_count,
            [self.apply(s) for s in range(self.state_count)],
            [self.state_label(s) for s in range(self.state_count)])


def make_product_function(alphabet: int, names: Iterable[str],
                          tables) -> ProductFunction:
    if alphabet < 1:
        raise WiringError("alphabet must have at least one letter")
    names = tuple(names)
    if len(names) < 1:
        raise WiringError("arity must be at least one")
    if len(set(names)) != len(names):
        raise WiringError("duplicate coordinate name")
    tables = tuple(tuple(t) for t in tables)
    size = alphabet ** len(names)
    if len(tables) != len(names):
        raise WiringError("need one table per coordinate")
    for t in tables:
        if len(t) != size or any(not 0 <= v < alphabet for v in t):
            raise WiringError("coordinate table is not total")
    return ProductFunction(alphabet, names, tables)


# --- dependency analysis ----------------------------------------------------

def dependence_witness(f: ProductFunction, coord: int, inp: int
                       ) -> Optional[tuple[int, int]]:
    """Two states differing only at `inp` on which coordinate `coord`
    differs, or None if the coordinate is independent of that input."""
    k, q = f.arity, f.alphabet
    if not (0 <= coord < k and 0 <= inp < k):
        raise WiringError("coordinate index out of range")
    stride = q ** (k - 1 - inp)
    table = f.tables[coord]
    for base in range(f.state_count):
        if (base // stride) % q != 0:
            continue
        first = table[base]
        for letter in range(1, q):
            s = base + letter * stride
            if table[s] != first:
                return (base, s)
    return None


def depends_on(f: ProductFunction, coord: int, inp: int) -> bool:
    """Does coordinate `coord` of f read input `inp`?  (0-based indices.)

    With a one-letter alphabet there is only one input value, so every
    coordinate is independent of every input.
    """
    return dependence_witness(f, coord, inp) is not None


def independent_lift(f: ProductFunction, coord: int, removed: Iterable[int],
                     default_letter: int = 0) -> tuple[int, ...]:
    """Factor a coordinate through the projection discarding `removed` inputs.

    Returns the table of the factored map over the kept inputs (ascending
    original order).  The lift substitutes the default letter for removed
    positions and is re-verified; dependence on a removed input raises
    WiringError with a witness pair.
    """
    removed = sorted(set(removed))
    for inp in removed:
        witness = dependence_witness(f, coord, inp)
        if witness is not None:
            raise WiringError(
                f"coordinate {coord} depends on input {inp}: "
                f"states {witness[0]} and {witness[1]} disagree")
    kept = [i for i in range(f.arity) if i not in removed]
    q = f.alphabet
    out = []
    for s in range(q ** len(kept)):
        digits = decode_state(s, len(kept), q)
        full = [default_letter] * f.arity
        for pos, d in zip(kept, digits):
            full[pos] = d
        out.append(f.tables[coord][encode_state(full, q)])
    return tuple(out)


def wiring_diagram(f: ProductFunction) -> Digraph:
    """One vertex per coordinate; an edge i -> j iff coordinate j reads input i."""
    edges = [
        (i, j)
        for j in range(f.arity)
        for i in range(f.arity)
        if depends_on(f, j, i)
    ]
    return make_digraph(f.arity, sorted(edges))


# --- cuts --------------------------------------------------------------------

def dedge() -> Digraph:
    """The walking looped edge: two looped vertices and an edge 0 -> 1."""
    return make_digraph(2, [(0, 0), (0, 1), (1, 1)])


@dataclass(frozen=True)
class Cut:
    """A bipartition (x | y) of coordinates with no edge from y into x."""

    arity: int
    x: tuple[int, ...]

    @property
    def y(self) -> tuple[int, ...]:
        inside = set(self.x)
        return tuple(i for i in range(self.arity) if i not in inside)

    @property
    def is_trivial(self) -> bool:
        return len(self.x) in (0, self.arity)


def check_cut(w: Digraph, x: Iterable[int]) -> bool:
    """Is x predecessor-closed in w (equivalently, a valid map to dedge)?"""
    inside = set(x)
    return not any(u not in inside and v in inside for u, v in w.edges)


def strongly_connected_components(w: Digraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components in reverse topological order."""
    n = w.vertex_count
    succ = w.successors()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for next_i in range(pi, len(succ[v])):
                u = succ[v][next_i]
                if index[u] == -1:
                    work[-1] = (v, next_i + 1)
                    work.append((u, 0))
                    advanced = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                components.append(sorted(comp))
    return components


def enumerate_cuts(w: Digraph, max_cuts: int = 2 ** 20) -> list[Cut]:
    """All valid cuts of a wiring diagram, trivial ones included.

    Works on the condensation: components are decided in topological order
    and a component may join x only if all its predecessors did, so only
    predecessor-closed unions are generated.  Sorted by (size, contents).
    """
    comps = strongly_connected_components(w)
    comps.reverse()  # topological order
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    preds: list[set[int]] = [set() for _ in comps]
    for u, v in w.edges:
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv:
            preds[cv].add(cu)

    cuts: list[Cut] = []
    chosen: list[bool] = [False] * len(comps)

    def emit():
        members = sorted(
            v for ci, comp in enumerate(comps) if chosen[ci] for v in comp)
        cuts.append(Cut(w.vertex_count, tuple(members)))
        if len(cuts) > max_cuts:
            raise WiringError(f"more than {max_cuts} cuts")

    def walk(ci: int):
        if ci == len(comps):
            emit()
            return
        chosen[ci] = False
        walk(ci + 1)
        if all(chosen[p] for p in preds[ci]):
            chosen[ci] = True
            walk(ci + 1)
            chosen[ci] = False

    walk(0)
    cuts.sort(key=lambda c: (len(c.x), c.x))
    return cuts


# --- extraction ---------------------------------------------------------------

def sorting_involution(arity: int, x: Sequence[int]) -> tuple[int, ...]:
    """A product of disjoint transpositions sending {0..|x|-1} onto x."""
    m = len(x)
    inside = set(x)
    left_out = [p for p in range(m) if p not in inside]
    right_in = [p for p in range(m, arity) if p in inside]
    sigma = list(range(arity))
    for a, b in zip(left_out, right_in):
        sigma[a], sigma[b] = sigma[b], sigma[a]
    return tuple(sigma)


def permute_function(f: ProductFunction, sigma: Sequence[int]) -> ProductFunction:
    """Conjugate f by the coordinate permutation sigma.

    Coordinate i of the result is coordinate sigma(i) of f evaluated on the
    sigma-shuffled state, so the result's coordinate i carries the name of
    f's coordinate sigma(i).
    """
    k, q = f.arity, f.alphabet
    names = tuple(f.names[sigma[i]] for i in range(k))
    tables = []
    for i in range(k):
        src = f.tables[sigma[i]]
        table = []
        for s in range(f.state_count):
            digits = decode_state(s, k, q)
            shuffled = tuple(digits[sigma[t]] for t in range(k))
            table.append(src[encode_state(shuffled, q)])
        tables.append(tuple(table))
    return ProductFunction(q, names, tuple(tables))


@dataclass(frozen=True)
class ExtractedDecomposition:
    """A verified presentation of sigma . f as a semi-direct product.

    `g` updates the first block on its own (None when the block is empty);
    `h_tables` update the second block from the kept first-block inputs
    (`kept_inputs`, ascending, listed first and most significant) plus the
    second block itself.
    """

    alphabet: int
    sigma: tuple[int, ...]
    block_size: int
    kept_inputs: tuple[int, ...]
    g: Optional[ProductFunction]
    h_names: tuple[str, ...]
    h_tables: tuple[tuple[int, ...], ...]
    permuted: ProductFunction

    @property
    def fiber_arity(self) -> int:
        return len(self.h_tables)

    def fiber_update(self) -> tuple[tuple[int, ...], ...]:
        """h as a table environment x fiber-state -> fiber-state."""
        q = self.alphabet
        ell, n = len(self.kept_inputs), self.fiber_arity
        rows = []
        for e in range(q ** ell):
            env = decode_state(e, ell, q)
            row = []
            for y in range(q ** n):
                digits = env + decode_state(y, n, q)
                s = encode_state(digits, q)
                row.append(encode_state([t[s] for t in self.h_tables], q))
            rows.append(tuple(row))
        return tuple(rows)

    def to_semidirect_spec(self) -> SemiDirectSpec:
        q = self.alphabet
        base = self.g.to_dds() if self.g is not None else make_dds(1, (0,))
        drive = tuple(
            encode_state([decode_state(s, self.block_size, q)[i]
                          for i in self.kept_inputs], q)
            for s in range(q ** self.block_size))
        return make_semidirect_spec(
            base, q ** len(self.kept_inputs), drive,
            q ** self.fiber_arity, self.fiber_update())

    def reassembled(self) -> FiniteDds:
        """The coupled system rebuilt from g, the drive, and h."""
        system, _ = semidirect(self.to_semidirect_spec())
        return system


def extract(f: ProductFunction, cut: Cut) -> ExtractedDecomposition:
    """Turn a valid cut into an explicit semi-direct decomposition.

    The involution sigma sorts the cut's first block to the front; the
    first-block coordinates lift to a self-contained update g; the kept
    inputs are those first-block positions some second-block coordinate
    reads; the second-block coordinates lift to the fiber update h.  The
    resulting product is verified against sigma . f by exact table
    equality.
    """
    if cut.arity != f.arity:
        raise WiringError("cut arity does not match the function")
    w = wiring_diagram(f)
    if not check_cut(w, cut.x):
        raise InvalidCutError(
            f"{tuple(cut.x)} is not predecessor-closed in the wiring diagram")
    sigma = sorting_involution(f.arity, cut.x)
    pf = permute_function(f, sigma)
    m = len(cut.x)
    k, q = f.arity, f.alphabet

    g = None
    if m:
        g_tables = [independent_lift(pf, i, range(m, k)) for i in range(m)]
        g = make_product_function(q, pf.names[:m], g_tables)

    kept = tuple(sorted(
        i for i in range(m)
        if any(depends_on(pf, j, i) for j in range(m, k))))
    dropped = [i for i in range(m) if i not in kept]
    h_tables = tuple(independent_lift(pf, j, dropped) for j in range(m, k))
    h_names = tuple(pf.names[i] for i in kept) + pf.names[m:]

    result = ExtractedDecomposition(q, sigma, m, kept, g, h_names, h_tables, pf)
    rebuilt = result.reassembled()
    assert rebuilt.update == pf.to_dds().update, \
        "reassembled semi-direct product disagrees with the permuted function"
    return result


def verify_semidirect_projection(f: ProductFunction, cut: Cut) -> bool:
    """No first-block coordinate reads a second-block input."""
    inside = set(cut.x)
    outside = [j for j in range(f.arity) if j not in inside]
    return not any(
        depends_on(f, i, j) for i in cut.x for j in outside)
