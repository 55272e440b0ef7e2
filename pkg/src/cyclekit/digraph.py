"""Digraphs, graph maps, state spaces, and maps between directed cycles.

Digraphs are simple (at most one edge per ordered vertex pair).  The state
space of a system is the functional digraph with one out-edge per state;
conversely every functional digraph determines a system.  Maps between the
directed cycle graphs C_m -> C_n have the normal form k |-> k + i (mod n)
and exist exactly when n divides m, so they are stored as (m, n, i) triples
and composed by modular arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .dds import FiniteDds, make_dds


class DigraphError(ValueError):
    """Raised on malformed digraphs or graph maps."""


@dataclass(frozen=True)
class Digraph:
    """vertex_count vertices 0..n-1 and a sorted, duplicate-free edge tuple."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def successors(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency lists, each sorted ascending."""
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(vs) for vs in out)

    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            inc[v].append(u)
        return tuple(tuple(sorted(vs)) for vs in inc)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set()

    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)


def make_digraph(vertex_count: int, edges: Iterable[tuple[int, int]],
                 dedup: bool = False) -> Digraph:
    """Validate endpoints and the no-parallel-edges condition.

    With dedup=True repeated pairs are silently collapsed (used by
    constructions that naturally induce the same edge twice); otherwise a
    repeated pair is an error.
    """
    if vertex_count < 0:
        raise DigraphError("negative vertex count")
    seen = set()
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise DigraphError(f"edge ({u}, {v}) out of range")
        if (u, v) in seen and not dedup:
            raise DigraphError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
    return Digraph(vertex_count, tuple(sorted(seen)))


@dataclass(frozen=True)
class GraphMap:
    """A vertex map that sends every edge of the source to an edge of the target."""

    source: Digraph
    target: Digraph
    vmap: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.vmap[v]


def graph_map_violation(m: GraphMap) -> Optional[tuple[int, int]]:
    """First source edge not preserved, or None."""
    target_edges = set(m.target.edges)
    for u, v in m.source.edges:
        if (m.vmap[u], m.vmap[v]) not in target_edges:
            return (u, v)
    return None


def check_graph_map(m: GraphMap) -> bool:
    return len(m.vmap) == m.source.vertex_count and graph_map_violation(m) is None


# --- state spaces ---------------------------------------------------------

def state_space(d: FiniteDds) -> Digraph:
    """The functional digraph with an edge x -> update(x) for every state."""
    return Digraph(d.size, tuple(sorted((x, y) for x, y in enumerate(d.update))))


def is_functional(g: Digraph) -> bool:
    """True iff every vertex has exactly one outgoing edge."""
    outdeg = [0] * g.vertex_count
    for u, _ in g.edges:
        outdeg[u] += 1
    return all(k == 1 for k in outdeg)


def dds_from_functional(g: Digraph) -> FiniteDds:
    """Invert state_space on functional digraphs, keeping vertex ids."""
    update: list[Optional[int]] = [None] * g.vertex_count
    for u, v in g.edges:
        if update[u] is not None:
            raise DigraphError(f"vertex {u} has more than one outgoing edge")
        update[u] = v
    for u, v in enumerate(update):
        if v is None:
            raise DigraphError(f"vertex {u} has no outgoing edge")
    return make_dds(g.vertex_count, update)


# --- cycle graphs and the maps between them -------------------------------

def cycle_graph(n: int) -> Digraph:
    """The directed cycle on vertices 0..n-1."""
    if n < 1:
        raise DigraphError("cycle graphs need at least one vertex")
    return Digraph(n, tuple(sorted((k, (k + 1) % n) for k in range(n))))


@dataclass(frozen=True)
class CycleMap:
    """The graph map C_dom -> C_cod sending k to k + offset (mod cod).

    Requires cod | dom; this normal form is complete and unique, so
    composition reduces to adding offsets mod the codomain length.
    """

    dom: int
    cod: int
    offset: int

    def __post_init__(self):
        if self.dom < 1 or self.cod < 1 or self.dom % self.cod != 0:
            raise DigraphError(f"no cycle maps C_{self.dom} -> C_{self.cod}")
        if not (0 <= self.offset < self.cod):
            raise DigraphError("offset out of range")

    def __call__(self, k: int) -> int:
        return (k + self.offset) % self.cod

    def vertex_map(self) -> tuple[int, ...]:
        return tuple(self(k) for k in range(self.dom))

    def as_graph_map(self) -> GraphMap:
        return GraphMap(cycle_graph(self.dom), cycle_graph(self.cod),
                        self.vertex_map())

    def sort_key(self):
        return (self.dom, self.cod, self.offset)


def repeat_map(m: int, n: int) -> CycleMap:
    """The offset-zero map C_m -> C_n (k mod n); wraps an n-cycle m/n times."""
    return CycleMap(m, n, 0)


def rotation_map(n: int, i: int) -> CycleMap:
    """The automorphism of C_n adding i."""
    return CycleMap(n, n, i % n)


def cycle_hom_set(m: int, n: int) -> list[CycleMap]:
    """All graph maps C_m -> C_n: empty unless n | m, else one per offset."""
    if m < 1 or n < 1:
        raise DigraphError("cycle lengths must be positive")
    if m % n != 0:
        return []
    return [CycleMap(m, n, i) for i in range(n)]


def compose_cycle_maps(a: CycleMap, b: CycleMap) -> CycleMap:
    """a after b; requires b's codomain to equal a's domain."""
    if b.cod != a.dom:
        raise DigraphError(
            f"cannot compose C_{b.dom}->C_{b.cod} with C_{a.dom}->C_{a.cod}")
    return CycleMap(b.dom, a.cod, (a.offset + b.offset) % a.cod)


# --- products and coproducts ----------------------------------------------

def graph_product(g: Digraph, h: Digraph) -> Digraph:
    """Tensor product: vertex pairs, and edges exactly the pairs of edges."""
    nh = h.vertex_count
    edges = sorted(
        (u1 * nh + u2, v1 * nh + v2)
        for u1, v1 in g.edges
        for u2, v2 in h.edges
    )
    return Digraph(g.vertex_count * nh, tuple(edges))


def graph_coproduct(g: Digraph, h: Digraph) -> Digraph:
    """Disjoint union; h's vertices are offset by g.vertex_count."""
    off = g.vertex_count
    edges = sorted(list(g.edges) + [(u + off, v + off) for u, v in h.edges])
    return Digraph(off + h.vertex_count, tuple(edges))


# --- isomorphism by backtracking search ------------------------------------

def _refine_colors(g: Digraph) -> list[int]:
    """Iterated neighborhood-color refinement; returns a color per vertex."""
    succ = g.successors()
    pred = g.predecessors()
    colors = [(len(succ[v]), len(pred[v])) for v in range(g.vertex_count)]
    for _ in range(g.vertex_count):
        signature = [
            (
                colors[v],
                tuple(sorted(colors[w] for w in succ[v])),
                tuple(sorted(colors[w] for w in pred[v])),
            )
            for v in range(g.vertex_count)
        ]
        palette = {sig: i for i, sig in enumerate(sorted(set(signature)))}
        new = [palette[sig] for sig in signature]
        if new == colors:
            break
        colors = new
    return colors


def find_digraph_isomorphism(g: Digraph, h: Digraph) -> Optional[tuple[int, ...]]:
    """A vertex bijection carrying edges onto edges, or None.

    Backtracking with color-refinement pruning; adequate for the desk-scale
    graphs this library targets (roughly up to a few dozen vertices).
    """
    n = g.vertex_count
    if n != h.vertex_count or g.edge_count != h.edge_count:
        return None
    gc = _refine_colors(g)
    hc = _refine_colors(h)
    if sorted(gc) != sorted(hc):
        return None

    g_succ, g_pred = g.successors(), g.predecessors()
    h_succ = [set(s) for s in h.successors()]
    h_pred = [set(p) for p in h.predecessors()]
    candidates = [[w for w in range(n) if hc[w] == gc[v]] for v in range(n)]
    # most-constrained vertices first
    order = sorted(range(n), key=lambda v: len(candidates[v]))
    mapping: list[Optional[int]] = [None] * n
    used = [False] * n

    def consistent(v: int, w: int) -> bool:
        # loops never become "the other endpoint", so match them here
        if (v in g_succ[v]) != (w in h_succ[w]):
            return False
        for u in g_succ[v]:
            mu = mapping[u]
            if mu is not None and mu not in h_succ[w]:
                return False
        for u in g_pred[v]:
            mu = mapping[u]
            if mu is not None and mu not in h_pred[w]:
                return False
        return True

    def assign(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in candidates[v]:
            if not used[w] and consistent(v, w):
                mapping[v] = w
                used[w] = True
                if assign(k + 1):
                    return True
                mapping[v] = None
                used[w] = False
        return False

    if assign(0):
        return tuple(mapping)  # type: ignore[arg-type]
    return None


def digraphs_isomorphic(g: Digraph, h: Digraph) -> bool:
    return find_digraph_isomorphism(g, h) is not None
