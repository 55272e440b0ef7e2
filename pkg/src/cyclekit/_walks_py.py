"""Pure-Python closed-walk enumeration (fallback for the compiled kernel).

Both implementations must produce identical output: all closed walks of the
requested length, as vertex tuples with a marked start, in lexicographic
order.  Keep this module dependency-free and in lockstep with _walks_c.pyx.
"""

from __future__ import annotations


class WalkCapExceeded(RuntimeError):
    """Raised when an enumeration would produce more walks than allowed."""


def enumerate_closed_walks(successors, length, cap=None):
    """All closed walks (v0, ..., v_{length-1}) with each step an edge.

    `successors` is a sequence of ascending successor sequences per vertex.
    Walks are emitted in lexicographic order.  If `cap` is given and the
    number of walks would exceed it, WalkCapExceeded is raised.
    """
    if length < 1:
        raise ValueError("walk length must be positive")
    succ = [tuple(s) for s in successors]
    n = len(succ)
    out: list[tuple[int, ...]] = []
    path = [0] * length
    last = length - 1

    def extend(v: int, depth: int, start: int) -> None:
        path[depth] = v
        if depth == last:
            if _has(succ[v], start):
                if cap is not None and len(out) >= cap:
                    raise WalkCapExceeded(
                        f"more than {cap} closed walks of length {length}")
                out.append(tuple(path))
            return
        for w in succ[v]:
            extend(w, depth + 1, start)

    for v0 in range(n):
        extend(v0, 0, v0)
    return out


def _has(sorted_seq, x) -> bool:
    lo, hi = 0, len(sorted_seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_seq[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(sorted_seq) and sorted_seq[lo] == x
