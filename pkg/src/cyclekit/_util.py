"""Small shared helpers: number theory, ordering keys, union-find."""

from __future__ import annotations


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def totient(n: int) -> int:
    """Euler's totient by trial division (fine for desk-scale n)."""
    result = n
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def canonical_key(value):
    """Total order on the heterogeneous element types used in cycle sets.

    Elements of a level may be int, str, tuples (walks, tagged pairs) or
    small frozen objects exposing a `sort_key()`.  The key is a nested tuple
    whose first entry ranks the type, so mixed levels still sort stably.
    """
    if isinstance(value, bool):
        return (0, int(value))
    if isinstance(value, int):
        return (0, value)
    if isinstance(value, str):
        return (1, value)
    if isinstance(value, tuple):
        return (2, tuple(canonical_key(v) for v in value))
    key = getattr(value, "sort_key", None)
    if key is not None:
        return (3, key())
    return (4, repr(value))


class UnionFind:
    """Union-find with path compression and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        i, j = self.find(i), self.find(j)
        if i == j:
            return
        if self.size[i] < self.size[j]:
            i, j = j, i
        self.parent[j] = i
        self.size[i] += self.size[j]
