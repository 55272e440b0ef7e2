# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled closed-walk enumeration kernel.

Mirror of _walks_py.enumerate_closed_walks: same arguments, same output,
same lexicographic order, same cap behaviour.  The DFS runs over a CSR
adjacency copy with C integer arrays; only accepted walks touch Python.
"""

from libc.stdlib cimport malloc, free

from cyclekit._walks_py import WalkCapExceeded


def enumerate_closed_walks(successors, length, cap=None):
    """All closed walks of the given length, as vertex tuples, lex-sorted."""
    if length < 1:
        raise ValueError("walk length must be positive")

    cdef int n = len(successors)
    cdef int L = length
    cdef long long limit = -1 if cap is None else <long long> cap

    # build CSR adjacency
    cdef int total = 0
    for row in successors:
        total += len(row)
    cdef int *offsets = <int *> malloc((n + 1) * sizeof(int))
    cdef int *targets = <int *> malloc((total if total > 0 else 1) * sizeof(int))
    cdef int *path = <int *> malloc(L * sizeof(int))
    cdef int *cursor = <int *> malloc(L * sizeof(int))
    if offsets == NULL or targets == NULL or path == NULL or cursor == NULL:
        free(offsets); free(targets); free(path); free(cursor)
        raise MemoryError()

    cdef int i = 0, j, v, w, depth, start
    cdef long long count = 0
    out = []
    try:
        offsets[0] = 0
        for j in range(n):
            row = successors[j]
            for w in row:
                targets[i] = w
                i += 1
            offsets[j + 1] = i

        for start in range(n):
            depth = 0
            path[0] = start
            cursor[0] = offsets[start]
            while depth >= 0:
                v = path[depth]
                if depth == L - 1:
                    # close the walk if there is an edge back to the start
                    if _binary_search(targets, offsets[v], offsets[v + 1], start):
                        if limit >= 0 and count >= limit:
                            raise WalkCapExceeded(
                                "more than %d closed walks of length %d"
                                % (cap, length))
                        out.append(tuple([path[j] for j in range(L)]))
                        count += 1
                    depth -= 1
                    continue
                if cursor[depth] < offsets[v + 1]:
                    w = targets[cursor[depth]]
                    cursor[depth] += 1
                    depth += 1
                    path[depth] = w
                    cursor[depth] = offsets[w]
                else:
                    depth -= 1
        return out
    finally:
        free(offsets)
        free(targets)
        free(path)
        free(cursor)


cdef bint _binary_search(int *arr, int lo, int hi, int x):
    cdef int mid
    cdef int end = hi
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < end and arr[lo] == x
