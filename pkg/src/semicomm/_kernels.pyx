# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot loops: commuting scans over packed transformation rows and BFS on CSR graphs.

Rows are C-contiguous uint8 arrays of 0-based images. Every function here has a
twin in ``_fallback`` with identical results.
"""

import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector
from libc.stdint cimport int8_t, int32_t, int64_t, uint8_t

cnp.import_array()


cdef inline bint _commute(const uint8_t[:, ::1] rows, Py_ssize_t u, const uint8_t[::1] a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t x
    for x in range(n):
        # (x a) u == (x u) a
        if rows[u, a[x]] != a[rows[u, x]]:
            return False
    return True


cdef inline bint _commute_rows(const uint8_t[:, ::1] rows, Py_ssize_t u, Py_ssize_t v, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t x
    for x in range(n):
        if rows[u, rows[v, x]] != rows[v, rows[u, x]]:
            return False
    return True


def commuting_positions(const uint8_t[:, ::1] rows, const uint8_t[::1] a):
    """Sorted positions of rows commuting with ``a``."""
    cdef Py_ssize_t N = rows.shape[0], n = rows.shape[1], u
    cdef vector[int64_t] hits
    with nogil:
        for u in range(N):
            if _commute(rows, u, a, n):
                hits.push_back(u)
    out = np.empty(hits.size(), dtype=np.int64)
    cdef int64_t[::1] ov = out
    for u in range(<Py_ssize_t>hits.size()):
        ov[u] = hits[u]
    return out


def adjacency_csr(const uint8_t[:, ::1] rows):
    """Symmetric CSR (indptr, indices) of the commuting relation, no loops."""
    cdef Py_ssize_t N = rows.shape[0], n = rows.shape[1], u, v, k
    cdef vector[int32_t] src
    cdef vector[int32_t] dst
    with nogil:
        for u in range(N):
            for v in range(u + 1, N):
                if _commute_rows(rows, u, v, n):
                    src.push_back(<int32_t>u)
                    dst.push_back(<int32_t>v)
    cdef Py_ssize_t m = src.size()
    indptr = np.zeros(N + 1, dtype=np.int64)
    cdef int64_t[::1] ip = indptr
    for k in range(m):
        ip[src[k] + 1] += 1
        ip[dst[k] + 1] += 1
    for u in range(N):
        ip[u + 1] += ip[u]
    indices = np.empty(2 * m, dtype=np.int32)
    cdef int32_t[::1] ix = indices
    cursor = indptr[:-1].copy()
    cdef int64_t[::1] cur = cursor
    # pairs arrive sorted by (u, v); fill both directions keeping rows sorted
    for k in range(m):
        u = src[k]
        v = dst[k]
        ix[cur[v]] = <int32_t>u
        cur[v] += 1
    for k in range(m):
        u = src[k]
        v = dst[k]
        ix[cur[u]] = <int32_t>v
        cur[u] += 1
    return indptr, indices


cdef void _bfs(const int64_t[::1] indptr, const int32_t[::1] indices, Py_ssize_t source,
               int32_t[::1] dist, int32_t[::1] queue) noexcept nogil:
    cdef Py_ssize_t N = dist.shape[0], head = 0, tail = 0, u, k, w
    for u in range(N):
        dist[u] = -1
    dist[source] = 0
    queue[tail] = <int32_t>source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue[tail] = <int32_t>w
                tail += 1


def bfs_distances(const int64_t[::1] indptr, const int32_t[::1] indices, Py_ssize_t source):
    cdef Py_ssize_t N = indptr.shape[0] - 1
    dist = np.empty(N, dtype=np.int32)
    queue = np.empty(N, dtype=np.int32)
    cdef int32_t[::1] dv = dist
    cdef int32_t[::1] qv = queue
    with nogil:
        _bfs(indptr, indices, source, dv, qv)
    return dist


def bfs_eccentricities(const int64_t[::1] indptr, const int32_t[::1] indices, const int64_t[::1] sources):
    """Per source: eccentricity (-1 if some vertex is unreachable) and the least
    vertex realising it (least unreachable vertex when disconnected)."""
    cdef Py_ssize_t N = indptr.shape[0] - 1, S = sources.shape[0], i, u
    cdef int32_t best, d
    cdef Py_ssize_t far
    ecc = np.empty(S, dtype=np.int32)
    farthest = np.empty(S, dtype=np.int32)
    dist = np.empty(N, dtype=np.int32)
    queue = np.empty(N, dtype=np.int32)
    cdef int32_t[::1] ev = ecc
    cdef int32_t[::1] fv = farthest
    cdef int32_t[::1] dv = dist
    cdef int32_t[::1] qv = queue
    with nogil:
        for i in range(S):
            _bfs(indptr, indices, sources[i], dv, qv)
            best = 0
            far = sources[i]
            for u in range(N):
                d = dv[u]
                if d < 0:
                    best = -1
                    far = u
                    break
                if d > best:
                    best = d
                    far = u
            ev[i] = best
            fv[i] = <int32_t>far
    return ecc, farthest


def expand_frontier(const uint8_t[:, ::1] rows, const int64_t[::1] frontier,
                    int8_t[::1] level, int32_t[::1] parent, int8_t new_level):
    """One BFS layer over the implicit commuting graph.

    Every unvisited row commuting with some frontier vertex gets ``new_level`` and,
    as parent, the first such frontier vertex in frontier order.
    """
    cdef Py_ssize_t N = rows.shape[0], n = rows.shape[1], F = frontier.shape[0], i, u, f
    cdef vector[int64_t] found
    with nogil:
        for i in range(F):
            f = frontier[i]
            for u in range(N):
                if level[u] < 0 and _commute_rows(rows, u, f, n):
                    level[u] = new_level
                    parent[u] = <int32_t>f
                    found.push_back(u)
    out = np.empty(found.size(), dtype=np.int64)
    cdef int64_t[::1] ov = out
    for i in range(<Py_ssize_t>found.size()):
        ov[i] = found[i]
    out.sort()
    return out
