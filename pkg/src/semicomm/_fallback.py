"""numpy/scipy implementations of the kernel routines, used when the compiled core is absent."""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path


def commuting_positions(rows: np.ndarray, a: np.ndarray) -> np.ndarray:
    mask = (rows[:, a] == a[rows]).all(axis=1)
    return np.flatnonzero(mask).astype(np.int64)


def adjacency_csr(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    N = rows.shape[0]
    nbrs = []
    for u in range(N):
        hits = commuting_positions(rows, rows[u])
        nbrs.append(hits[hits != u])
    indptr = np.zeros(N + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(h) for h in nbrs])
    indices = np.concatenate(nbrs).astype(np.int32) if N else np.empty(0, np.int32)
    return indptr, indices


def _matrix(indptr: np.ndarray, indices: np.ndarray) -> csr_matrix:
    N = len(indptr) - 1
    data = np.ones(len(indices), dtype=np.int8)
    return csr_matrix((data, indices, indptr), shape=(N, N))


def bfs_distances(indptr: np.ndarray, indices: np.ndarray, source: int) -> np.ndarray:
    d = shortest_path(_matrix(indptr, indices), unweighted=True, directed=False, indices=[source])[0]
    out = np.where(np.isinf(d), -1, d).astype(np.int32)
    return out


def bfs_eccentricities(indptr, indices, sources, chunk: int = 128):
    A = _matrix(indptr, indices)
    sources = np.asarray(sources, dtype=np.int64)
    ecc = np.empty(len(sources), dtype=np.int32)
    far = np.empty(len(sources), dtype=np.int32)
    for lo in range(0, len(sources), chunk):
        block = sources[lo:lo + chunk]
        D = shortest_path(A, unweighted=True, directed=False, indices=block)
        for i, row in enumerate(D):
            bad = np.isinf(row)
            if bad.any():
                ecc[lo + i] = -1
                far[lo + i] = int(np.argmax(bad))
            else:
                m = int(row.max())
                ecc[lo + i] = m
                far[lo + i] = int(np.argmax(row == m))
    return ecc, far


def expand_frontier(rows, frontier, level, parent, new_level):
    found = []
    for f in frontier:
        a = rows[f]
        unvisited = np.flatnonzero(level < 0)
        if len(unvisited) == 0:
            break
        sub = rows[unvisited]
        hit = unvisited[(sub[:, a] == a[sub]).all(axis=1)]
        level[hit] = new_level
        parent[hit] = f
        found.append(hit)
    if not found:
        return np.empty(0, dtype=np.int64)
    out = np.concatenate(found).astype(np.int64)
    out.sort()
    return out
