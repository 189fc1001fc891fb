from __future__ import annotations

import numpy as np
import pytest

from semicomm import BACKEND, _fallback, kernels
from semicomm.semigroup import all_rows, ideal

compiled = pytest.importorskip("semicomm._kernels")

BACKENDS = [compiled, _fallback]


def test_backend_selected():
    assert BACKEND in ("compiled", "python")
    assert BACKEND == ("compiled" if kernels._impl is compiled else "python")


@pytest.fixture(scope="module")
def rows():
    return np.ascontiguousarray(ideal(4, 3).rows)


def test_commuting_positions_agree(rows):
    for i in range(0, len(rows), 13):
        a = rows[i]
        want = [j for j in range(len(rows)) if (rows[j][a] == a[rows[j]]).all()]
        for impl in BACKENDS:
            assert impl.commuting_positions(rows, a).tolist() == want


def test_adjacency_agrees(rows):
    ip0, ix0 = compiled.adjacency_csr(rows)
    ip1, ix1 = _fallback.adjacency_csr(rows)
    assert np.array_equal(ip0, ip1)
    assert np.array_equal(ix0, ix1)


@pytest.mark.parametrize("n", [3, 4])
def test_bfs_agrees(n):
    R = np.ascontiguousarray(all_rows(n))
    ip, ix = compiled.adjacency_csr(R)
    src = np.arange(0, len(R), 7, dtype=np.int64)
    for s in src[:10]:
        assert np.array_equal(compiled.bfs_distances(ip, ix, int(s)), _fallback.bfs_distances(ip, ix, int(s)))
    e0, f0 = compiled.bfs_eccentricities(ip, ix, src)
    e1, f1 = _fallback.bfs_eccentricities(ip, ix, src)
    assert np.array_equal(e0, e1)
    assert np.array_equal(f0, f1)


def test_expand_frontier_agrees(rows):
    N = len(rows)
    out = []
    for impl in BACKENDS:
        level = np.full(N, -1, dtype=np.int8)
        parent = np.full(N, -1, dtype=np.int32)
        level[5] = 0
        front = np.array([5], dtype=np.int64)
        layers = []
        for d in range(1, 6):
            front = impl.expand_frontier(rows, front, level, parent, d)
            layers.append(front.tolist())
        out.append((layers, level.tolist(), parent.tolist()))
    assert out[0] == out[1]


def test_pure_mode_subprocess():
    import subprocess
    import sys
    code = "from semicomm import BACKEND; from semicomm.commgraph import diameter, graph; " \
           "from semicomm.semigroup import full; print(BACKEND, diameter(graph(full(4))).value)"
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                          env={**__import__("os").environ, "SEMICOMM_PURE": "1"})
    assert proc.stdout.split() == ["python", "4"]
