"""Compare the compiled kernels with the numpy/scipy fallback.

    python benchmarks/bench_kernels.py [--n 5] [--r 4] [--repeat 3]

Each routine runs on the same inputs under both backends; outputs are checked for
equality before timings are reported.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

import numpy as np

from semicomm import _fallback
from semicomm.semigroup import ideal

try:
    from semicomm import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def timed(fn, repeat: int):
    best = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best.append(time.perf_counter() - t0)
    return out, min(best), statistics.median(best)


def _same(x, y) -> bool:
    if isinstance(x, tuple):
        return all(_same(a, b) for a, b in zip(x, y))
    return np.array_equal(np.asarray(x), np.asarray(y))


def workloads(rows: np.ndarray, ip: np.ndarray, ix: np.ndarray, sources: np.ndarray):
    """(name, callable taking a backend module) pairs."""
    def frontier(impl):
        N = len(rows)
        level = np.full(N, -1, dtype=np.int8)
        parent = np.full(N, -1, dtype=np.int32)
        level[0] = 0
        front = np.array([0], dtype=np.int64)
        layers = []
        for d in range(1, 4):
            front = impl.expand_frontier(rows, front, level, parent, d)
            layers.append(len(front))
        return np.array(layers)

    return [
        ("commuting_positions x50", lambda m: np.concatenate([m.commuting_positions(rows, rows[i])
                                                             for i in range(0, len(rows), max(1, len(rows) // 50))])),
        ("adjacency_csr", lambda m: m.adjacency_csr(rows)),
        ("bfs_distances x20", lambda m: np.concatenate([m.bfs_distances(ip, ix, int(s)) for s in sources[:20]])),
        ("bfs_eccentricities", lambda m: m.bfs_eccentricities(ip, ix, sources)),
        ("expand_frontier 3 layers", frontier),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--r", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sources", type=int, default=256)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled extension not available; nothing to compare", file=sys.stderr)
        return 1

    S = ideal(args.n, args.r)
    rows = np.ascontiguousarray(S.rows)
    ip, ix = compiled.adjacency_csr(rows)
    sources = np.arange(min(args.sources, len(rows)), dtype=np.int64)
    print(f"J_{args.r} on {args.n} points: {len(rows)} elements, {len(ix) // 2} edges")
    print(f"{'routine':28s} {'compiled':>12s} {'fallback':>12s} {'speedup':>9s}")
    for name, fn in workloads(rows, ip, ix, sources):
        out_c, tc, _ = timed(lambda: fn(compiled), args.repeat)
        out_f, tf, _ = timed(lambda: fn(_fallback), args.repeat)
        if not _same(out_c, out_f):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name:28s} {tc * 1e3:10.1f}ms {tf * 1e3:10.1f}ms {tf / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
