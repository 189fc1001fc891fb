"""Commuting graphs of finite semigroups.

Vertices are the non-central elements; two distinct vertices are adjacent when they
commute. Transformation graphs answer adjacency on the fly from the packed rows, so
pairwise distances never need the edge set; diameters materialise a CSR adjacency.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .semigroup import FiniteSemigroup, SizeLimitError, center, idempotent_rows, permutation_rows
from .transform import (
    IdempotentForm,
    Transformation,
    commutes,
    from_idempotent_form,
    idempotent_power,
    image,
    is_idempotent,
    rank,
)

INF = math.inf
EXPORT_MAX = 10_000
DENSE_MAX = 6_000          # graphs up to this many vertices get a materialised CSR for distances
DEFAULT_BUDGET = 2 * 10 ** 11


class BudgetExceeded(RuntimeError):
    """The requested exact computation needs more work than the caller allowed."""

    def __init__(self, needed: float, budget: float, what: str):
        super().__init__(f"{what} needs ~{needed:.3g} work units, budget is {budget:.3g}")
        self.needed = needed
        self.budget = budget


@dataclass(frozen=True)
class PathCertificate:
    """A path given by semigroup indices."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class DistanceResult:
    value: float          # int, or INF when unreachable
    witness: PathCertificate | None = None
    pair: tuple[int, int] | None = None

    @property
    def infinite(self) -> bool:
        return self.value == INF


class CommutingGraph:
    def __init__(self, S: FiniteSemigroup, vertices: np.ndarray, idempotent: bool = False):
        self.S = S
        self.vertices = np.asarray(vertices, dtype=np.int64)
        self.idempotent = idempotent
        self.position = np.full(S.size, -1, dtype=np.int64)
        self.position[self.vertices] = np.arange(len(self.vertices))
        self.rows = None
        if S.rows is not None:
            if len(self.vertices) == S.size:
                self.rows = S.rows
            else:
                self.rows = np.ascontiguousarray(S.rows[self.vertices])
        self._csr: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def empty(self) -> bool:
        return len(self.vertices) == 0

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        kind = "idempotent commuting graph" if self.idempotent else "commuting graph"
        return f"<{kind} of {self.S!r}: {len(self)} vertices>"

    def vertex(self, x) -> int:
        """Resolve an index, element or label to a semigroup index that is a vertex."""
        if isinstance(x, (int, np.integer)):
            i = int(x)
        else:
            i = self.S.index(x)
        if not 0 <= i < self.S.size or self.position[i] < 0:
            raise ValueError(f"{self.S.label(i) if 0 <= i < self.S.size else x} is not a vertex of this graph")
        return i

    def adjacent(self, u, w) -> bool:
        u, w = self.vertex(u), self.vertex(w)
        return u != w and self.S.commute(u, w)

    def neighbors(self, u) -> list[int]:
        u = self.vertex(u)
        p = self.position[u]
        if self._csr is not None:
            ip, ix = self._csr
            return [int(self.vertices[k]) for k in ix[ip[p]:ip[p + 1]]]
        if self.rows is not None:
            hits = kernels.commuting_positions(self.rows, self.rows[p])
        else:
            T = self.S.table
            sub = self.vertices
            hits = np.flatnonzero(T[u, sub] == T[sub, u])
        return [int(self.vertices[h]) for h in hits if h != p]

    # -- materialisation

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) over vertex positions."""
        if self._csr is None:
            if self.rows is not None:
                self._csr = kernels.adjacency_csr(self.rows)
            else:
                T = self.S.table[np.ix_(self.vertices, self.vertices)]
                M = T == T.T
                np.fill_diagonal(M, False)
                indptr = np.zeros(len(M) + 1, dtype=np.int64)
                indptr[1:] = np.cumsum(M.sum(axis=1))
                indices = np.nonzero(M)[1].astype(np.int32)
                self._csr = (indptr, indices)
        return self._csr

    def edge_count(self) -> int:
        return len(self.csr()[1]) // 2


def graph(S: FiniteSemigroup) -> CommutingGraph:
    Z = center(S)
    verts = np.array([i for i in range(S.size) if i not in Z], dtype=np.int64)
    return CommutingGraph(S, verts)


def idempotent_graph(S: FiniteSemigroup) -> CommutingGraph:
    Z = center(S)
    verts = np.array([i for i in S.idempotent_indices().tolist() if i not in Z], dtype=np.int64)
    return CommutingGraph(S, verts, idempotent=True)


# ------------------------------------------------------------------ paths

def is_path(G: CommutingGraph, vertices: Sequence[int]) -> bool:
    vs = list(vertices)
    if not vs or len(set(vs)) != len(vs):
        return False
    try:
        for v in vs:
            G.vertex(v)
    except (ValueError, KeyError):
        return False
    return all(G.S.commute(a, b) for a, b in zip(vs, vs[1:]))


def _greedy_path(G: CommutingGraph, src: int, dist_to_target: np.ndarray) -> tuple[int, ...]:
    """Lexicographically least shortest path, walking down a distance field (positions)."""
    ip, ix = G.csr()
    path = [src]
    cur = src
    while dist_to_target[cur] > 0:
        nb = ix[ip[cur]:ip[cur + 1]]
        cur = int(nb[dist_to_target[nb] == dist_to_target[cur] - 1].min())
        path.append(cur)
    return tuple(int(G.vertices[p]) for p in path)


def distance(G: CommutingGraph, u, w, max_work: float | None = None) -> DistanceResult:
    """Exact distance with a witness path.

    Small graphs use a materialised adjacency and return the lexicographically least
    shortest path. Larger transformation graphs run a layered bidirectional search
    over the implicit adjacency; its witness is deterministic (least meeting vertex,
    first-found parents) but not necessarily lexicographically least.
    """
    u, w = G.vertex(u), G.vertex(w)
    if u == w:
        return DistanceResult(0, PathCertificate((u,)), (u, w))
    pu, pw = int(G.position[u]), int(G.position[w])
    if G._csr is not None or G.rows is None or len(G) <= DENSE_MAX:
        ip, ix = G.csr()
        d = kernels.bfs_distances(ip, ix, pw)
        if d[pu] < 0:
            return DistanceResult(INF, None, (u, w))
        return DistanceResult(int(d[pu]), PathCertificate(_greedy_path(G, pu, d)), (u, w))
    return _bidirectional(G, pu, pw, max_work)


def _bidirectional(G: CommutingGraph, pu: int, pw: int, max_work: float | None) -> DistanceResult:
    V = len(G)
    rows = G.rows
    level = [np.full(V, -1, dtype=np.int8), np.full(V, -1, dtype=np.int8)]
    parent = [np.full(V, -1, dtype=np.int32), np.full(V, -1, dtype=np.int32)]
    level[0][pu] = 0
    level[1][pw] = 0
    front = [np.array([pu], dtype=np.int64), np.array([pw], dtype=np.int64)]
    depth = [0, 0]
    work = 0.0
    while len(front[0]) and len(front[1]):
        side = 0 if len(front[0]) <= len(front[1]) else 1
        work += len(front[side]) * V
        if max_work is not None and work > max_work:
            raise BudgetExceeded(work, max_work, "bidirectional search")
        if depth[side] + 1 > 126:
            raise SizeLimitError("search depth exceeds the level encoding")
        new = kernels.expand_frontier(rows, front[side], level[side], parent[side], depth[side] + 1)
        depth[side] += 1
        other = level[1 - side]
        meets = new[other[new] >= 0]
        if len(meets):
            # every meet realises the same total, see the layering argument in the docs
            m = int(meets.min())
            left = _chain(parent[0], m)[::-1]
            right = _chain(parent[1], m)[1:]
            path = tuple(int(G.vertices[p]) for p in left + right)
            return DistanceResult(depth[0] + depth[1], PathCertificate(path),
                                  (int(G.vertices[pu]), int(G.vertices[pw])))
        front[side] = new
    return DistanceResult(INF, None, (int(G.vertices[pu]), int(G.vertices[pw])))


def _chain(parent: np.ndarray, v: int) -> list[int]:
    out = [v]
    while parent[v] >= 0:
        v = int(parent[v])
        out.append(v)
    return out


def ball_sizes(G: CommutingGraph, u, radius: int) -> list[int]:
    """Sizes of the BFS spheres around u, out to ``radius``."""
    p = int(G.position[G.vertex(u)])
    V = len(G)
    level = np.full(V, -1, dtype=np.int8)
    parent = np.full(V, -1, dtype=np.int32)
    level[p] = 0
    front = np.array([p], dtype=np.int64)
    sizes = [1]
    for d in range(1, radius + 1):
        if not len(front):
            break
        front = kernels.expand_frontier(G.rows, front, level, parent, d)
        sizes.append(len(front))
    return sizes


# --------------------------------------------------------------- diameter

def diameter(G: CommutingGraph, budget: float = DEFAULT_BUDGET, threads: int | None = None,
             chunk: int = 256) -> DistanceResult:
    """Exact diameter from a BFS at every vertex.

    The extremal pair is the least source of maximum eccentricity together with its
    least farthest vertex; the witness is the least shortest path between them.
    Disconnected graphs give INF with a pair from different components.
    """
    V = len(G)
    if V <= 1:
        v = (int(G.vertices[0]),) if V else ()
        return DistanceResult(0, PathCertificate(v) if V else None, (v[0], v[0]) if V else None)
    if G._csr is None and G.rows is not None:
        pre = V * (V - 1) / 2 * G.S.n
        if pre > budget:
            raise BudgetExceeded(pre, budget, "adjacency build")
    ip, ix = G.csr()
    need = float(V) * (V + len(ix))
    if need > budget:
        raise BudgetExceeded(need, budget, "all-sources BFS")

    ecc0, far0 = kernels.bfs_eccentricities(ip, ix, np.array([0], dtype=np.int64))
    if ecc0[0] < 0:
        return _disconnected(G, 0, int(far0[0]))

    sources = np.arange(V, dtype=np.int64)
    blocks = [sources[i:i + chunk] for i in range(0, V, chunk)]
    threads = threads or os.cpu_count() or 1
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: kernels.bfs_eccentricities(ip, ix, b), blocks))
    else:
        parts = [kernels.bfs_eccentricities(ip, ix, b) for b in blocks]
    ecc = np.concatenate([p[0] for p in parts])
    far = np.concatenate([p[1] for p in parts])
    if (ecc < 0).any():
        s = int(np.argmax(ecc < 0))
        return _disconnected(G, s, int(far[s]))
    src = int(np.argmax(ecc))
    dst = int(far[src])
    d = kernels.bfs_distances(ip, ix, dst)
    path = _greedy_path(G, src, d)
    return DistanceResult(int(ecc[src]), PathCertificate(path), (int(G.vertices[src]), int(G.vertices[dst])))


def _disconnected(G: CommutingGraph, p: int, q: int) -> DistanceResult:
    return DistanceResult(INF, None, (int(G.vertices[p]), int(G.vertices[q])))


def eccentricity(G: CommutingGraph, u) -> float:
    ip, ix = G.csr()
    e, _ = kernels.bfs_eccentricities(ip, ix, np.array([G.position[G.vertex(u)]], dtype=np.int64))
    return INF if e[0] < 0 else int(e[0])


def is_connected(G: CommutingGraph, start=None, max_work: float | None = None) -> bool:
    """BFS sweep from ``start`` (default: first vertex) over the implicit adjacency."""
    V = len(G)
    if V <= 1:
        return True
    p = 0 if start is None else int(G.position[G.vertex(start)])
    if G._csr is not None or G.rows is None or V <= DENSE_MAX:
        ip, ix = G.csr()
        return bool((kernels.bfs_distances(ip, ix, p) >= 0).all())
    level = np.full(V, -1, dtype=np.int8)
    parent = np.full(V, -1, dtype=np.int32)
    level[p] = 0
    front = np.array([p], dtype=np.int64)
    seen = 1
    d = 0
    work = 0.0
    while len(front):
        work += len(front) * V
        if max_work is not None and work > max_work:
            raise BudgetExceeded(work, max_work, "connectivity sweep")
        d = min(d + 1, 126)
        front = kernels.expand_frontier(G.rows, front, level, parent, d)
        seen += len(front)
    return seen == V


def component_of(G: CommutingGraph, start) -> list[int]:
    """Semigroup indices of the connected component containing ``start``."""
    p = int(G.position[G.vertex(start)])
    V = len(G)
    level = np.full(V, -1, dtype=np.int8)
    parent = np.full(V, -1, dtype=np.int32)
    level[p] = 0
    front = np.array([p], dtype=np.int64)
    d = 0
    while len(front):
        d = min(d + 1, 126)
        if G.rows is not None:
            front = kernels.expand_frontier(G.rows, front, level, parent, d)
        else:
            ip, ix = G.csr()
            nxt = sorted({int(k) for f in front for k in ix[ip[f]:ip[f + 1]] if level[k] < 0})
            level[nxt] = d
            front = np.array(nxt, dtype=np.int64)
    return [int(G.vertices[i]) for i in np.flatnonzero(level >= 0)]


# ------------------------------------------------- idempotent replacement

def idempotent_path(G: CommutingGraph, path: PathCertificate | Sequence[int]) -> PathCertificate:
    """Replace every interior vertex by its idempotent power.

    Powers keep every commuting relation of the original vertex, so the result is a
    path of the same length whenever the replacements stay distinct, non-central,
    and inside the universe.
    """
    vs = list(path.vertices if isinstance(path, PathCertificate) else path)
    if not is_path(G, vs):
        raise ValueError("input is not a path of this graph")
    S = G.S
    out = [vs[0]]
    for v in vs[1:-1]:
        e = idempotent_power(S.element(v))
        try:
            ei = S.index(e)
        except KeyError:
            raise ValueError(f"idempotent power {e} is outside the semigroup") from None
        out.append(ei)
    if len(vs) > 1:
        out.append(vs[-1])
    if len(set(out)) != len(out) or any(G.position[v] < 0 for v in out):
        raise ValueError("replacement collides or hits the center; the input path was not minimal")
    if not is_path(G, out):
        raise ValueError("replacement broke an edge")
    return PathCertificate(tuple(out))


def connect_idempotents(e: Transformation, f: Transformation, r: int) -> tuple[Transformation, ...]:
    """A path of length at most 3 between idempotents of J_r through idempotents of rank <= r.

    Order of attempts: direct edge, the constant on a shared image point, the rank-2
    bridge when some (x, y) in im(e) x im(f) lies in both kernels, and otherwise the
    two-step bridge through a rank-2 idempotent and the constant c_y.
    """
    n = e.n
    if f.n != n:
        raise ValueError("size mismatch")
    if not (2 <= r < n):
        raise ValueError(f"need 2 <= r < n, got r={r}, n={n}")
    for t in (e, f):
        if not is_idempotent(t):
            raise ValueError(f"{t} is not idempotent")
        if rank(t) > r:
            raise ValueError(f"{t} has rank {rank(t)} > {r}")
    if e == f:
        raise ValueError("endpoints must differ")
    if commutes(e, f):
        return (e, f)
    Ie, If = image(e), image(f)
    shared = sorted(Ie & If)
    if shared:
        return (e, _const(n, shared[0]), f)
    X = frozenset(range(1, n + 1))
    for x in sorted(Ie):
        for y in sorted(If):
            if e(y) == x and f(x) == y:
                g = from_idempotent_form(IdempotentForm.of((Ie, x), (X - Ie, y)))
                return (e, g, f)
    y1 = min(If)
    x1 = e(y1)
    g = from_idempotent_form(IdempotentForm.of((X - {y1}, x1), ({y1}, y1)))
    h = _const(n, y1)
    if h == f:
        return (e, g, f)
    return (e, g, h, f)


def _const(n: int, x: int) -> Transformation:
    return Transformation.from_zero_based([x - 1] * n)


# ------------------------------------------------------ C-operator certificate

@lru_cache(maxsize=4)
def candidate_rows(n: int) -> np.ndarray:
    """Non-identity idempotents followed by non-identity permutations (identity excluded once)."""
    E = idempotent_rows(n)
    G = permutation_rows(n)
    ident = np.arange(n, dtype=np.uint8)
    E = E[~(E == ident).all(axis=1)]
    G = G[~(G == ident).all(axis=1)]
    rows = np.ascontiguousarray(np.concatenate([E, G]))
    rows.setflags(write=False)
    return rows


def candidate_counts(n: int) -> tuple[int, int]:
    E = idempotent_rows(n)
    return len(E) - 1, math.factorial(n) - 1


def _c_indices(n: int, A: Iterable[np.ndarray]) -> np.ndarray:
    rows = candidate_rows(n)
    hit = np.zeros(len(rows), dtype=bool)
    for a in A:
        hit[kernels.commuting_positions(rows, np.ascontiguousarray(a, dtype=np.uint8))] = True
    return np.flatnonzero(hit)


def c_operator(n: int, A: Iterable[Transformation]) -> frozenset[Transformation]:
    """All non-identity idempotents and permutations commuting with some member of A."""
    rows = candidate_rows(n)
    idx = _c_indices(n, [np.array(a.img0, dtype=np.uint8) for a in A])
    return frozenset(Transformation.from_zero_based(rows[i].tolist()) for i in idx)


@dataclass(frozen=True)
class CertificateResult:
    holds: bool
    size_ca: int
    size_cca: int
    size_cb: int
    witness: tuple[Transformation, Transformation] | None = None


def lower_bound_certificate(n: int, a: Transformation, b: Transformation,
                            detail: bool = False) -> bool | CertificateResult:
    """True when no member of C(C({a})) commutes with a member of C({b})."""
    rows = candidate_rows(n)
    ca = _c_indices(n, [np.array(a.img0, dtype=np.uint8)])
    cca = _c_indices(n, rows[ca])
    cb = _c_indices(n, [np.array(b.img0, dtype=np.uint8)])
    sub = np.ascontiguousarray(rows[cca])
    witness = None
    for d in cb:
        hits = kernels.commuting_positions(sub, rows[d])
        if len(hits):
            c = sub[hits[0]]
            witness = (Transformation.from_zero_based(c.tolist()), Transformation.from_zero_based(rows[d].tolist()))
            break
    holds = witness is None
    if detail:
        return CertificateResult(holds, len(ca), len(cca), len(cb), witness)
    return holds


# ----------------------------------------------------------------- export

@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def edge_labels(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset((self.vertices[i], self.vertices[j])) for i, j in self.edges)


def labeled(G: CommutingGraph) -> LabeledGraph:
    if len(G) > EXPORT_MAX:
        raise SizeLimitError(f"{len(G)} vertices exceeds the export guard {EXPORT_MAX}")
    ip, ix = G.csr()
    labels = tuple(G.S.label(int(v)) for v in G.vertices)
    edges = []
    for i in range(len(G)):
        for j in ix[ip[i]:ip[i + 1]]:
            if i < j:
                edges.append((i, int(j)))
    return LabeledGraph(labels, tuple(sorted(edges)))


def export(G: CommutingGraph, format: str = "json") -> bytes:
    L = labeled(G)
    if format == "json":
        return json.dumps({"vertices": list(L.vertices), "edges": [list(e) for e in L.edges]}).encode()
    if format == "dot":
        lines = ["graph G {"]
        lines += [f'  {json.dumps(v)};' for v in L.vertices]
        lines += [f"  {json.dumps(L.vertices[i])} -- {json.dumps(L.vertices[j])};" for i, j in L.edges]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown export format {format!r}")


def import_json(data: bytes | str) -> LabeledGraph:
    obj = json.loads(data)
    verts = tuple(str(v) for v in obj["vertices"])
    edges = []
    for i, j in obj["edges"]:
        if not (0 <= i < j < len(verts)):
            raise ValueError(f"bad edge {[i, j]}")
        edges.append((int(i), int(j)))
    return LabeledGraph(verts, tuple(sorted(edges)))
