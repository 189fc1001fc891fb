"""Left paths, knit degree, and the quasi-identities (1) and (A_n).

An l-path is a path a_1 - ... - a_m of the commuting graph with a_1 != a_m and
a_1 a_i = a_m a_i for every i. For a band with empty center, (A_n) holds exactly
when there is no l-path of length < n, so ``check_An`` has two engines that can be
cross-checked.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .semigroup import FiniteSemigroup, center, is_band

ENGINES = ("naive", "lpath", "tuples")


@dataclass(frozen=True)
class LPath:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def labels(self, S: FiniteSemigroup) -> list[str]:
        return [S.label(v) for v in self.vertices]

    def reversed(self) -> "LPath":
        return LPath(self.vertices[::-1])


@dataclass(frozen=True)
class QuasiIdentityReport:
    """Outcome of checking one quasi-identity.

    ``identity`` is ``"1"`` or ``"A<n>"``. A failing report carries the falsifying
    tuple, ``(z, x, y)`` for (1) and ``(x_1, ..., x_n)`` for (A_n), and the number of
    the violated clause: premises are numbered first, so the conclusion of (1) is
    clause 2 and the conclusion of (A_n) is clause 2n.
    """

    identity: str
    holds: bool
    witness: tuple[int, ...] | None = None
    clause: int | None = None

    def labels(self, S: FiniteSemigroup) -> list[str] | None:
        return None if self.witness is None else [S.label(v) for v in self.witness]


def _table(S: FiniteSemigroup) -> np.ndarray:
    return np.asarray(S.table)


def _commute_matrix(T: np.ndarray) -> np.ndarray:
    return T == T.T


# ------------------------------------------------------------------ l-paths

def is_lpath(S: FiniteSemigroup, vertices: Sequence[int], include_central: bool = False) -> bool:
    """Check the three l-path clauses. ``include_central`` lets central elements
    appear on the chain, which is the relaxation (A_n) itself quantifies over."""
    vs = [int(v) for v in vertices]
    if len(vs) < 2 or vs[0] == vs[-1] or len(set(vs)) != len(vs):
        return False
    if any(not 0 <= v < S.size for v in vs):
        return False
    if not include_central and set(vs) & center(S):
        return False
    first, last = vs[0], vs[-1]
    for u, w in zip(vs, vs[1:]):
        if not S.commute(u, w):
            return False
    return all(S.mul(first, v) == S.mul(last, v) for v in vs)


def _bfs_field(C: np.ndarray, allowed: np.ndarray, target: int) -> np.ndarray:
    """Distance to ``target`` inside the allowed vertex set (-1 when unreachable)."""
    N = len(allowed)
    dist = np.full(N, -1, dtype=np.int64)
    dist[target] = 0
    q = deque([target])
    while q:
        u = q.popleft()
        for v in np.flatnonzero(C[u] & allowed & (dist < 0)):
            dist[v] = dist[u] + 1
            q.append(int(v))
    return dist


def _least_path(C: np.ndarray, dist: np.ndarray, source: int) -> tuple[int, ...]:
    path = [source]
    u = source
    while dist[u] > 0:
        u = int(np.flatnonzero(C[u] & (dist == dist[u] - 1))[0])
        path.append(u)
    return tuple(path)


def _anchored_search(T: np.ndarray, C: np.ndarray, vertices: np.ndarray) -> list[tuple[int, int, tuple[int, ...]]]:
    """Shortest anchored chain for every admissible ordered endpoint pair.

    A pair (u, w), u != w, is admissible when uu = wu and uw = ww; the chain runs
    through vertices v with uv = wv. Returns (u, w, lexicographically least path).
    """
    C = C.copy()
    np.fill_diagonal(C, False)
    out = []
    vset = np.zeros(len(T), dtype=bool)
    vset[vertices] = True
    for u in vertices:
        for w in vertices:
            if u == w or T[u, u] != T[w, u] or T[u, w] != T[w, w]:
                continue
            allowed = vset & (T[u] == T[w])
            dist = _bfs_field(C, allowed, int(w))
            if dist[u] > 0:
                out.append((int(u), int(w), _least_path(C, dist, int(u))))
    return out


def _central_mask(S: FiniteSemigroup) -> np.ndarray:
    mask = np.zeros(S.size, dtype=bool)
    mask[list(center(S))] = True
    return mask


def _candidate_vertices(S: FiniteSemigroup, include_central: bool) -> np.ndarray:
    if include_central:
        return np.arange(S.size)
    return np.flatnonzero(~_central_mask(S))


@dataclass(frozen=True)
class KnitDegree:
    value: int | None
    witness: LPath | None

    @property
    def absent(self) -> bool:
        return self.value is None


def knit_degree(S: FiniteSemigroup, include_central: bool = False) -> KnitDegree:
    """Length of a shortest l-path (absent if there is none), with the
    lexicographically least shortest witness."""
    T = _table(S)
    found = _anchored_search(T, _commute_matrix(T), _candidate_vertices(S, include_central))
    if not found:
        return KnitDegree(None, None)
    best = min((len(p), p) for _, _, p in found)[1]
    return KnitDegree(len(best) - 1, LPath(best))


def minimal_lpath_endpoints(S: FiniteSemigroup, include_central: bool = False) -> list[tuple[int, int, int]]:
    """(u, w, length of a shortest l-path from u to w) for every ordered pair joined by an l-path."""
    T = _table(S)
    return [(u, w, len(p) - 1) for u, w, p in
            _anchored_search(T, _commute_matrix(T), _candidate_vertices(S, include_central))]


def minimal_lpaths(S: FiniteSemigroup, include_central: bool = False) -> list[LPath]:
    """The least shortest l-path for each ordered endpoint pair."""
    T = _table(S)
    return [LPath(p) for _, _, p in _anchored_search(T, _commute_matrix(T), _candidate_vertices(S, include_central))]


# ------------------------------------------------------- quasi-identities

def check_quasi_identity_1(S: FiniteSemigroup) -> QuasiIdentityReport:
    """(1): zx = zy implies xy = yx. Witness is the least falsifying (z, x, y)."""
    T = _table(S)
    C = _commute_matrix(T)
    for z in range(S.size):
        bad = (T[z][:, None] == T[z][None, :]) & ~C
        if bad.any():
            x, y = np.argwhere(bad)[0]
            return QuasiIdentityReport("1", False, (z, int(x), int(y)), 2)
    return QuasiIdentityReport("1", True)


def _pad(chain: tuple[int, ...], n: int) -> tuple[int, ...]:
    return chain + (chain[-1],) * (n - len(chain))


def check_An(S: FiniteSemigroup, n: int, engine: str = "naive") -> QuasiIdentityReport:
    """(A_n): a commuting chain x_1 - ... - x_n with x_1 x_i = x_n x_i for all i forces x_1 = x_n.

    Engines: ``naive`` (anchored search over all of S), ``lpath`` (bands with empty
    center only: fails iff there is an l-path of length < n) and ``tuples`` (every
    n-tuple; small S only).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    name = f"A{n}"
    if engine == "naive":
        if n <= 1:
            return QuasiIdentityReport(name, True)
        T = _table(S)
        found = [p for _, _, p in _anchored_search(T, _commute_matrix(T), np.arange(S.size)) if len(p) <= n]
        if not found:
            return QuasiIdentityReport(name, True)
        best = min((len(p), p) for p in found)[1]
        return QuasiIdentityReport(name, False, _pad(best, n), 2 * n)
    if engine == "lpath":
        if not is_band(S) or center(S):
            raise ValueError("the l-path engine needs a band with empty center")
        kd = knit_degree(S)
        if kd.absent or kd.value >= n:
            return QuasiIdentityReport(name, True)
        return QuasiIdentityReport(name, False, _pad(kd.witness.vertices, n), 2 * n)
    if engine == "tuples":
        return _check_An_tuples(S, n)
    raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")


def _check_An_tuples(S: FiniteSemigroup, n: int) -> QuasiIdentityReport:
    T = _table(S)
    C = _commute_matrix(T)
    for xs in itertools.product(range(S.size), repeat=n):
        if xs[0] != xs[-1] and _premises_hold(T, C, xs):
            return QuasiIdentityReport(f"A{n}", False, xs, 2 * n)
    return QuasiIdentityReport(f"A{n}", True)


def _premises_hold(T: np.ndarray, C: np.ndarray, xs: Sequence[int]) -> bool:
    if not all(C[a, b] for a, b in zip(xs, xs[1:])):
        return False
    return all(T[xs[0], v] == T[xs[-1], v] for v in xs)


def falsifies(S: FiniteSemigroup, report: QuasiIdentityReport) -> bool:
    """Re-evaluate a failing report's witness by direct multiplication."""
    if report.witness is None:
        return False
    w = report.witness
    if report.identity == "1":
        z, x, y = w
        return S.mul(z, x) == S.mul(z, y) and not S.commute(x, y)
    chain_ok = all(S.commute(a, b) for a, b in zip(w, w[1:]))
    anchored = all(S.mul(w[0], v) == S.mul(w[-1], v) for v in w)
    return chain_ok and anchored and w[0] != w[-1]


def r_semisimple_band_check(S: FiniteSemigroup) -> QuasiIdentityReport:
    """(1) together with every (A_n), n <= |S|; returns the first failing check."""
    if not is_band(S):
        raise ValueError("r_semisimple_band_check needs a band")
    q1 = check_quasi_identity_1(S)
    if not q1.holds:
        return q1
    for n in range(1, S.size + 1):
        rep = check_An(S, n)
        if not rep.holds:
            return rep
    return QuasiIdentityReport("r-semisimple", True)
