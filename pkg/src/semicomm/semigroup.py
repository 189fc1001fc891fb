"""Finite semigroups: full T(n), the rank ideals J_r, closures of transformation
generators, and abstract Cayley tables.

Elements are addressed by index. Transformation backends keep their universe as a
``(size, n)`` uint8 array of 0-based images; Cayley backends keep the table.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .transform import MAX_PACKED_N, Transformation

MAX_ENUMERATE_N = 7
MAX_TABLE_SIZE = 10_000


class SizeLimitError(RuntimeError):
    """Raised when an operation would need a universe or table beyond its guard."""


class UniverseError(RuntimeError):
    """A product fell outside the declared universe (a closure bug, never user error)."""


# --------------------------------------------------------------------- rows

def all_rows(n: int) -> np.ndarray:
    """Every map on n points, lexicographic order."""
    if n > MAX_ENUMERATE_N:
        raise SizeLimitError(f"T({n}) has {n ** n} elements; enumeration is capped at n={MAX_ENUMERATE_N}")
    N = n ** n
    idx = np.arange(N, dtype=np.int64)
    rows = np.empty((N, n), dtype=np.uint8)
    for i in range(n - 1, -1, -1):
        rows[:, i] = idx % n
        idx //= n
    return rows


def row_ranks(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    s = np.sort(rows, axis=1)
    return 1 + (np.diff(s, axis=1) != 0).sum(axis=1)


def row_codes(rows: np.ndarray, n: int | None = None) -> np.ndarray:
    n = rows.shape[1] if n is None else n
    if n > MAX_PACKED_N:
        raise SizeLimitError(f"packed codes are limited to n <= {MAX_PACKED_N}")
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return rows.astype(np.int64) @ weights


def idempotent_rows(n: int, max_rank: int | None = None) -> np.ndarray:
    """All idempotents of T(n) (optionally of rank <= max_rank), lexicographic order."""
    max_rank = n if max_rank is None else max_rank
    blocks = []
    pts = range(n)
    for k in range(1, max_rank + 1):
        for img in itertools.combinations(pts, k):
            rest = [x for x in pts if x not in img]
            if rest:
                choices = np.array(list(itertools.product(img, repeat=len(rest))), dtype=np.uint8)
            else:
                choices = np.empty((1, 0), dtype=np.uint8)
            block = np.empty((len(choices), n), dtype=np.uint8)
            block[:, list(img)] = np.array(img, dtype=np.uint8)
            if rest:
                block[:, rest] = choices
            blocks.append(block)
    rows = np.concatenate(blocks)
    return rows[np.argsort(row_codes(rows), kind="stable")]


def permutation_rows(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.uint8).reshape(-1, n)


def ideal_size(n: int, r: int) -> int:
    """Number of maps of rank <= r: sum of C(n,k) k! S(n,k)."""
    return sum(math.comb(n, k) * math.factorial(k) * stirling2(n, k) for k in range(1, r + 1))


def stirling2(n: int, k: int) -> int:
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1)) // math.factorial(k)


# --------------------------------------------------------------- semigroups

@dataclass(frozen=True)
class CayleyTable:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        N = len(self.names)
        if len(self.table) != N or any(len(row) != N for row in self.table):
            raise ValueError("Cayley table must be square and match the element list")
        for row in self.table:
            for v in row:
                if not 0 <= v < N:
                    raise ValueError(f"table entry {v} out of range")

    @classmethod
    def from_rows(cls, names: Sequence[str], table: Iterable[Iterable[int]]) -> "CayleyTable":
        return cls(tuple(names), tuple(tuple(int(v) for v in row) for row in table))

    @classmethod
    def from_letters(cls, names: Sequence[str], rows: Sequence[str]) -> "CayleyTable":
        """Table written with element names, one whitespace-separated row per element."""
        pos = {nm: i for i, nm in enumerate(names)}
        return cls.from_rows(names, [[pos[tok] for tok in row.split()] for row in rows])

    def to_json(self) -> str:
        return json.dumps({"elements": list(self.names), "table": [list(r) for r in self.table]})

    @classmethod
    def from_json(cls, text: str) -> "CayleyTable":
        data = json.loads(text)
        if not isinstance(data, dict) or "elements" not in data or "table" not in data:
            raise ValueError('Cayley JSON needs "elements" and "table"')
        return cls.from_rows([str(x) for x in data["elements"]], data["table"])


def validate_associativity(t: CayleyTable | np.ndarray) -> tuple[int, int, int] | None:
    """First triple (x, y, z), in lexicographic scan order, with (xy)z != x(yz); None if associative."""
    T = np.asarray(t.table if isinstance(t, CayleyTable) else t, dtype=np.int64)
    N = T.shape[0]
    for x in range(N):
        left = T[T[x]]            # left[y, z] = (xy)z
        right = T[x][T]           # right[y, z] = x(yz)
        bad = np.argwhere(left != right)
        if len(bad):
            y, z = bad[0]
            return (x, int(y), int(z))
    return None


class FiniteSemigroup:
    """Indexed finite semigroup.

    ``kind`` is one of ``full``, ``ideal``, ``generated``, ``cayley``. Use the module
    constructors rather than instantiating directly.
    """

    def __init__(self, kind: str, *, n: int | None = None, r: int | None = None,
                 rows: np.ndarray | None = None, table: np.ndarray | None = None,
                 names: Sequence[str] | None = None, generators: Sequence[int] = (),
                 words: dict[int, tuple[int, ...]] | None = None):
        self.kind = kind
        self.n = n
        self.r = r
        self.rows = None if rows is None else np.ascontiguousarray(rows, dtype=np.uint8)
        self._table = None if table is None else np.asarray(table, dtype=np.int32)
        self.names = None if names is None else tuple(names)
        self.generators = tuple(generators)
        self.words = words
        self._codes = None
        self._row_index: dict[bytes, int] | None = None
        if self.rows is not None:
            if kind in ("full", "ideal"):
                self._codes = row_codes(self.rows)
                if len(self._codes) > 1 and not (np.diff(self._codes) > 0).all():
                    raise ValueError("full/ideal universes must be in canonical order")
            else:
                # keyed by raw row bytes so any n works
                self._row_index = {self.rows[i].tobytes(): i for i in range(len(self.rows))}
        self.size = len(self.rows) if self.rows is not None else len(self._table)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        extra = f" n={self.n}" if self.n is not None else ""
        if self.r is not None:
            extra += f" r={self.r}"
        return f"<FiniteSemigroup {self.kind}{extra} size={self.size}>"

    @property
    def is_transformation(self) -> bool:
        return self.rows is not None

    def element(self, i: int):
        if self.rows is not None:
            return Transformation.from_zero_based(self.rows[i].tolist())
        return self.names[i]

    def elements(self) -> list:
        return [self.element(i) for i in range(self.size)]

    def label(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        return str(self.element(i))

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.size)]

    def index(self, x) -> int:
        """Index of an element (Transformation, 1-based image list, or name)."""
        if self.rows is None or isinstance(x, str):
            if self.names is None:
                raise KeyError(x)
            return self.names.index(x)
        if not isinstance(x, Transformation):
            x = Transformation(x)
        if x.n != self.n:
            raise KeyError(x)
        if self._row_index is not None:
            return self._index_of_row(np.asarray(x.img0, dtype=np.uint8))
        return self.index_of_code(x.code())

    def _index_of_row(self, row: np.ndarray) -> int:
        try:
            return self._row_index[row.tobytes()]
        except KeyError:
            raise KeyError(str(Transformation.from_zero_based(row.tolist()))) from None

    def index_of_code(self, code: int) -> int:
        if self._row_index is not None:
            return self._index_of_row(np.asarray(Transformation.from_code(code, self.n).img0, dtype=np.uint8))
        pos = int(np.searchsorted(self._codes, code))
        if pos == len(self._codes) or self._codes[pos] != code:
            raise KeyError(code)
        return pos

    def indices_of_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=np.uint8)
        if self._row_index is not None:
            try:
                return np.array([self._row_index[r.tobytes()] for r in rows], dtype=np.int64)
            except KeyError:
                raise UniverseError("product outside the universe") from None
        codes = row_codes(rows, self.n)
        pos = np.searchsorted(self._codes, codes)
        pos_c = np.minimum(pos, len(self._codes) - 1)
        if (pos >= len(self._codes)).any() or (self._codes[pos_c] != codes).any():
            raise UniverseError("product outside the universe")
        return pos.astype(np.int64)

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        prod = self.rows[j][self.rows[i]]
        try:
            if self._row_index is not None:
                return self._row_index[prod.tobytes()]
            return self.index_of_code(int(row_codes(prod[None, :])[0]))
        except KeyError:
            raise UniverseError(f"{self.label(i)} * {self.label(j)} left the universe") from None

    @property
    def table(self) -> np.ndarray:
        """Full multiplication table (materialised on first use, guarded)."""
        if self._table is None:
            if self.size > MAX_TABLE_SIZE:
                raise SizeLimitError(f"table of {self.size} elements exceeds {MAX_TABLE_SIZE}")
            R = self.rows
            T = np.empty((self.size, self.size), dtype=np.int32)
            for i in range(self.size):
                # row j of R[:, R[i]] is the image array of element i times element j
                T[i] = self.indices_of_rows(R[:, R[i]])
            self._table = T
        return self._table

    def commute(self, i: int, j: int) -> bool:
        if self._table is not None:
            return self._table[i, j] == self._table[j, i]
        a, b = self.rows[i], self.rows[j]
        return bool((b[a] == a[b]).all())

    def is_idempotent(self, i: int) -> bool:
        return self.mul(i, i) == i

    def idempotent_indices(self) -> np.ndarray:
        if self.rows is not None:
            R = self.rows
            mask = (np.take_along_axis(R, R.astype(np.intp), axis=1) == R).all(axis=1)
            return np.flatnonzero(mask)
        T = self._table
        return np.flatnonzero(T[np.arange(self.size), np.arange(self.size)] == np.arange(self.size))

    def commuting_with(self, i: int) -> np.ndarray:
        """Indices of all elements commuting with element i (including i)."""
        if self._table is not None and self.rows is None:
            return np.flatnonzero(self._table[i] == self._table[:, i])
        return kernels.commuting_positions(self.rows, self.rows[i])


def full(n: int) -> FiniteSemigroup:
    return FiniteSemigroup("full", n=n, r=n, rows=all_rows(n))


def ideal(n: int, r: int) -> FiniteSemigroup:
    if not 1 <= r <= n:
        raise ValueError(f"rank bound r={r} must satisfy 1 <= r <= n={n}")
    rows = all_rows(n)
    if r < n:
        rows = rows[row_ranks(rows) <= r]
    return FiniteSemigroup("ideal" if r < n else "full", n=n, r=r, rows=rows)


def closure(generators: Sequence[Transformation], names: Sequence[str] | None = None,
            track: bool = False, limit: int = 1_000_000) -> FiniteSemigroup:
    """Subsemigroup generated by ``generators``, in breadth-first discovery order.

    Generators come first (duplicates dropped); then products ``x*g`` are appended in
    the order they are found. With ``track`` each element stores a generator word.
    """
    if not generators:
        raise ValueError("closure needs at least one generator")
    n = generators[0].n
    if any(g.n != n for g in generators):
        raise ValueError("all generators must act on the same number of points")
    gens: list[Transformation] = []
    for g in generators:
        if g not in gens:
            gens.append(g)
    elems: list[tuple[int, ...]] = [g.img0 for g in gens]
    where = {e: i for i, e in enumerate(elems)}
    words = {i: (i,) for i in range(len(gens))} if track else None
    gimg = [g.img0 for g in gens]
    head = 0
    while head < len(elems):
        x = elems[head]
        for gi, g in enumerate(gimg):
            prod = tuple(g[v] for v in x)
            if prod not in where:
                where[prod] = len(elems)
                if words is not None:
                    words[len(elems)] = words[head] + (gi,)
                elems.append(prod)
                if len(elems) > limit:
                    raise SizeLimitError(f"closure exceeded {limit} elements")
        head += 1
    rows = np.array(elems, dtype=np.uint8).reshape(-1, n)
    labels = None
    if names is not None:
        if len(names) != len(generators):
            raise ValueError("one name per generator")
        gname = {g: nm for g, nm in zip(generators, names)}
        labels = [gname[g] for g in gens] + [str(Transformation.from_zero_based(e)) for e in elems[len(gens):]]
    return FiniteSemigroup("generated", n=n, rows=rows, names=labels,
                           generators=range(len(gens)), words=words)


def from_cayley(t: CayleyTable) -> FiniteSemigroup:
    bad = validate_associativity(t)
    if bad is not None:
        x, y, z = (t.names[i] for i in bad)
        raise ValueError(f"not associative: ({x}{y}){z} != {x}({y}{z})")
    return FiniteSemigroup("cayley", table=np.array(t.table, dtype=np.int32), names=t.names)


def load_cayley(path: str | Path) -> FiniteSemigroup:
    return from_cayley(CayleyTable.from_json(Path(path).read_text(encoding="utf-8")))


def relabel(S: FiniteSemigroup, names: Sequence[str]) -> FiniteSemigroup:
    if len(names) != S.size:
        raise ValueError("one label per element")
    out = FiniteSemigroup(S.kind, n=S.n, r=S.r, rows=S.rows, table=S._table, names=names,
                          generators=S.generators, words=S.words)
    return out


def subsemigroup(S: FiniteSemigroup, keep: Sequence[int]) -> FiniteSemigroup:
    """Restriction to a subset of indices (order preserved), checked for closure."""
    keep = list(keep)
    pos = {k: i for i, k in enumerate(keep)}
    T = S.table
    sub = T[np.ix_(keep, keep)]
    try:
        table = np.vectorize(pos.__getitem__)(sub) if len(keep) else sub
    except KeyError:
        raise ValueError("subset is not closed under multiplication") from None
    names = [S.label(k) for k in keep]
    if S.rows is not None:
        return FiniteSemigroup("generated", n=S.n, rows=S.rows[keep], names=names)
    return FiniteSemigroup("cayley", table=table, names=names)


# ------------------------------------------------------------------ queries

def center(S: FiniteSemigroup) -> frozenset[int]:
    """Indices of central elements, computed exactly.

    Transformation backends first filter by a probe set that already decides
    centrality when it is not passed (generators, or the constants contained in
    every J_r), then confirm each survivor against the whole universe.
    """
    if S.rows is None:
        T = S.table
        return frozenset(int(i) for i in np.flatnonzero((T == T.T).all(axis=1)))
    if S.kind == "generated":
        probes = list(S.generators)
    else:
        n = S.n
        probes = [S.index_of_code(x * sum(n ** k for k in range(n))) for x in range(n)]
    cand = None
    for p in probes:
        hits = set(S.commuting_with(p).tolist())
        cand = hits if cand is None else cand & hits
    out = set()
    for c in sorted(cand or ()):
        if len(S.commuting_with(c)) == S.size:
            out.add(c)
    return frozenset(out)


def center_by_scan(S: FiniteSemigroup) -> frozenset[int]:
    """Definition-level center: every pair checked."""
    return frozenset(i for i in range(S.size) if all(S.commute(i, j) for j in range(S.size)))


def is_commutative(S: FiniteSemigroup) -> bool:
    return len(center(S)) == S.size


def is_band(S: FiniteSemigroup) -> bool:
    return len(S.idempotent_indices()) == S.size


def cayley_table(S: FiniteSemigroup) -> CayleyTable:
    if S.size > MAX_TABLE_SIZE:
        raise SizeLimitError(f"{S.size} elements exceeds the table guard {MAX_TABLE_SIZE}")
    return CayleyTable.from_rows(S.labels(), S.table.tolist())
