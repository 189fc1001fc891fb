"""Full transformations of a finite point set {1..n}.

Maps are written on the right and composed left to right: ``x(ab) = (xa)b``.
All user-facing points are 1-based; the image tuple is stored 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence

# Mixed-radix codes stay exact in int64 up to this size.
MAX_PACKED_N = 12


@total_ordering
class Transformation:
    """An immutable total map on ``{1..n}``.

    Construct from the 1-based image list, e.g. ``Transformation([2, 1, 1])``
    sends 1 -> 2, 2 -> 1, 3 -> 1.
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, img: Iterable[int]):
        vals = tuple(int(v) for v in img)
        n = len(vals)
        if n == 0:
            raise ValueError("a transformation needs at least one point")
        for v in vals:
            if not 1 <= v <= n:
                raise ValueError(f"image {v} out of range 1..{n}")
        self._img = tuple(v - 1 for v in vals)
        self._hash = hash(self._img)

    @classmethod
    def from_zero_based(cls, img: Sequence[int]) -> "Transformation":
        t = cls.__new__(cls)
        t._img = tuple(int(v) for v in img)
        t._hash = hash(t._img)
        return t

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def img(self) -> tuple[int, ...]:
        """1-based images."""
        return tuple(v + 1 for v in self._img)

    @property
    def img0(self) -> tuple[int, ...]:
        return self._img

    def __call__(self, x: int) -> int:
        return self._img[x - 1] + 1

    def __mul__(self, other: "Transformation") -> "Transformation":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Transformation):
            return NotImplemented
        return self._img == other._img

    def __lt__(self, other: "Transformation") -> bool:
        if not isinstance(other, Transformation):
            return NotImplemented
        return (len(self._img), self._img) < (len(other._img), other._img)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Transformation({list(self.img)})"

    def __str__(self) -> str:
        return "[" + ",".join(str(v + 1) for v in self._img) + "]"

    def code(self) -> int:
        """Mixed-radix packing, first point most significant.

        Numeric order of codes equals the lexicographic order of images.
        """
        n = len(self._img)
        c = 0
        for v in self._img:
            c = c * n + v
        return c

    @classmethod
    def from_code(cls, code: int, n: int) -> "Transformation":
        img = [0] * n
        for i in range(n - 1, -1, -1):
            code, img[i] = divmod(code, n)
        return cls.from_zero_based(img)

    def power(self, p: int) -> "Transformation":
        if p < 1:
            raise ValueError("power must be >= 1")
        result = None
        base = self
        while p:
            if p & 1:
                result = base if result is None else compose(result, base)
            p >>= 1
            if p:
                base = compose(base, base)
        return result


def parse_transformation(text: str) -> Transformation:
    """Parse a literal such as ``"[2,1,1]"`` (brackets optional)."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    if not body.strip():
        raise ValueError(f"empty transformation literal: {text!r}")
    try:
        vals = [int(tok) for tok in body.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad transformation literal: {text!r}") from exc
    return Transformation(vals)


def identity(n: int) -> Transformation:
    return Transformation.from_zero_based(range(n))


def constant(n: int, x: int) -> Transformation:
    """The constant map c_x (written (X,x> in idempotent notation)."""
    if not 1 <= x <= n:
        raise ValueError(f"point {x} out of range 1..{n}")
    return Transformation.from_zero_based([x - 1] * n)


def cycle_permutation(n: int, *cycles: Sequence[int]) -> Transformation:
    """Permutation from disjoint 1-based cycles, e.g. ``cycle_permutation(4, (1, 2), (3, 4))``."""
    img = list(range(n))
    seen: set[int] = set()
    for cyc in cycles:
        for i, x in enumerate(cyc):
            if x in seen or not 1 <= x <= n:
                raise ValueError(f"bad cycle point {x}")
            seen.add(x)
            img[x - 1] = cyc[(i + 1) % len(cyc)] - 1
    return Transformation.from_zero_based(img)


def _check_same_n(a: Transformation, b: Transformation) -> None:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")


def compose(a: Transformation, b: Transformation) -> Transformation:
    """Apply ``a`` first, then ``b``."""
    _check_same_n(a, b)
    bi = b._img
    return Transformation.from_zero_based([bi[v] for v in a._img])


def commutes(a: Transformation, b: Transformation) -> bool:
    _check_same_n(a, b)
    ai, bi = a._img, b._img
    return all(bi[ai[x]] == ai[bi[x]] for x in range(len(ai)))


def image(a: Transformation) -> frozenset[int]:
    return frozenset(v + 1 for v in a._img)


def rank(a: Transformation) -> int:
    return len(set(a._img))


@dataclass(frozen=True)
class KernelPartition:
    """Kernel classes, each block sorted, blocks ordered by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def block_of(self, x: int) -> tuple[int, ...]:
        for blk in self.blocks:
            if x in blk:
                return blk
        raise KeyError(x)

    def same_block(self, x: int, y: int) -> bool:
        return y in self.block_of(x)


def kernel(a: Transformation) -> KernelPartition:
    groups: dict[int, list[int]] = {}
    for x, v in enumerate(a._img):
        groups.setdefault(v, []).append(x + 1)
    return KernelPartition(tuple(sorted(tuple(g) for g in groups.values())))


def is_idempotent(a: Transformation) -> bool:
    ai = a._img
    return all(ai[v] == v for v in ai)


def is_permutation(a: Transformation) -> bool:
    return rank(a) == a.n


def is_constant(a: Transformation) -> bool:
    return rank(a) == 1


def index_and_period(a: Transformation) -> tuple[int, int]:
    """Smallest ``i >= 1`` and ``m >= 1`` with ``a^(i+m) = a^i``."""
    ai = a._img
    n = len(ai)
    periodic = _periodic_points(ai)
    index = 1
    for x in range(n):
        steps = 0
        y = x
        while y not in periodic:
            y = ai[y]
            steps += 1
        index = max(index, steps)
    period = 1
    for cyc in _cycles0(ai, periodic):
        period = math.lcm(period, len(cyc))
    return index, period


def idempotent_power(a: Transformation) -> Transformation:
    """``a^p`` for the least ``p >= 1`` making it idempotent."""
    index, period = index_and_period(a)
    p = period * -(-index // period)
    return a.power(p)


@dataclass(frozen=True)
class IdempotentForm:
    """``(A_1,x_1>(A_2,x_2>...``: kernel blocks with their fixed representatives.

    Pairs are sorted by representative.
    """

    pairs: tuple[tuple[frozenset[int], int], ...]

    def __post_init__(self):
        pts: set[int] = set()
        reps = set()
        for block, rep in self.pairs:
            if rep not in block:
                raise ValueError(f"representative {rep} not in its block")
            if pts & block:
                raise ValueError("blocks overlap")
            pts |= block
            reps.add(rep)
        n = len(pts)
        if pts != set(range(1, n + 1)):
            raise ValueError("blocks do not cover 1..n")

    @property
    def n(self) -> int:
        return sum(len(b) for b, _ in self.pairs)

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(rep for _, rep in self.pairs)

    @classmethod
    def of(cls, *pairs: tuple[Iterable[int], int]) -> "IdempotentForm":
        return cls(tuple(sorted(((frozenset(b), r) for b, r in pairs), key=lambda p: p[1])))

    def __str__(self) -> str:
        parts = []
        for block, rep in self.pairs:
            parts.append("({" + ",".join(map(str, sorted(block))) + f"}},{rep}>")
        return "".join(parts)


def idempotent_form(e: Transformation) -> IdempotentForm:
    if not is_idempotent(e):
        raise ValueError(f"{e} is not idempotent")
    blocks: dict[int, set[int]] = {}
    for x, v in enumerate(e._img):
        blocks.setdefault(v + 1, set()).add(x + 1)
    return IdempotentForm(tuple((frozenset(blocks[r]), r) for r in sorted(blocks)))


def from_idempotent_form(form: IdempotentForm) -> Transformation:
    img = [0] * form.n
    for block, rep in form.pairs:
        for x in block:
            img[x - 1] = rep - 1
    return Transformation.from_zero_based(img)


def commutes_with_idempotent(form: IdempotentForm, b: Transformation) -> bool:
    """Block criterion: for each i some j has ``x_i b = x_j`` and ``A_i b`` inside ``A_j``."""
    if form.n != b.n:
        raise ValueError(f"size mismatch: {form.n} vs {b.n}")
    block_of_rep = {rep: block for block, rep in form.pairs}
    for block, rep in form.pairs:
        target = b(rep)
        tblock = block_of_rep.get(target)
        if tblock is None:
            return False
        if any(b(x) not in tblock for x in block):
            return False
    return True


@dataclass(frozen=True)
class CycleSet:
    """Cycles of a map, each rotated to start at its least point, sorted."""

    cycles: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def points(self) -> frozenset[int]:
        return frozenset(x for c in self.cycles for x in c)


def _periodic_points(ai: Sequence[int]) -> set[int]:
    # After n steps every point sits on a cycle; cycle points are exactly that image.
    n = len(ai)
    pts = set(range(n))
    for _ in range(n):
        pts = {ai[x] for x in pts}
    return pts


def _cycles0(ai: Sequence[int], periodic: set[int]) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for x in sorted(periodic):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = ai[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = ai[y]
        out.append(tuple(cyc))
    return out


def cycles(a: Transformation) -> CycleSet:
    ai = a._img
    cs = _cycles0(ai, _periodic_points(ai))
    return CycleSet(tuple(tuple(v + 1 for v in c) for c in cs))


def unique_cycle(a: Transformation) -> tuple[int, ...] | None:
    cs = cycles(a).cycles
    return cs[0] if len(cs) == 1 else None
