"""Explicit semigroups and witness transformations.

Contents: the bands S0(k) and S1(k) with their symbolic multiplication rule, the
cycle-with-tail maps written ``(* z_s>(z_p ... z_1 x_1>(x_1 ... x_m)``, the ideal
and full-monoid witness pairs, the interleaved idempotent configurations, and a
small catalog of hand-written Cayley tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .semigroup import (
    CayleyTable,
    FiniteSemigroup,
    closure,
    from_cayley,
    full,
    ideal,
    load_cayley,
)
from .transform import (
    IdempotentForm,
    Transformation,
    cycle_permutation,
    from_idempotent_form,
    is_idempotent,
    rank,
)


# ---------------------------------------------------------------- bands

@dataclass(frozen=True)
class BandLayout:
    """Point labelling for S0(k) (``with_rs``) or S1(k) (without r and s)."""

    k: int
    with_rs: bool = True

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")

    def point_names(self) -> list[str]:
        k = self.k
        names = [f"y{i}" for i in range(k + 1)] + [f"v{i}" for i in range(1, k + 1)]
        names += [f"x{i}" for i in range(1, k + 1)] + [f"u{i}" for i in range(1, k + 1)]
        if self.with_rs:
            names += ["r", "s"]
        return names

    @property
    def n(self) -> int:
        return 4 * self.k + (3 if self.with_rs else 1)

    def point(self, name: str) -> int:
        """1-based point of a label; v0 is an alias of y_k."""
        if name == "v0":
            name = f"y{self.k}"
        return self.point_names().index(name) + 1

    def generator_names(self) -> list[str]:
        k = self.k
        gens = [f"a{i}" for i in range(1, k + 1)] + [f"b{i}" for i in range(1, k + 1)]
        return gens + (["e1"] if self.with_rs else [])

    def constant_names(self) -> list[str]:
        k = self.k
        out = [f"c_y{i}" for i in range(k + 1)] + [f"c_v{i}" for i in range(1, k + 1)]
        return out + (["c_s"] if self.with_rs else [])

    def element_names(self) -> list[str]:
        return self.generator_names() + self.constant_names()


def _image_labels(k: int, gen: str) -> list[str]:
    letter, i = gen[0], int(gen[1:])
    if letter == "a":
        return [f"y{i - 1}", f"x{i}", f"y{i}"]
    if letter == "b":
        return [f"v{i - 1}" if i > 1 else f"y{k}", f"u{i}", f"v{i}"]
    return [f"v{k}", "r", "s"]


def _kernel_classes(layout: BandLayout, i: int) -> list[set[str]]:
    """Kernel classes 1, 2, 3 shared by all generators with subscript i."""
    k = layout.k
    img = lambda g: set(_image_labels(k, g))  # noqa: E731
    if i == 1:
        c1 = set().union(*(img(f"a{j}") for j in range(2, k + 1))) | {"s"}
        c2 = set().union(*(img(f"b{j}") for j in range(2, k + 1))) | {"y0"}
        c3 = {"x1", "u1", "r"}
    else:
        c1 = set().union(set(), *(img(f"a{j}") for j in range(i + 1, k + 1)), *(img(f"b{j}") for j in range(1, i)))
        c2 = set().union(set(), *(img(f"b{j}") for j in range(i + 1, k + 1)), img("e1"),
                         *(img(f"a{j}") for j in range(1, i)))
        c3 = {f"x{i}", f"u{i}"}
    if not layout.with_rs:
        c1 -= {"r", "s"}
        c2 -= {"r", "s"}
        c3 -= {"r", "s"}
    canon = lambda s: {f"y{k}" if t == "v0" else t for t in s}  # noqa: E731
    return [canon(c1), canon(c2), canon(c3)]


def band_generator(layout: BandLayout, gen: str) -> Transformation:
    """One generator, checked to be a well-defined idempotent."""
    k = layout.k
    letter, i = gen[0], int(gen[1:])
    classes = _kernel_classes(layout, i)
    if letter == "a":
        targets = [f"y{i}", f"y{i - 1}", f"x{i}"]
    elif letter == "b":
        targets = [f"v{i - 1}" if i > 1 else f"y{k}", f"v{i}", f"u{i}"]
    elif gen == "e1" and layout.with_rs:
        targets = ["s", f"v{k}", "r"]
    else:
        raise ValueError(f"unknown generator {gen!r}")
    img = [0] * layout.n
    covered: set[str] = set()
    for cls, tgt in zip(classes, targets):
        if tgt not in cls:
            raise AssertionError(f"{gen}: image point {tgt} is not in its own kernel class")
        if covered & cls:
            raise AssertionError(f"{gen}: kernel classes overlap")
        covered |= cls
        for p in cls:
            img[layout.point(p) - 1] = layout.point(tgt)
    if covered != set(layout.point_names()):
        raise AssertionError(f"{gen}: kernel classes do not cover the point set")
    t = Transformation(img)
    assert is_idempotent(t)
    return t


def band_generators(layout: BandLayout) -> list[Transformation]:
    return [band_generator(layout, g) for g in layout.generator_names()]


def _band(layout: BandLayout) -> FiniteSemigroup:
    gens = band_generators(layout)
    gen_names = layout.generator_names()
    S = closure(gens, names=gen_names)
    names = layout.element_names()
    expected = [band_element(layout, nm) for nm in names]
    got = {S.element(i) for i in range(S.size)}
    if got != set(expected) or len(got) != len(names):
        raise AssertionError("closure does not match the expected element list")
    rows = np.array([t.img0 for t in expected], dtype=np.uint8)
    return FiniteSemigroup("generated", n=layout.n, rows=rows, names=names, generators=range(len(gen_names)))


def band_element(layout: BandLayout, name: str) -> Transformation:
    if name.startswith("c_"):
        p = layout.point(name[2:])
        return Transformation([p] * layout.n)
    return band_generator(layout, name)


def s0_band(k: int) -> FiniteSemigroup:
    """S0(k): generated by a_1..a_k, b_1..b_k, e_1 on 4k+3 points; elements in table order."""
    return _band(BandLayout(k, True))


def s1_band(k: int) -> FiniteSemigroup:
    """S1(k): S0(k) without e_1 and c_s, acting on 4k+1 points (r and s dropped)."""
    return _band(BandLayout(k, False))


def lpath_pi(k: int) -> list[str]:
    return [f"a{i}" for i in range(1, k + 1)] + [f"b{i}" for i in range(1, k + 1)] + ["e1"]


def lpath_tau1(k: int) -> list[str]:
    return ["c_y0"] + [f"a{i}" for i in range(1, k + 1)] + [f"b{i}" for i in range(1, k + 1)] + [f"c_v{k}"]


def lpath_tau2(k: int) -> list[str]:
    return ["c_y1"] + [f"a{i}" for i in range(2, k + 1)] + [f"b{i}" for i in range(1, k + 1)] + ["e1", "c_s"]


def _parse_band_label(name: str, k: int) -> tuple[str, int]:
    m = re.fullmatch(r"(a|b|e)(\d+)|c_(y|v)(\d+)|c_s", name)
    if not m:
        raise ValueError(f"bad element label {name!r}")
    if m.group(1):
        letter, i = m.group(1), int(m.group(2))
        if (letter == "e" and i != 1) or not 1 <= i <= k:
            raise ValueError(f"bad element label {name!r}")
        return letter, i
    if m.group(3):
        letter, i = m.group(3), int(m.group(4))
        if letter == "v" and i == 0:
            return "cy", k
        if not (0 <= i <= k) or (letter == "v" and i < 1):
            raise ValueError(f"bad element label {name!r}")
        return "c" + letter, i
    return "cs", 0


def _cy(i: int) -> str:
    return f"c_y{i}"


def _cv(i: int, k: int) -> str:
    return _cy(k) if i == 0 else f"c_v{i}"


def s0_mul_formula(k: int, g: str, h: str) -> str:
    """Product gh in S0(k) from the case formulas, by label, without composing maps."""
    (lg, i), (lh, j) = _parse_band_label(g, k), _parse_band_label(h, k)
    if lh.startswith("c"):
        return h                                  # anything times a constant is that constant
    if not lg.startswith("c"):
        if i == j:
            return h                              # equal subscripts: right zero
        gen = {"a": "a", "b": "b", "e": "e"}
        return _gen_product(k, gen[lg], i, gen[lh], j)
    # constant on the left
    if lg == "cs":
        if lh == "e":
            return "c_s"
        if j == 1:
            return _cy(1) if lh == "a" else _cv(0, k)
        return _cy(j - 1) if lh == "a" else _cv(j, k)
    if lg == "cy":
        p = i
        if lh == "e":
            return _cv(k, k) if p == 0 else "c_s"
        if p == 0:
            return _cy(j - 1) if lh == "a" else _cv(j, k)
        if lh == "a":
            if p == j:
                return _cy(p)
            return _cy(j - 1) if p < j else _cy(j)
        if p == j:
            return _cv(p - 1, k)
        return _cv(j, k) if p < j else _cv(j - 1, k)
    # lg == "cv"
    p = i
    if lh == "e":
        return _cv(k, k)
    if lh == "a":
        if p == j:
            return _cy(p - 1)
        return _cy(j) if p < j else _cy(j - 1)
    if p == j:
        return _cv(p, k)
    return _cv(j - 1, k) if p < j else _cv(j, k)


def _gen_product(k: int, lg: str, i: int, lh: str, j: int) -> str:
    """Product of two generators with distinct subscripts."""
    if lg == "e":
        return _cy(j - 1) if lh == "a" else _cv(j, k)
    if lh == "e":
        return "c_s" if lg == "a" else _cv(k, k)
    lo = i < j   # g has the smaller subscript
    if lg == "a" and lh == "a":
        return _cy(j - 1) if lo else _cy(j)
    if lg == "a" and lh == "b":
        return _cv(j, k) if lo else _cv(j - 1, k)
    if lg == "b" and lh == "a":
        return _cy(j) if lo else _cy(j - 1)
    return _cv(j - 1, k) if lo else _cv(j, k)


# ------------------------------------------------------- cycle-with-tail maps

@dataclass(frozen=True)
class Ndi5Spec:
    """Cycle x_1..x_m, tail z_p -> ... -> z_1 -> x_1, other points -> z_s (w -> z_t).

    ``zs`` is ``(z_1, ..., z_p)``. ``s=None`` selects the no-default variant, which
    requires the listed points to cover everything.
    """

    xs: tuple[int, ...]
    zs: tuple[int, ...]
    s: int | None = None
    w: int | None = None
    t: int | None = None

    def validate(self, n: int) -> None:
        pts = list(self.xs) + list(self.zs) + ([self.w] if self.w is not None else [])
        if not self.xs:
            raise ValueError("the cycle needs at least one point")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        if any(not 1 <= x <= n for x in pts):
            raise ValueError(f"points must lie in 1..{n}")
        p = len(self.zs)
        if self.s is None:
            if self.w is not None:
                raise ValueError("w needs a default index s")
            if len(pts) != n:
                raise ValueError("the no-default variant must cover every point")
        else:
            if not 1 <= self.s < p:
                raise ValueError(f"need 1 <= s < p, got s={self.s}, p={p}")
        if (self.w is None) != (self.t is None):
            raise ValueError("w and t go together")
        if self.t is not None and (not 1 <= self.t < p or self.t == self.s):
            raise ValueError(f"need 1 <= t < p and t != s, got t={self.t}")


def ndi5(n: int, spec: Ndi5Spec) -> Transformation:
    spec.validate(n)
    img = [0] * (n + 1)
    default = spec.zs[spec.s - 1] if spec.s is not None else None
    for x in range(1, n + 1):
        img[x] = default if default is not None else 0
    xs, zs = spec.xs, spec.zs
    for i, x in enumerate(xs):
        img[x] = xs[(i + 1) % len(xs)]
    if zs:
        img[zs[0]] = xs[0]
        for j in range(1, len(zs)):
            img[zs[j]] = zs[j - 1]
    if spec.w is not None:
        img[spec.w] = zs[spec.t - 1]
    return Transformation(img[1:])


def ndi5_written(n: int, default: int | None, chain: Sequence[int], cycle: Sequence[int],
                 branch: tuple[int, int] | None = None) -> Transformation:
    """Build from the written form ``(* default>(branch>(chain>(cycle)``.

    ``chain`` runs ``z_p ... z_1 c`` and ends at a cycle point ``c``; the cycle is
    rotated to start there. ``branch`` is ``(w, target)`` with target on the tail.
    """
    chain = list(chain)
    cyc = list(cycle)
    end = chain[-1]
    if end not in cyc:
        raise ValueError("the chain must end on the cycle")
    r = cyc.index(end)
    xs = tuple(cyc[r:] + cyc[:r])
    zs = tuple(reversed(chain[:-1]))
    s = None if default is None else _tail_index(zs, default)
    w = t = None
    if branch is not None:
        w, t = branch[0], _tail_index(zs, branch[1])
    return ndi5(n, Ndi5Spec(xs, zs, s, w, t))


def _tail_index(zs: Sequence[int], point: int) -> int:
    if point not in zs:
        raise ValueError(f"{point} is not a tail point")
    return list(zs).index(point) + 1


_WRITTEN = re.compile(r"\(([^()<>⟩]*)[>⟩]|\(([^()<>⟩]*)\)")


def parse_ndi5(text: str, n: int) -> Transformation:
    """Parse e.g. ``"(* 4>(3 4 1>(1 2)"``; ``⟩`` and ``>`` are both accepted."""
    default = None
    branch = None
    chains: list[list[int]] = []
    cycle = None
    for m in _WRITTEN.finditer(text):
        if m.group(1) is not None:
            toks = m.group(1).split()
            if toks and toks[0] == "*":
                default = int(toks[1])
            else:
                chains.append([int(t) for t in toks])
        else:
            cycle = [int(t) for t in m.group(2).split()]
    if cycle is None or not chains:
        raise ValueError(f"cannot parse {text!r}")
    if len(chains) == 2:
        w, tgt = chains[0]
        branch = (w, tgt)
    elif len(chains) != 1:
        raise ValueError(f"cannot parse {text!r}")
    return ndi5_written(n, default, chains[-1], cycle, branch)


# ---------------------------------------------------------- witness pairs

def _check_pair(a: Transformation, b: Transformation, r: int) -> tuple[Transformation, Transformation]:
    assert rank(a) <= r and rank(b) <= r, "witness outside J_r"
    assert a * b != b * a, "witnesses commute"
    return a, b


def tdia2_witnesses(n: int, r: int) -> tuple[Transformation, Transformation]:
    """A pair at distance at least 5 in the commuting graph of J_r; (n, r) = (3, 2) gives the distance-4 pair."""
    if n == 3:
        if r != 2:
            raise ValueError("for n = 3 only r = 2 applies")
        return _check_pair(Transformation([2, 1, 1]), Transformation([3, 1, 1]), 2)
    if n < 4 or not 2 <= r < n:
        raise ValueError(f"need n >= 3 and 2 <= r < n, got n={n}, r={r}")
    if r == 4 and n in (5, 6, 7):
        raise ValueError(f"(n, r) = ({n}, 4) is an exceptional case with diameter 4")
    if r == 2:
        a = [2, 1, 2, 1] + [1] * (n - 4)
        b = [3, 4, 4, 3] + [3] * (n - 4)
        return _check_pair(Transformation(a), Transformation(b), r)
    if r == 4:
        a = [2, 3, 4, 1, 2, 3, 4, 1] + [1] * (n - 8)
        b = [5, 6, 7, 8, 6, 7, 8, 5] + [5] * (n - 8)  # padding with 1 would give rank 5
        return _check_pair(Transformation(a), Transformation(b), r)
    if r % 2 == 1:
        m = (r + 1) // 2
        x = list(range(1, m + 1))
        y = list(range(m + 1, 2 * m + 1))
        a = ndi5_written(n, y[1], y + [x[0]], x)
        b = ndi5_written(n, x[2 % m], x[1:] + [x[0], y[0]], y)
        return _check_pair(a, b, r)
    m = r // 2
    x = list(range(1, m + 1))
    y = list(range(m + 1, 2 * m + 1))
    z = 2 * m + 1
    a = ndi5_written(n, y[1], [z] + y + [x[0]], x)
    b = ndi5_written(n, x[0], x[1:] + [x[0], y[0]], y, branch=(z, x[2]))
    return _check_pair(a, b, r)


def j4_written_pair(n: int) -> tuple[Transformation, Transformation]:
    """``(* 4>(3 4 1>(1 2)`` and ``(* 1>(2 1 3>(3 4)`` on n points."""
    if n < 5:
        raise ValueError("needs n >= 5")
    return ndi5_written(n, 4, [3, 4, 1], [1, 2]), ndi5_written(n, 1, [2, 1, 3], [3, 4])


def j4_distance4_pair(n: int) -> tuple[Transformation, Transformation]:
    """A pair found by exhaustive search in J_4 on 5 points, padded; distance 4 for n = 5, 6, 7."""
    if n < 5:
        raise ValueError("needs n >= 5")
    return Transformation([1] * (n - 1) + [2]), Transformation([2, 3, 4, 2] + [1] * (n - 4))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def tdia3_witnesses(n: int) -> tuple[Transformation, Transformation]:
    """A pair at distance at least 5 in the commuting graph of T(n), n = 6, 8 or composite n >= 9."""
    if n == 6:
        return cycle_permutation(6, range(1, 7)), Transformation([2, 3, 5, 1, 2, 4])
    if n == 8:
        return cycle_permutation(8, range(1, 9)), Transformation([2, 3, 1, 1, 4, 8, 6, 5])
    if n < 9 or _is_prime(n):
        raise ValueError(f"no witness pair for n={n}; need 6, 8 or a composite n >= 9")
    if n % 2 == 1:
        m = (n - 1) // 2
        x = list(range(1, m + 1))
        y = list(range(m + 1, 2 * m + 1))
        z = 2 * m + 1
        a = ndi5_written(n, None, [z] + y + [x[0]], x)
        b = ndi5_written(n, None, x[1:] + [x[0], z, y[1]], y)
        return a, b
    m = (n - 2) // 2
    x = list(range(1, m + 1))
    y = list(range(m + 1, 2 * m + 1))
    z, w = 2 * m + 1, 2 * m + 2
    a = ndi5_written(n, None, [z] + y + [w, x[1]], x)
    b = ndi5_written(n, None, [w] + x[1:m - 2] + [x[m - 1], x[0], x[m - 2], z, y[1]], y)
    return a, b


def lja2_configuration(n: int, r: int, variant: str | None = None) -> tuple[IdempotentForm, IdempotentForm]:
    """Interleaved idempotents e = (A_i, x_i>, f = (B_i, y_i>, with y_i in A_i and x_{i+1} in B_i.

    Variant ``"A"`` takes the least m with m <= r < 2m <= n (leftover points join A_1
    and B_1). Variant ``"B"`` is r = n - 1 with n = 2m + 1, the extra point z in A_m and B_1.
    """
    if n < 4 or not 2 <= r < n:
        raise ValueError(f"need n >= 4 and 2 <= r < n, got n={n}, r={r}")
    if n == 5 and r == 4:
        raise ValueError("(n, r) = (5, 4) admits no such configuration")
    ms = [m for m in range(1, n // 2 + 1) if m <= r < 2 * m <= n]
    if variant is None:
        variant = "A" if ms else "B"
    if variant == "A":
        if not ms:
            raise ValueError(f"no m with m <= r < 2m <= n for n={n}, r={r}")
        m = ms[0]
    elif variant == "B":
        if not (r == n - 1 and n % 2 == 1 and n >= 7):
            raise ValueError("variant B needs r = n - 1 and odd n >= 7")
        m = (n - 1) // 2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    x = list(range(1, m + 1))
    y = list(range(m + 1, 2 * m + 1))
    extra = list(range(2 * m + 1, n + 1))
    A = [{x[i], y[i]} for i in range(m)]
    B = [{y[i], x[(i + 1) % m]} for i in range(m)]
    if variant == "A":
        A[0] |= set(extra)
        B[0] |= set(extra)
    else:
        A[m - 1] |= set(extra)
        B[0] |= set(extra)
    e = IdempotentForm.of(*((A[i], x[i]) for i in range(m)))
    f = IdempotentForm.of(*((B[i], y[i]) for i in range(m)))
    return e, f


def lja2_pair(n: int, r: int, variant: str | None = None) -> tuple[Transformation, Transformation]:
    e, f = lja2_configuration(n, r, variant)
    return from_idempotent_form(e), from_idempotent_form(f)


# ------------------------------------------------------------- catalog

def teve_band_4() -> FiniteSemigroup:
    """Four-element band whose commuting graph is the 4-cycle a-b-c-d-a; knit degree 2."""
    return from_cayley(CayleyTable.from_letters("abcd", ["a b c d", "b b b b", "a b c d", "d d d d"]))


def tald_chain_4() -> FiniteSemigroup:
    """Four-element semigroup whose commuting graph is the chain a-b-c-d."""
    return from_cayley(CayleyTable.from_letters("abcd", ["a a a a", "a b c c", "c c c c", "c d c c"]))


def zero_band_3() -> FiniteSemigroup:
    """The band {e, f, 0}: ef = f, fe = e, 0 a zero."""
    return from_cayley(CayleyTable.from_letters(["e", "f", "0"], ["e f 0", "e f 0", "0 0 0"]))


def semilattice_2() -> FiniteSemigroup:
    return from_cayley(CayleyTable.from_letters(["1", "0"], ["1 0", "0 0"]))


CATALOG = {
    "teve4": teve_band_4,
    "tald4": tald_chain_4,
    "zeroband3": zero_band_3,
    "semilattice2": semilattice_2,
}
ALIASES = {"teve_band_4": "teve4", "tald_chain_4": "tald4", "zero_band_3": "zeroband3"}


def small_semigroups() -> dict[str, FiniteSemigroup]:
    return {name: make() for name, make in CATALOG.items()}


def semigroup_from_spec(spec: str) -> FiniteSemigroup:
    """``full:n``, ``ideal:n:r``, ``s0:k``, ``s1:k``, ``cayley:<path>`` or a catalog name."""
    name = ALIASES.get(spec, spec)
    if name in CATALOG:
        return CATALOG[name]()
    head, _, rest = spec.partition(":")
    try:
        if head == "full":
            return full(int(rest))
        if head == "ideal":
            n, r = rest.split(":")
            return ideal(int(n), int(r))
        if head == "s0":
            return s0_band(int(rest))
        if head == "s1":
            return s1_band(int(rest))
    except ValueError as exc:
        raise ValueError(f"bad semigroup spec {spec!r}: {exc}") from None
    if head == "cayley" and rest:
        return load_cayley(rest)
    raise ValueError(f"unknown semigroup spec {spec!r}")


def witness_from_spec(spec: str) -> tuple[Transformation, Transformation]:
    """``witness:tdia2:n:r`` or ``witness:tdia3:n``."""
    parts = spec.split(":")
    if len(parts) == 4 and parts[:2] == ["witness", "tdia2"]:
        return tdia2_witnesses(int(parts[2]), int(parts[3]))
    if len(parts) == 3 and parts[:2] == ["witness", "tdia3"]:
        return tdia3_witnesses(int(parts[2]))
    raise ValueError(f"unknown witness spec {spec!r}")
