from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from semicomm.constructions import ndi5_written, tdia2_witnesses
from semicomm.transform import (
    IdempotentForm,
    Transformation,
    commutes,
    commutes_with_idempotent,
    compose,
    constant,
    cycle_permutation,
    cycles,
    from_idempotent_form,
    identity,
    idempotent_form,
    idempotent_power,
    image,
    index_and_period,
    is_constant,
    is_idempotent,
    is_permutation,
    kernel,
    parse_transformation,
    rank,
    unique_cycle,
)


def maps(n_min=1, n_max=7):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.integers(1, n), min_size=n, max_size=n).map(Transformation))


def same_n_triples(n_max=6):
    def build(n):
        one = st.lists(st.integers(1, n), min_size=n, max_size=n).map(Transformation)
        return st.tuples(one, one, one)
    return st.integers(1, n_max).flatmap(build)


T = Transformation


def test_compose_applies_left_factor_first():
    assert compose(T([2, 1, 1]), T([3, 1, 1])) == T([1, 3, 3])
    assert T([2, 1, 1]) * T([3, 1, 1]) == T([1, 3, 3])


@pytest.mark.parametrize("n", [1, 3, 5])
def test_identity_is_neutral(n):
    for a in map(T, oracles.all_maps(n) if n < 5 else [[2, 3, 4, 5, 1], [1, 1, 2, 2, 5]]):
        assert compose(identity(n), a) == a == compose(a, identity(n))


def test_constant_absorbs_on_the_left():
    b = T([3, 1, 4, 4])
    for x in range(1, 5):
        assert compose(constant(4, x), b) == constant(4, b(x))


def test_compose_rejects_size_mismatch():
    with pytest.raises(ValueError):
        compose(T([1, 2]), T([1, 1, 1]))


def test_compose_matches_oracle_on_t3():
    ms = oracles.all_maps(3)
    for a, b in itertools.product(ms, ms):
        assert compose(T(a), T(b)).img == oracles.compose(a, b)


def test_associative_exhaustive_t3():
    ms = [T(m) for m in oracles.all_maps(3)]
    for a, b, c in itertools.product(ms, ms, ms):
        assert (a * b) * c == a * (b * c)


@settings(max_examples=200)
@given(same_n_triples())
def test_associative_random(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("text, img", [("[2,1,1]", (2, 1, 1)), ("3,3,1", (3, 3, 1)), (" [1] ", (1,))])
def test_parse(text, img):
    assert parse_transformation(text).img == img


@pytest.mark.parametrize("text", ["[]", "[0,1]", "[1,4,1]", "[a,b]", "1;2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_transformation(text)


@given(maps())
def test_str_parse_round_trip(a):
    assert parse_transformation(str(a)) == a


@given(maps(1, 9))
def test_code_round_trip_and_order(a):
    assert Transformation.from_code(a.code(), a.n) == a


def test_code_order_is_lexicographic():
    ms = sorted(oracles.all_maps(3))
    codes = [T(m).code() for m in ms]
    assert codes == sorted(codes) == list(range(27))


def test_rank_image_kernel_examples():
    a = T([2, 1, 1])
    assert rank(a) == 2 and image(a) == {1, 2}
    assert kernel(a).blocks == ((1,), (2, 3))
    c = constant(4, 3)
    assert rank(c) == 1 and image(c) == {3} and kernel(c).blocks == ((1, 2, 3, 4),)
    p = cycle_permutation(4, (1, 3))
    assert rank(p) == 4 and kernel(p).blocks == ((1,), (2,), (3,), (4,))


@given(maps())
def test_rank_consistency(a):
    assert rank(a) == len(image(a)) == len(kernel(a).blocks) == oracles.rank(a.img)
    for x, y in itertools.product(range(1, a.n + 1), repeat=2):
        assert kernel(a).same_block(x, y) == (a(x) == a(y))


@pytest.mark.parametrize("img, idem, perm, const", [
    ([1, 2, 3], True, True, False),
    ([1, 2, 2], True, False, False),
    ([2, 1, 1], False, False, False),
    ([3, 3, 3], True, False, True),
    ([2, 3, 1], False, True, False),
])
def test_predicates(img, idem, perm, const):
    a = T(img)
    assert (is_idempotent(a), is_permutation(a), is_constant(a)) == (idem, perm, const)
    assert is_idempotent(a) == (a * a == a)


@pytest.mark.parametrize("img, want", [([2, 1, 1], [1, 2, 2]), ([2, 3, 1], [1, 2, 3]), ([4, 4, 4, 4], [4, 4, 4, 4])])
def test_idempotent_power_examples(img, want):
    assert idempotent_power(T(img)) == T(want)


def _least_idempotent_power(a):
    p, b = 1, a
    while not is_idempotent(b):
        p, b = p + 1, b * a
    return p, b


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_idempotent_power_exhaustive(n):
    ms = [T(m) for m in oracles.all_maps(n)]
    for a in ms:
        _, want = _least_idempotent_power(a)
        e = idempotent_power(a)
        assert e == want
        if is_idempotent(a):
            assert e == a
        for b in ms:
            if commutes(a, b):
                assert commutes(e, b)


@given(maps(1, 8))
def test_index_period(a):
    i, m = index_and_period(a)
    assert a.power(i + m) == a.power(i)
    assert all(a.power(j + m) != a.power(j) for j in range(1, i))


def test_idempotent_form_examples():
    f = idempotent_form(T([1, 2, 1, 2, 1]))
    assert f.pairs == ((frozenset({1, 3, 5}), 1), (frozenset({2, 4}), 2))
    assert idempotent_form(T([1, 2, 2])).pairs == ((frozenset({1}), 1), (frozenset({2, 3}), 2))
    assert idempotent_form(constant(3, 2)).pairs == ((frozenset({1, 2, 3}), 2),)
    with pytest.raises(ValueError):
        idempotent_form(T([2, 1, 1]))


def test_idempotent_form_validation():
    with pytest.raises(ValueError):
        IdempotentForm.of(({1, 2}, 3), ({3}, 3))
    with pytest.raises(ValueError):
        IdempotentForm.of(({1, 2}, 1), ({2, 3}, 3))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_idempotent_form_round_trip(n):
    for m in oracles.all_maps(n):
        if oracles.is_idem(m):
            e = T(m)
            assert from_idempotent_form(idempotent_form(e)) == e


@pytest.mark.parametrize("n", [3, 4])
def test_block_criterion_matches_commuting(n):
    ms = [T(m) for m in oracles.all_maps(n)]
    for e in filter(is_idempotent, ms):
        form = idempotent_form(e)
        for b in ms:
            assert commutes_with_idempotent(form, b) == commutes(e, b)


def test_block_criterion_example():
    e = IdempotentForm.of(({1, 3, 5}, 1), ({2, 4}, 2))
    assert commutes_with_idempotent(e, constant(5, 1))
    assert not commutes_with_idempotent(e, constant(5, 3))


def test_constant_commutes_with_idempotent_iff_in_image():
    for m in oracles.all_maps(4):
        e = T(m)
        if is_idempotent(e):
            for x in range(1, 5):
                assert commutes(constant(4, x), e) == (x in image(e))


def test_arc_characterisation_exhaustive_t4():
    # ab = ba iff every arc x -> xa is carried by b to the arc xb -> (xa)b
    ms = [T(m) for m in oracles.all_maps(4)]
    for a in ms:
        for b in ms:
            arcs = all(a(b(x)) == b(a(x)) for x in range(1, 5))
            assert arcs == commutes(a, b)


def test_cycles_examples():
    assert cycles(cycle_permutation(4, (1, 2), (3, 4))).cycles == ((1, 2), (3, 4))
    assert unique_cycle(T([2, 1, 1])) == (1, 2)
    a, _ = tdia2_witnesses(8, 4)
    assert unique_cycle(a) == (1, 2, 3, 4)
    assert unique_cycle(cycle_permutation(4, (1, 2), (3, 4))) is None


@given(maps(1, 8))
def test_cycles_cover_periodic_points(a):
    cs = cycles(a)
    periodic = {x for x in range(1, a.n + 1) if any(a.power(k)(x) == x for k in range(1, a.n + 1))}
    assert cs.points() == periodic
    for c in cs.cycles:
        for i, x in enumerate(c):
            assert a(x) == c[(i + 1) % len(c)]


def test_unique_cycle_fixed_by_commuting_idempotents_t4():
    ms = [T(m) for m in oracles.all_maps(4)]
    idem = [e for e in ms if is_idempotent(e)]
    for a in ms:
        c = unique_cycle(a)
        if c is None:
            continue
        for e in idem:
            if commutes(a, e):
                assert all(e(x) == x for x in c)


@pytest.mark.parametrize("n, default, chain, cycle", [
    (5, 4, [3, 4, 1], [1, 2]),
    (5, 1, [2, 1, 3], [3, 4]),
    (7, 7, [6, 7, 1], [1, 2, 3]),
    (8, 5, [7, 6, 5, 1], [1, 2, 3, 4]),
])
def test_unique_cycle_fixed_on_cycle_tail_maps(n, default, chain, cycle):
    a = ndi5_written(n, default, chain, cycle)
    assert unique_cycle(a) == tuple(cycle)
    from semicomm.semigroup import idempotent_rows
    for row in idempotent_rows(n):
        e = Transformation.from_zero_based(row.tolist())
        if commutes(a, e):
            assert all(e(x) == x for x in cycle)


def test_order_and_hash():
    a, b = T([1, 2]), T([2, 1])
    assert a < b and len({a, T([1, 2])}) == 1
    assert sorted([T([2, 2]), T([1, 1])]) == [T([1, 1]), T([2, 2])]
