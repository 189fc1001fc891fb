from __future__ import annotations

import itertools
import json
import math
from functools import lru_cache

import pytest

import oracles
from semicomm.commgraph import (
    BudgetExceeded,
    INF,
    ball_sizes,
    c_operator,
    candidate_counts,
    component_of,
    connect_idempotents,
    diameter,
    distance,
    eccentricity,
    export,
    graph,
    idempotent_graph,
    idempotent_path,
    import_json,
    is_connected,
    is_path,
    labeled,
    lower_bound_certificate,
)
from semicomm.constructions import (
    Ndi5Spec,
    j4_distance4_pair,
    j4_written_pair,
    lja2_configuration,
    lja2_pair,
    ndi5,
    tald_chain_4,
    tdia2_witnesses,
    tdia3_witnesses,
    teve_band_4,
    zero_band_3,
)
from semicomm.semigroup import closure, full, ideal, idempotent_rows
from semicomm.transform import (
    Transformation,
    commutes,
    cycle_permutation,
    identity,
    image,
    is_idempotent,
    rank,
)

T = Transformation


@lru_cache(maxsize=None)
def oracle_graph(n, r, idem_only=False):
    """Commuting graph of J_r built from scratch with tuple composition."""
    elems = [m for m in oracles.all_maps(n) if oracles.rank(m) <= r]
    if idem_only:
        Z = oracles.center(elems, oracles.compose)
        elems = [m for m in elems if oracles.is_idem(m)]
        adj = {v: [w for w in elems if w != v and oracles.commute(v, w)] for v in elems if v not in Z}
        return {v: [w for w in ws if w in adj] for v, ws in adj.items()}
    return oracles.commuting_graph(elems, oracles.compose)


SMALL = [(n, r) for n in range(1, 5) for r in range(1, n + 1)]


@pytest.mark.parametrize("n, r", SMALL)
def test_diameter_matches_oracle(n, r):
    G = graph(ideal(n, r))
    adj = oracle_graph(n, r)
    assert len(G) == len(adj)
    want = oracles.diameter(adj)
    res = diameter(G)
    assert res.value == want
    if res.witness is not None and res.value != INF:
        assert is_path(G, res.witness.vertices)
        assert res.witness.length == res.value


@pytest.mark.parametrize("n, r", [(3, 2), (4, 2), (4, 3), (4, 4), (5, 2), (5, 3)])
def test_idempotent_diameter_matches_oracle(n, r):
    G = idempotent_graph(ideal(n, r))
    adj = oracle_graph(n, r, idem_only=True)
    assert diameter(G).value == oracles.diameter(adj)


@pytest.mark.parametrize("n, r", [(3, 2), (4, 2), (4, 3), (4, 4)])
def test_distances_match_oracle(n, r):
    S = ideal(n, r)
    G = graph(S)
    adj = oracle_graph(n, r)
    verts = sorted(adj)
    for u in verts[::5]:
        d = oracles.bfs(adj, u)
        for w in verts[::3]:
            res = distance(G, list(u), list(w))
            assert res.value == d.get(w, INF)
            if res.witness is not None:
                assert res.witness.length == res.value
                assert S.element(res.witness.vertices[0]).img == u
                assert S.element(res.witness.vertices[-1]).img == w
                assert is_path(G, res.witness.vertices)


@pytest.mark.parametrize("n, r", [(4, 2), (4, 3)])
def test_metric_axioms(n, r):
    S = ideal(n, r)
    G = graph(S)
    vs = [int(v) for v in G.vertices[::17]]
    D = {(u, w): distance(G, u, w).value for u in vs for w in vs}
    for u, w in D:
        assert (D[u, w] == 0) == (u == w)
        assert D[u, w] == D[w, u]
    for u, v, w in itertools.product(vs, repeat=3):
        assert D[u, w] <= D[u, v] + D[v, w]


@pytest.mark.parametrize("n, r", [(4, 2), (4, 3), (5, 2), (5, 3), (5, 4)])
def test_idempotent_distances_agree(n, r):
    # distances between idempotents are the same in both graphs
    S = ideal(n, r)
    G, E = graph(S), idempotent_graph(S)
    ids = [int(v) for v in E.vertices]
    step = max(1, len(ids) // 12)
    for u in ids[::step]:
        for w in ids[::step]:
            assert distance(G, u, w).value == distance(E, u, w).value


def test_idempotent_path_replacement():
    S = ideal(4, 3)
    G = graph(S)
    a, b = tdia2_witnesses(3, 2)
    S3 = ideal(3, 2)
    G3 = graph(S3)
    res = distance(G3, a, b)
    assert res.value == 4
    p = idempotent_path(G3, res.witness)
    assert p.length == 4
    assert all(is_idempotent(S3.element(v)) for v in p.vertices[1:-1])
    with pytest.raises(ValueError):
        idempotent_path(G, [0, 0])


def _idempotents(n, r):
    return [Transformation.from_zero_based(row.tolist()) for row in idempotent_rows(n, max_rank=r)]


@pytest.mark.parametrize("n, r", [(4, 2), (4, 3), (5, 2), (5, 3), (5, 4), (6, 5)])
def test_connect_idempotents(n, r):
    es = _idempotents(n, r)
    es = [e for e in es if e != identity(n)]
    step = max(1, len(es) // 40)
    for e, f in itertools.product(es[::step], es[::step // 2 + 1]):
        if e == f:
            continue
        path = connect_idempotents(e, f, r)
        assert path[0] == e and path[-1] == f
        assert len(path) - 1 <= 3
        assert len(set(path)) == len(path)
        for g in path:
            assert is_idempotent(g) and rank(g) <= r
        for g, h in zip(path, path[1:]):
            assert commutes(g, h)


def test_connect_idempotents_validation():
    e = T([1, 1, 1, 1])
    with pytest.raises(ValueError):
        connect_idempotents(e, e, 2)
    with pytest.raises(ValueError):
        connect_idempotents(e, T([2, 1, 1, 1]), 2)
    with pytest.raises(ValueError):
        connect_idempotents(e, T([1, 2, 3, 3]), 2)


def test_catalog_graphs():
    G = graph(teve_band_4())
    assert labeled(G).edge_labels() == {frozenset(p) for p in ("ab", "bc", "cd", "da")}
    assert diameter(G).value == 2
    H = graph(tald_chain_4())
    assert labeled(H).edge_labels() == {frozenset(p) for p in ("ab", "bc", "cd")}
    assert diameter(H).value == 3
    Z = graph(zero_band_3())
    assert len(Z) == 2 and diameter(Z).value == INF


def test_empty_and_single_vertex():
    G = graph(full(1))
    assert G.empty and diameter(G).value == 0


@pytest.mark.parametrize("fmt", ["json", "dot"])
def test_export(fmt, tmp_path):
    G = graph(tald_chain_4())
    data = export(G, fmt)
    if fmt == "json":
        L = import_json(data)
        assert L == labeled(G)
        assert json.loads(data)["vertices"] == ["a", "b", "c", "d"]
    else:
        text = data.decode()
        assert text.startswith("graph G {") and '"a" -- "b";' in text
        assert text.count("--") == 3


def test_import_json_rejects_bad_edge():
    with pytest.raises(ValueError):
        import_json('{"vertices": ["a", "b"], "edges": [[1, 0]]}')


def test_export_round_trip_ideal():
    G = graph(ideal(3, 2))
    L = import_json(export(G))
    adj = oracle_graph(3, 2)
    want = {frozenset((str(T(list(u))), str(T(list(w))))) for u in adj for w in adj[u]}
    assert L.edge_labels() == want


def test_budget_guard():
    G = graph(ideal(5, 4))
    with pytest.raises(BudgetExceeded):
        diameter(G, budget=1000)


def test_connectivity_helpers():
    G = graph(full(4))
    assert is_connected(G)
    assert eccentricity(G, [2, 1, 1, 1]) <= diameter(G).value
    assert sum(ball_sizes(G, [2, 1, 1, 1], 10)) == len(G)
    assert not is_connected(graph(full(3)))
    G = graph(zero_band_3())
    assert not is_connected(G)
    assert component_of(G, "e") == [0]


def test_written_pair_distance_matches_oracle():
    # the pair built from the cycle-with-tail notation sits at distance 3 in J_4(5)
    a, b = j4_written_pair(5)
    adj = oracle_graph(5, 4)
    want = oracles.distance(adj, a.img, b.img)
    assert want == 3
    assert distance(graph(ideal(5, 4)), a, b).value == want


def test_searched_pair_distance_matches_oracle():
    a, b = j4_distance4_pair(5)
    adj = oracle_graph(5, 4)
    assert oracles.distance(adj, a.img, b.img) == 4
    assert distance(graph(ideal(5, 4)), a, b).value == 4


def _ndi5_specs(n):
    """Every cycle-with-tail map on n points with m + p > rank and at least one default point."""
    pts = range(1, n + 1)
    for m in range(1, n):
        for p in range(2, n - m + 1):
            for used in itertools.permutations(pts, m + p):
                xs, zs = used[:m], used[m:]
                if xs[0] != min(xs):
                    continue
                for s in range(1, p):
                    yield Ndi5Spec(xs, zs, s)
                    rest = [x for x in pts if x not in used]
                    for w in rest[:1]:
                        for t in range(1, p):
                            if t != s:
                                yield Ndi5Spec(xs, zs, s, w, t)


@pytest.mark.parametrize("n", [4, 5])
def test_idempotents_commuting_with_cycle_tail_maps(n):
    idem = _idempotents(n, n)
    checked = 0
    for spec in _ndi5_specs(n):
        a = ndi5(n, spec)
        r = rank(a)
        m, p = len(spec.xs), len(spec.zs)
        if m + p <= r:
            continue
        x = lambda u: spec.xs[(u - 1) % m]  # noqa: E731
        listed = set(spec.xs) | set(spec.zs) | ({spec.w} if spec.w else set())
        for e in idem:
            if rank(e) > r or not commutes(a, e):
                continue
            checked += 1
            assert all(e(v) == v for v in spec.xs)
            assert all(e(spec.zs[j - 1]) == x(m - j + 1) for j in range(1, p + 1))
            if spec.w is not None:
                assert e(spec.w) == x(m - spec.t)
            for y in set(range(1, n + 1)) - listed:
                assert e(y) == x(m - spec.s)
    assert checked > 0


@pytest.mark.parametrize("n", range(2, 8))
def test_two_block_permutation_centralizer(n):
    # b = (y_1 ... y_k x_1>(x_1 ... x_m) with no default: only the identity permutation commutes
    from semicomm.constructions import ndi5_written
    perms = [T([p + 1 for p in q]) for q in itertools.permutations(range(n))]
    for m in range(1, n):
        xs = list(range(1, m + 1))
        ys = list(range(m + 1, n + 1))
        b = ndi5_written(n, None, ys + [xs[0]], xs)
        assert [g for g in perms if commutes(g, b)] == [identity(n)]


@pytest.mark.parametrize("n, r", [(4, 2), (4, 3), (5, 2), (5, 3), (6, 3), (6, 4), (6, 5), (7, 6)])
def test_interleaved_idempotents_far_apart(n, r):
    e, f = lja2_pair(n, r)
    ef, ff = lja2_configuration(n, r)
    assert rank(e) <= r and rank(f) <= r
    assert is_idempotent(e) and is_idempotent(f)
    # no idempotent of rank <= r commutes with both
    for g in _idempotents(n, r):
        assert not (commutes(g, e) and commutes(g, f)) or g in (e, f)
    assert not commutes(e, f)
    assert len(ef.pairs) == len(ff.pairs)


def test_interleaved_validation():
    with pytest.raises(ValueError):
        lja2_configuration(5, 4)
    with pytest.raises(ValueError):
        lja2_configuration(6, 4, variant="B")


@pytest.mark.parametrize("n", [4, 5, 6])
def test_candidate_counts(n):
    ne, ng = candidate_counts(n)
    ms = oracles.all_maps(n) if n <= 5 else None
    if ms is not None:
        assert ne == sum(1 for m in ms if oracles.is_idem(m)) - 1
    assert ng == math.factorial(n) - 1


def test_c_operator_against_brute_force():
    n = 4
    a = T([2, 1, 4, 4])
    want = {T(list(m)) for m in oracles.all_maps(n)
            if m != tuple(range(1, n + 1)) and (oracles.is_idem(m) or oracles.rank(m) == n)
            and oracles.commute(m, a.img)}
    assert c_operator(n, [a]) == want


def test_certificate_examples():
    a, b = tdia3_witnesses(6)
    res = lower_bound_certificate(6, a, b, detail=True)
    assert res.holds and res.witness is None
    assert lower_bound_certificate(6, a, b) is True
    c = cycle_permutation(4, (1, 2, 3, 4))
    res = lower_bound_certificate(4, c, T([2, 1, 1, 1]), detail=True)
    assert not res.holds and commutes(*res.witness)


def test_certificate_matches_oracle_n4():
    # a true certificate forces distance >= 5 between a and b in T(4)
    adj = oracles.commuting_graph(oracles.all_maps(4), oracles.compose)
    c = cycle_permutation(4, (1, 2, 3, 4))
    for m in oracles.all_maps(4)[::11]:
        if m in adj and lower_bound_certificate(4, c, T(list(m))):
            assert oracles.distance(adj, c.img, m) >= 5


def test_prime_cycle_component():
    n = 5
    G = graph(full(n))
    comp = component_of(G, cycle_permutation(n, range(1, n + 1)))
    els = {G.S.element(v) for v in comp}
    c = cycle_permutation(n, range(1, n + 1))
    assert els == {c.power(k) for k in range(1, n)}


def test_j4_witness_pairs_are_in_j4():
    for n in (5, 6, 7):
        for a, b in (j4_written_pair(n), j4_distance4_pair(n)):
            assert max(rank(a), rank(b)) <= 4 and not commutes(a, b)


def test_closure_graph_matches_oracle():
    S = closure([T([2, 3, 1, 1]), T([1, 1, 2, 4])])
    elems = [S.element(i).img for i in range(S.size)]
    adj = oracles.commuting_graph(elems, oracles.compose)
    assert diameter(graph(S)).value == oracles.diameter(adj)


def test_images_of_witnesses():
    a, b = tdia2_witnesses(6, 2)
    assert image(a) == {1, 2} and image(b) == {3, 4}
