from __future__ import annotations

import math

import pytest

from beauville_groups import suzuki
from beauville_groups.beauville import EXHAUSTIVE, STATUS_NONE_AUT, verify
from beauville_groups.grouptool import frobenius_count
from beauville_groups.suzuki import (
    IDENTITY4,
    WEYL,
    Mat4,
    SuzukiError,
    SzContext,
    SzOps,
    antidiagonal_transpose,
    mat4_inv,
    mat4_mul,
    ree_order_data,
    self_centralising,
    suzuki_order_data,
    sz_generators,
    torus,
    unipotent,
)

from oracles import suzuki_order


@pytest.fixture(scope="module")
def sz8():
    ctx = SzContext(3)
    return ctx, suzuki.sz_group(ctx)


@pytest.fixture(scope="module")
def sz8_search():
    return suzuki.sz_search(SzContext(3))


def test_context_rejects_even_or_small_e():
    for e in (1, 2, 4):
        with pytest.raises(SuzukiError):
            SzContext(e)


def test_theta_squares_to_frobenius():
    ctx = SzContext(5)
    F = ctx.field
    for a in range(F.q):
        assert ctx.theta(ctx.theta(a)) == F.mul(a, a)


@pytest.mark.parametrize("e", [3, 5])
def test_generators_are_inverted_by_antidiagonal_transpose(e):
    ctx = SzContext(e)
    F = ctx.field
    elems = [g.codes for g in sz_generators(ctx)]
    elems += [unipotent(ctx, a, b) for a in range(0, F.q, 3) for b in range(0, F.q, 5)]
    elems += [torus(ctx, lam) for lam in range(1, F.q)]
    for g in elems:
        assert mat4_mul(F, g, antidiagonal_transpose(g)) == IDENTITY4
        assert mat4_inv(F, g) == antidiagonal_transpose(g)


def test_unipotents_form_a_group_of_order_q_squared():
    ctx = SzContext(3)
    F = ctx.field
    S = {unipotent(ctx, a, b) for a in range(F.q) for b in range(F.q)}
    assert len(S) == F.q**2
    for g in list(S)[::7]:
        for h in list(S)[::11]:
            assert mat4_mul(F, g, h) in S


def test_table_multiplication_matches_generic(sz8):
    ctx, G = sz8
    ops = SzOps(ctx)
    for g in G.elements[:: 997]:
        for h in G.elements[:: 1511]:
            assert ops.mul(g, h) == mat4_mul(ctx.field, g, h)


def test_mat4_json_round_trip():
    ctx = SzContext(3)
    m = Mat4(ctx.field, WEYL)
    assert Mat4.from_json(ctx.field, m.to_json()) == m
    assert m.order() == 2


def test_order_data_sz8_and_sz32():
    d3 = suzuki_order_data(3)
    assert (d3.q, d3.r, d3.q_plus_r_plus_1, d3.q_minus_r_plus_1, d3.n) == (8, 4, 13, 5, 13)
    d5 = suzuki_order_data(5)
    assert (d5.q, d5.r, d5.q_plus_r_plus_1, d5.q_minus_r_plus_1, d5.n) == (32, 8, 41, 25, 41)
    for e in (3, 5, 7, 9, 11):
        d = suzuki_order_data(e)
        assert d.q_plus_r_plus_1 * d.q_minus_r_plus_1 == d.q**2 + 1
        assert math.gcd(d.n, 5) == 1


def test_ree_order_data():
    d = ree_order_data(3)
    assert (d.q, d.r, d.candidates, d.n) == (27, 9, (19, 37), 19)
    assert d.t2_type == (13, 19, 19) and d.coprime
    for e in (3, 5, 7):
        d = ree_order_data(e)
        assert d.r**2 == 3 * d.q
        assert d.candidates[0] * d.candidates[1] == d.q**2 - d.q + 1


def test_closure_is_refused_beyond_sz8():
    from beauville_groups.grouptool import ClosureBoundExceeded

    with pytest.raises(ClosureBoundExceeded):
        suzuki.sz_group(SzContext(5))


def test_sz8_order_spectrum_and_classes(sz8):
    _, G = sz8
    assert G.order == suzuki_order(8) == 29120
    assert G.spectrum() == {1, 2, 4, 5, 7, 13}
    assert len(G.classes) == 11
    sizes = {}
    for cid, cls in enumerate(G.classes):
        sizes.setdefault(G.class_orders[cid], []).append(len(cls))
    assert sum(sizes[2]) == (64 + 1) * 7  # involutions: |G| / q^2
    assert self_centralising(G, 13) and self_centralising(G, 7) and self_centralising(G, 5)


def test_sz8_search_types_and_counts(sz8_search):
    res = sz8_search
    assert res.types == ((2, 4, 5), (7, 13, 13))
    assert all(f > 0 for f in res.frobenius)
    G = res.group
    x, y, z = res.t2
    assert G.class_id(y) == G.class_id(z)
    assert frobenius_count(G, G.class_id(x), G.class_id(y), G.class_id(z)) == res.frobenius[1]


def test_sz8_structure_verifies_and_is_not_strongly_real():
    s = suzuki.sz_find_structure(SzContext(3))
    report = verify(s, EXHAUSTIVE)
    assert report.passed
    assert report.types == ((2, 4, 5), (7, 13, 13))
    assert report.generation == ("proven", "proven")
    assert report.strongly_real.status == STATUS_NONE_AUT


def test_reality_of_elements(sz8, sz8_search):
    ctx, G = sz8
    x1, y1, z1 = sz8_search.t1
    # elements of order 4 are not inverted by any automorphism of Sz(8)
    assert not suzuki.is_inverted_by_some_automorphism(G, ctx, y1)
    # torus elements (orders 5, 7, 13) and involutions are real
    for g in (x1, z1, *sz8_search.t2):
        assert suzuki.is_inverted_by_some_automorphism(G, ctx, g)


def test_file_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv(suzuki.CACHE_ENV, str(tmp_path))
    ctx = SzContext(3)
    suzuki._GROUPS.clear()
    G1 = suzuki.sz_group(ctx)
    assert (tmp_path / "sz8.bfg").exists()
    suzuki._GROUPS.clear()
    G2 = suzuki.sz_group(ctx)
    assert G2.order == G1.order and G2.class_of == G1.class_of
