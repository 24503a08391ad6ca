"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line in ``RESULTS``; ``conftest.py`` prints
them after the run (``pytest tests/test_acceptance.py``), and running this
file as a script prints them directly.
"""

from __future__ import annotations

import functools
import random
import time

import pytest

from beauville_groups import grouptool, recipes, suzuki
from beauville_groups.beauville import EXHAUSTIVE, FAST, STATUS_NONE_AUT, STATUS_WITNESS, verify
from beauville_groups.ffield import Polynomial, dedekind_symbol, field_of_order
from beauville_groups.grouptool import frobenius_count, genus, lift_check, named_group
from beauville_groups.psl2 import SL2, GroupElement, Mat2, trace_class

from oracles import BruteField, code, euler_jacobi, group_order, mat2_order, prime_powers

RESULTS: dict[int, tuple[bool, str]] = {}

SMALL_Q = [7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31]
TABLE1 = {
    11: (8, 7, 3), 19: (2, 10, 11), 23: (5, 14, 18), 31: (24, 22, 14),
    43: (3, 29, 31), 47: (31, 44, 27), 59: (10, 6, 15), 67: (2, 34, 35),
    71: (14, 66, 8), 79: (3, 53, 55), 83: (8, 52, 59), 103: (5, 62, 66),
}


def criterion(number: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS[number] = (False, f"{title} -- {type(exc).__name__}: {exc}".splitlines()[0])
                raise
            elapsed = time.perf_counter() - start
            RESULTS[number] = (True, f"{title} ({detail + '; ' if detail else ''}{elapsed:.1f}s)")
        return run
    return wrap


def summary_lines() -> list[str]:
    lines = []
    for n in sorted(RESULTS):
        ok, text = RESULTS[n]
        lines.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {text}")
    return lines


# ---------------------------------------------------------------------------


@criterion(1, "exhaustive positive constructions for 5 < q <= 31")
def test_criterion_1_exhaustive_constructions():
    start = time.perf_counter()
    for q in SMALL_Q:
        for family in ("psl2", "sl2"):
            report = verify(recipes.construct(family, q), EXHAUSTIVE)
            assert report.passed, (family, q, report.to_json())
            assert report.generation == ("proven", "proven") and report.generation_method == "closure"
            assert report.cond3 is True and report.cond3_method == "exhaustive"
            assert report.cond2 == (True, True)
            assert report.strongly_real.status == STATUS_WITNESS, (family, q)
    elapsed = time.perf_counter() - start
    assert elapsed < 600
    return f"{2 * len(SMALL_Q)} structures"


@criterion(2, "golden examples bit-exact")
def test_criterion_2_golden_examples():
    fixtures = recipes.golden_fixtures()
    for name, fx in fixtures.items():
        report = verify(fx.structure(), EXHAUSTIVE if fx.q <= 31 else FAST)
        assert report.passed, name
    # 3A
    s = recipes.construct("psl2", 8)
    F, t2 = s.group.field, s.provenance["t2"]
    assert (t2["x"], t2["w"]) == ("t^2", "t+1") and 1 - F("t^2") * F("t+1") == F("t^2") ** 2
    # 3B
    t2 = recipes.construct("psl2", 13).provenance["t2"]
    assert t2["s"] == "6" and not field_of_order(13)(6).is_square() and t2["y"] == "3"
    # 3C
    F = field_of_order(37)
    t2 = recipes.construct("psl2", 37).provenance["t2"]
    assert F(int(t2["s"])) == F(-7) == F(17) ** 2 and F(int(t2["tq"])) == F(3) == F(15) ** 2
    assert t2["y"] == "16"
    # 5A
    s = recipes.construct("sl2", 19)
    F, t2 = s.group.field, s.provenance["t2"]
    assert F(int(t2["x"])) == F(-7) and F(int(t2["w"])) == F(-5) and 1 - F(-7) * F(-5) == F(4)
    assert sorted(verify(s, EXHAUSTIVE).types) == [(9, 9, 9), (20, 20, 19)]
    # 5B
    s = recipes.construct("sl2", 27)
    F, t2 = s.group.field, s.provenance["t2"]
    d = F("t")
    assert d**4 - d**3 + d**2 - d + 1 == F("-t^2-1")
    assert dedekind_symbol(Polynomial.parse("-t^2-1", 3), F.modulus) == 1
    assert (t2["x"], t2["w"]) == ("0", "t^2+1")
    assert verify(s, FAST).types[1] == (13, 13, 13)
    return f"{len(fixtures)} fixtures"


@pytest.mark.xfail(strict=True, reason="reference q=71 entry d = 7^7 = 14 has order 10, not a primitive root")
@criterion(3, "primitive-root table reproduced exactly")
def test_criterion_3_table1():
    mismatches = []
    for q, expected in TABLE1.items():
        row = recipes.table1_row(q)
        if (row.d, row.d_inv, row.r) != expected:
            mismatches.append(f"q={q}: computed {(row.d, row.d_inv, row.r)}, expected {expected}")
    assert not mismatches, f"{len(TABLE1) - len(mismatches)}/12 rows match; " + "; ".join(mismatches)


@criterion(4, "negative certificates and C5 x C5")
def test_criterion_4_negative_certificates():
    start = time.perf_counter()
    for name in ("l2-2", "l2-3", "l2-4", "a5", "sl2-3", "sl2-5", "metacyclic-5"):
        G = named_group(name)
        assert not grouptool.exhaustive_beauville_search(G).exists, name
    assert named_group("metacyclic-5").order == 125
    assert grouptool.exhaustive_beauville_search(named_group("c5xc5")).exists
    assert time.perf_counter() - start < 300
    return "7 groups without, C5xC5 with"


@criterion(5, "Sz(8)")
def test_criterion_5_suzuki():
    start = time.perf_counter()
    ctx = suzuki.SzContext(3)
    G = suzuki.sz_group(ctx)
    assert G.order == 29120
    assert G.spectrum() == {1, 2, 4, 5, 7, 13}
    s = suzuki.sz_find_structure(ctx)
    report = verify(s, EXHAUSTIVE)
    assert report.passed and report.types == ((2, 4, 5), (7, 13, 13))
    x, y, _ = s.t2
    n = frobenius_count(G, G.class_id(x.codes), G.class_id(y.codes), G.class_id(y.codes))
    assert n > 0
    assert report.strongly_real.status == STATUS_NONE_AUT
    assert time.perf_counter() - start < 600
    return f"N = {n}"


@criterion(6, "fast path for 31 < q <= 997 and agreement for q <= 31")
def test_criterion_6_fast_path():
    worst = 0.0
    qs = prime_powers(32, 997)
    for q in qs:
        for family in ("psl2", "sl2"):
            start = time.perf_counter()
            report = verify(recipes.construct(family, q), FAST)
            elapsed = time.perf_counter() - start
            worst = max(worst, elapsed)
            assert report.passed, (family, q)
            assert report.generation == ("proven", "proven") and report.generation_method == "ladder"
            assert report.cond3_method in ("gcd", "trace")
            assert elapsed < 10, (family, q, elapsed)
    for q in SMALL_Q:
        for family in ("psl2", "sl2"):
            s = recipes.construct(family, q)
            fast, full = verify(s, FAST), verify(s, EXHAUSTIVE)
            assert not full.disagreements, (family, q, full.disagreements)
            assert (fast.passed, fast.generation, fast.cond3) == (full.passed, full.generation, full.cond3)
    return f"{2 * len(qs)} constructions, worst {worst:.2f}s"


@criterion(7, "property suites")
def test_criterion_7_properties():
    rng = random.Random(20240607)
    # Dedekind symbol vs Euler oracle
    for _ in range(1000):
        p = rng.choice([3, 7, 11, 19])
        f = Polynomial([rng.randrange(p) for _ in range(rng.randint(1, 4))] + [1], p)
        g = Polynomial([rng.randrange(p) for _ in range(rng.randint(1, 7))], p)
        assert dedekind_symbol(g, f) == euler_jacobi(g.coeffs, f.coeffs, p)
    # reciprocity on coprime monic pairs
    pairs = 0
    while pairs < 1000:
        p = rng.choice([3, 7, 11, 19])
        g, f = (Polynomial([rng.randrange(p) for _ in range(rng.randint(1, 5))] + [1], p) for _ in range(2))
        if g.gcd(f).degree != 0:
            continue
        pairs += 1
        sign = (-1) ** (((p - 1) // 2) * f.degree * g.degree)
        assert dedekind_symbol(g, f) * dedekind_symbol(f, g) == sign
    # sqrt / is_square exhaustive for q <= 343
    for q in prime_powers(2, 343):
        F = field_of_order(q)
        if F.e == 1:
            squares = {(a * a) % q for a in range(q)}
        else:
            squares = {code(s, F.p) for s in BruteField(F.p, F.modulus.coeffs).squares()}
        for c in range(q):
            assert F.is_square_code(c) == (c in squares)
            r = F.sqrt_code(c)
            assert (r is not None and F.mul(r, r) == c) if c in squares else r is None
    # element order vs trace class on 1000 random SL2 elements per field
    fields = [7, 8, 9, 16, 25, 27, 31, 49, 81, 125]
    for q in fields:
        F = field_of_order(q)
        for _ in range(1000):
            a, b = rng.randrange(q), rng.randrange(q)
            if a:
                c = rng.randrange(q)
                d = F.div(F.add(1, F.mul(b, c)), a)
            else:
                b = rng.randrange(1, q)
                c, d = F.neg(F.inv(b)), rng.randrange(q)
            g = GroupElement(Mat2(F, (a, b, c, d)), SL2)
            n = g.order()
            assert trace_class(g.matrix.trace()).sl2_bound % n == 0
            if F.e == 1:
                assert n == mat2_order(q, g.matrix.codes, projective=False)
    # lift faithfulness
    F = field_of_order(11)
    t, _ = recipes.triple_T2(F, "PSL2")
    assert not lift_check(F, list(t)).any_choice_faithful
    for q in (13, 17, 25, 29, 37):
        F = field_of_order(q)
        t, _ = recipes.triple_T1(F, SL2)
        res = lift_check(F, list(t))
        assert res.all_faithful and all(o % 2 for o in res.orders)
    return "symbol, reciprocity, sqrt, trace classes, lifts"


@criterion(8, "genus utility")
def test_criterion_8_genus():
    assert genus(25, 5, 5, 5) == 6 == (5 - 1) * (5 - 2) // 2
    assert genus(60, 2, 3, 5) == 0
    return ""


if __name__ == "__main__":  # pragma: no cover
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
