from __future__ import annotations

import json
from fractions import Fraction

import pytest

from beauville_groups import recipes
from beauville_groups.beauville import (
    EXHAUSTIVE,
    FAST,
    STATUS_WITNESS,
    BeauvilleStructure,
    GroupSpec,
    StructureError,
    Triple,
    condition3_by_traces,
    is_hyperbolic,
    strongly_real_check,
    verify,
)
from beauville_groups.ffield import field_of_order
from beauville_groups.psl2 import PSL2, SL2, Mat2, is_inverted_by


def test_hyperbolic():
    assert is_hyperbolic(2, 3, 7)
    assert not is_hyperbolic(2, 3, 6)
    assert not is_hyperbolic(3, 3, 3)
    assert is_hyperbolic(4, 4, 3)
    assert not is_hyperbolic(2, 2, 100)
    with pytest.raises(ValueError):
        is_hyperbolic(0, 3, 7)


def test_group_spec_json_round_trip():
    spec = GroupSpec(SL2, field_of_order(27))
    data = spec.to_json()
    assert data == {"family": "SL2", "q": 27, "modulus": "t^3+2t+1"}
    assert GroupSpec.from_json(data) == spec
    assert str(spec) == "SL2(27)"
    assert GroupSpec(PSL2, field_of_order(13)).to_json() == {"family": "PSL2", "q": 13}


def test_triple_from_xy_has_product_one():
    F = field_of_order(13)
    t = Triple.from_xy(Mat2.of(F, [[2, 0], [0, 7]]), Mat2.of(F, [[3, 3], [-3, 6]]))
    assert t.x * t.y * t.z == Mat2.identity(F)
    assert Triple(*t.rotate(1)).x == t.y


def test_structure_json_round_trip_is_byte_stable():
    s = recipes.construct("sl2", 27)
    text = s.dumps()
    again = BeauvilleStructure.from_json(json.loads(text))
    assert again.dumps() == text
    assert again.group == s.group


def test_verify_detects_bad_determinant():
    s = recipes.construct("psl2", 13)
    data = s.to_json()
    data["t1"]["x"]["a"]["coeffs"] = [5]
    bad = BeauvilleStructure.from_json(data)
    report = verify(bad, FAST)
    assert not report.passed


def test_verify_detects_condition3_failure():
    s = recipes.construct("psl2", 13)
    clash = BeauvilleStructure(s.group, s.t1, s.t1, {})
    for effort in (FAST, EXHAUSTIVE):
        report = verify(clash, effort)
        assert report.cond3 is False or report.cond3 is None
        assert not report.passed


def test_verify_detects_non_generation():
    F = field_of_order(13)
    x = Mat2.of(F, [[2, 0], [0, 7]])
    y = Mat2.of(F, [[4, 1], [0, 10]])  # both upper triangular
    s = recipes.construct("psl2", 13)
    bad = BeauvilleStructure(s.group, Triple.from_xy(x, y), s.t2, {})
    for effort in (FAST, EXHAUSTIVE):
        r = verify(bad, effort)
        assert r.generation[0] == "disproven"
        assert not r.passed


@pytest.mark.parametrize("q", [13, 25, 27, 49])
def test_fast_and_exhaustive_agree(q):
    for fam in ("psl2", "sl2"):
        s = recipes.construct(fam, q)
        fast = verify(s, FAST)
        if q <= 27:
            full = verify(s, EXHAUSTIVE)
            assert full.passed and not full.disagreements
            assert (fast.cond3, fast.generation) == (full.cond3, full.generation)
        assert fast.passed


def test_trace_method_for_condition3():
    s = recipes.construct("psl2", 13)
    o1, o2 = verify(s, FAST).types
    assert condition3_by_traces(s.group, s.t1, s.t2, o1, o2) is True
    assert condition3_by_traces(s.group, s.t1, s.t1, o1, o1) is False


def test_strongly_real_witness_is_inverting_pair():
    s = recipes.construct("sl2", 19)
    sr = strongly_real_check(s, FAST)
    assert sr.status == STATUS_WITNESS
    w = sr.witness
    assert w.frobenius_power == 0  # prime field: no field automorphisms
    for t, k in ((s.t1, w.rotations[0]), (s.t2, w.rotations[1])):
        x, y, _ = t.rotate(k)
        assert is_inverted_by(x, w.conjugator) and is_inverted_by(y, w.conjugator)


def test_report_json_is_serialisable():
    report = verify(recipes.construct("psl2", 8), EXHAUSTIVE)
    data = report.to_json()
    assert json.loads(json.dumps(data)) == data
    assert data["passed"] is True
    assert data["cond3_method"] == "exhaustive"


def test_unknown_family_rejected():
    with pytest.raises(StructureError):
        GroupSpec.from_json({"family": "GL7", "q": 5})
