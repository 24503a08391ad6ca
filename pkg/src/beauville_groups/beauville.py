"""Beauville structures: data model, verification and strongly-real witnesses.

A structure is a pair of triples (x, y, z) in one group G with xyz = 1.  It is
a (unmixed) Beauville structure when

1. each triple multiplies to 1 and generates G,
2. each type (l, m, n) is hyperbolic: 1/l + 1/m + 1/n < 1,
3. no non-identity power of an element of one triple is conjugate to a power
   of an element of the other.

``verify`` decides these either quickly (coprime orders, trace classes and
the maximal-subgroup ladder) or unconditionally by enumerating G.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import psl2, suzuki
from .ffield import Field, FieldError, make_field, field_of_order, smallest_primitive_root
from .grouptool import (
    CLOSURE_BOUND,
    FiniteGroup,
    closure,
    condition3,
    subgroup_order,
)
from .psl2 import GroupElement, LinearOps, Mat2, MatrixError
from .suzuki import Mat4, SzContext, SzOps

FAMILIES = ("PSL2", "SL2", "Sz")
FAST, EXHAUSTIVE = "fast", "exhaustive"
FULL_AUT_SEARCH_MAX_Q = 13
FAST_CLOSURE_LIMIT = 20_000  # fast mode settles an undecided ladder by closure below this order

STATUS_WITNESS = "witness"
STATUS_NONE_FAMILY = "none found (family searched)"
STATUS_NONE_AUT = "none (covers Aut)"


class StructureError(ValueError):
    pass


def is_hyperbolic(l: int, m: int, n: int) -> bool:
    """1/l + 1/m + 1/n < 1, compared exactly."""
    if min(l, m, n) < 1:
        raise ValueError("orders must be positive")
    return Fraction(1, l) + Fraction(1, m) + Fraction(1, n) < 1


# ---------------------------------------------------------------------------
# group descriptor


@dataclass(frozen=True)
class GroupSpec:
    family: str  # "PSL2" | "SL2" | "Sz"
    field: Field

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise StructureError(f"unknown family {self.family!r}")
        if self.family == "Sz" and (self.field.p != 2 or self.field.e % 2 == 0 or self.field.e < 3):
            raise StructureError("Sz(q) needs q = 2^e with e odd >= 3")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        if self.family == "Sz":
            return suzuki.sz_order(self.q)
        return psl2.group_order(self.q, self.family)

    def ops(self):
        if self.family == "Sz":
            return SzOps(SzContext(self.field.e, self.field))
        return LinearOps(self.field, self.family)

    def key(self, m) -> tuple:
        """Hashable canonical element for the ops protocol."""
        if self.family == "Sz":
            return m.codes
        return psl2.canonical_codes(self.field, m.codes, self.family)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"family": self.family, "q": self.q}
        if self.field.e > 1:
            out["modulus"] = str(self.field.modulus)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        family = data.get("family")
        if family not in FAMILIES:
            raise StructureError(f"unknown family {family!r}")
        try:
            F = field_of_order(int(data["q"]), data.get("modulus"))
        except (KeyError, TypeError, FieldError) as exc:
            raise StructureError(f"bad group descriptor: {exc}") from exc
        return cls(family, F)

    def __str__(self):
        name = {"PSL2": "L2", "SL2": "SL2", "Sz": "Sz"}[self.family]
        return f"{name}({self.q})"


# ---------------------------------------------------------------------------
# triples and structures


@dataclass(frozen=True)
class Triple:
    x: Any
    y: Any
    z: Any

    @classmethod
    def from_xy(cls, x, y) -> "Triple":
        return cls(x, y, (x * y).inverse())

    def rotate(self, k: int) -> "Triple":
        return Triple(*suzuki.rotate((self.x, self.y, self.z), k))

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def to_json(self, group: GroupSpec) -> dict:
        mode = group.family
        enc = (lambda m: m.to_json()) if mode == "Sz" else (lambda m: m.to_json(mode))
        return {"x": enc(self.x), "y": enc(self.y), "z": enc(self.z)}

    @classmethod
    def from_json(cls, group: GroupSpec, data: dict) -> "Triple":
        F = group.field
        dec = (lambda d: Mat4.from_json(F, d)) if group.family == "Sz" else (lambda d: Mat2.from_json(F, d))
        try:
            x, y = dec(data["x"]), dec(data["y"])
            z = dec(data["z"]) if "z" in data else None
        except (KeyError, TypeError, MatrixError, suzuki.SuzukiError, FieldError) as exc:
            raise StructureError(f"malformed triple: {exc}") from exc
        try:
            return cls(x, y, z) if z is not None else cls.from_xy(x, y)
        except (MatrixError, suzuki.SuzukiError) as exc:
            raise StructureError(f"singular matrix in triple: {exc}") from exc


@dataclass
class BeauvilleStructure:
    group: GroupSpec
    t1: Triple
    t2: Triple
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "group": self.group.to_json(),
            "t1": self.t1.to_json(self.group),
            "t2": self.t2.to_json(self.group),
        }
        if self.provenance:
            out["provenance"] = self.provenance
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "BeauvilleStructure":
        if not isinstance(data, dict) or not {"group", "t1", "t2"} <= data.keys():
            raise StructureError("structure needs 'group', 't1' and 't2'")
        group = GroupSpec.from_json(data["group"])
        return cls(group, Triple.from_json(group, data["t1"]), Triple.from_json(group, data["t2"]),
                   dict(data.get("provenance", {})))


# ---------------------------------------------------------------------------
# element helpers


def _det_ok(group: GroupSpec, m) -> bool:
    if group.family == "Sz":
        return True
    return psl2.mat_det(group.field, m.codes) == 1


def _is_identity(group: GroupSpec, m) -> bool:
    if group.family == "Sz":
        return m.codes == suzuki.IDENTITY4
    return psl2.is_identity_codes(group.field, m.codes, group.family)


def element_order(group: GroupSpec, m) -> int:
    if group.family == "Sz":
        return m.order()
    return GroupElement(m, group.family).order()


def standard_generators(group: GroupSpec) -> list:
    """A generating set of the whole group, used when a triple fails to generate."""
    F = group.field
    if group.family == "Sz":
        return suzuki.sz_generators(SzContext(F.e, F))
    gens = [Mat2(F, (1, 1, 0, 1)), Mat2(F, (0, 1, F.neg(1), 0))]
    if F.e > 1:
        g = smallest_primitive_root(F)
        gens.append(Mat2(F, (g.code, 0, 0, F.inv(g.code))))
    return gens


# ---------------------------------------------------------------------------
# condition (3) by trace classes


def _power_keys(group: GroupSpec, m, order: int) -> tuple[set, set]:
    """(decisive keys, parabolic keys) for the non-identity powers of m.

    Non-central, non-parabolic elements of SL2(q) are conjugate iff their
    traces agree (up to sign in L2(q)); -I is its own class.  Parabolic
    elements with equal trace may lie in different classes, so they are kept
    apart and can only leave the test undecided.
    """
    F, mode = group.field, group.family
    ops = LinearOps(F, psl2.SL2)
    minus = (F.neg(1), 0, 0, F.neg(1))
    two = F.from_int(2)
    decisive, parabolic = set(), set()
    x = m.codes
    for _ in range(1, order):
        if mode == psl2.SL2 and x == minus:
            decisive.add(("central",))
        else:
            t = psl2.mat_trace(F, x)
            if mode == psl2.PSL2:
                t = min(t, F.neg(t))
            if t == two or t == F.neg(two):
                parabolic.add(("parabolic", t))
            else:
                decisive.add(("trace", t))
        x = ops.mul(x, m.codes)
    return decisive, parabolic


def condition3_by_traces(group: GroupSpec, t1: Triple, t2: Triple, orders1, orders2) -> bool | None:
    d1, p1, d2, p2 = set(), set(), set(), set()
    for m, o in zip(t1, orders1):
        d, p = _power_keys(group, m, o)
        d1 |= d
        p1 |= p
    for m, o in zip(t2, orders2):
        d, p = _power_keys(group, m, o)
        d2 |= d
        p2 |= p
    if d1 & d2:
        return False
    if p1 & p2:
        return None
    return True


# ---------------------------------------------------------------------------
# strongly real


@dataclass(frozen=True)
class Witness:
    conjugator: Any  # Mat2 or 16-tuple
    frobenius_power: int
    rotations: tuple[int, int]

    def to_json(self, group: GroupSpec) -> dict:
        if group.family == "Sz":
            conj = Mat4(group.field, self.conjugator).to_json()
        else:
            conj = self.conjugator.to_json()
        return {"conjugator": conj, "frobenius_power": self.frobenius_power,
                "rotations": list(self.rotations)}


@dataclass(frozen=True)
class StronglyReal:
    status: str
    witness: Witness | None
    candidates: int

    def to_json(self, group: GroupSpec) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.to_json(group) if self.witness else None,
            "candidates": self.candidates,
        }


def _pgl2_reps(F: Field):
    for a, b, c, d in itertools.product(range(F.q), repeat=4):
        if psl2.mat_det(F, (a, b, c, d)) == 0:
            continue
        first = a or b
        if first == 1:
            yield Mat2(F, (a, b, c, d))


def _apply_alpha(F: Field, M: Mat2, Minv, j: int, m: Mat2) -> tuple:
    return psl2.mat_mul(F, psl2.mat_mul(F, M.codes, psl2.frobenius_matrix(m, j).codes), Minv)


def _inverts(group: GroupSpec, image: tuple, m: Mat2) -> bool:
    F = group.field
    target = psl2.mat_inv(F, m.codes)
    if image == target:
        return True
    return group.family == psl2.PSL2 and image == psl2.mat_neg(F, target)


def _rotation_pair(flags: Sequence[bool]) -> int | None:
    """Least rotation k with the first two entries of the rotated triple inverted."""
    for k in range(3):
        if flags[k] and flags[(k + 1) % 3]:
            return k
    return None


def _linear_candidates(group: GroupSpec, effort: str):
    seen = []
    for M in psl2.standard_involutors(group.field):
        seen.append(M)
        yield M
    if effort == EXHAUSTIVE and group.q <= FULL_AUT_SEARCH_MAX_Q:
        have = {psl2.canonical_codes(group.field, M.codes, psl2.PGL2) for M in seen}
        for M in _pgl2_reps(group.field):
            if M.codes not in have:
                yield M


def _alpha_is_homomorphism(group: GroupSpec, M: Mat2, j: int) -> bool:
    F = group.field
    Minv = psl2.mat_inv(F, M.codes)
    gens = standard_generators(group)
    for g, h in itertools.product(gens, repeat=2):
        lhs = _apply_alpha(F, M, Minv, j, g * h)
        rhs = psl2.mat_mul(F, _apply_alpha(F, M, Minv, j, g), _apply_alpha(F, M, Minv, j, h))
        if psl2.canonical_codes(F, lhs, group.family) != psl2.canonical_codes(F, rhs, group.family):
            return False
    return True


def strongly_real_check(structure: BeauvilleStructure, effort: str = FAST,
                        G: FiniteGroup | None = None) -> StronglyReal:
    """Search alpha: g -> M phi^j(g) M^-1 inverting x_i, y_i of both rotated triples.

    The witness is the first hit in the order (candidate M, j, rotation of
    T1, rotation of T2).  Absence is reported as covering Aut(G) only when
    every automorphism was a candidate.
    """
    group = structure.group
    F = group.field
    if group.family == "Sz":
        ctx = SzContext(F.e, F)
        G = G if G is not None else suzuki.sz_group(ctx)
        t1 = tuple(m.codes for m in structure.t1)
        t2 = tuple(m.codes for m in structure.t2)
        w = suzuki.sz_strongly_real_search(G, ctx, t1, t2)
        n = F.e * G.order
        if w is None:
            return StronglyReal(STATUS_NONE_AUT, None, n)
        return StronglyReal(STATUS_WITNESS, Witness(w.conjugator, w.frobenius_power, w.rotations), n)

    elems = list(structure.t1) + list(structure.t2)
    count = 0
    full = False
    for M in _linear_candidates(group, effort):
        Minv = psl2.mat_inv(F, M.codes)
        for j in range(F.e):
            count += 1
            flags = [_inverts(group, _apply_alpha(F, M, Minv, j, m), m) for m in elems]
            r1 = _rotation_pair(flags[:3])
            r2 = _rotation_pair(flags[3:])
            if r1 is not None and r2 is not None:
                if not _alpha_is_homomorphism(group, M, j):  # pragma: no cover - conjugation is always one
                    continue
                return StronglyReal(STATUS_WITNESS, Witness(M, j, (r1, r2)), count)
    full = effort == EXHAUSTIVE and group.q <= FULL_AUT_SEARCH_MAX_Q
    return StronglyReal(STATUS_NONE_AUT if full else STATUS_NONE_FAMILY, None, count)


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    effort: str
    group: str
    types: tuple[tuple[int, int, int], tuple[int, int, int]]
    cond1: tuple[bool, bool]
    cond2: tuple[bool, bool]
    generation: tuple[str, str]
    generation_method: str
    cond3: bool | None
    cond3_method: str
    strongly_real: StronglyReal | None = None
    disagreements: list[str] = field(default_factory=list)
    group_spec: GroupSpec | None = field(default=None, repr=False)
    cond3_fast: tuple[bool | None, str] | None = None

    @property
    def passed(self) -> bool:
        return (all(self.cond1) and all(self.cond2)
                and all(g == "proven" for g in self.generation)
                and self.cond3 is True and not self.disagreements)

    def to_json(self) -> dict:
        return {
            "effort": self.effort,
            "group": self.group,
            "passed": self.passed,
            "types": [list(t) for t in self.types],
            "cond1": list(self.cond1),
            "cond2": list(self.cond2),
            "generation": list(self.generation),
            "generation_method": self.generation_method,
            "cond3": self.cond3,
            "cond3_method": self.cond3_method,
            "cond3_fast": None if self.cond3_fast is None else
            {"holds": self.cond3_fast[0], "method": self.cond3_fast[1]},
            "strongly_real": self.strongly_real.to_json(self.group_spec) if self.strongly_real else None,
            "disagreements": list(self.disagreements),
        }


def _cond1(group: GroupSpec, t: Triple, G: FiniteGroup | None) -> bool:
    if not all(_det_ok(group, m) for m in t):
        return False
    if G is not None and not all(group.key(m) in G.index for m in t):
        return False
    return _is_identity(group, t.x * t.y * t.z)


def _generation_fast(group: GroupSpec, t: Triple) -> tuple[str, str]:
    """(verdict, method): the ladder, or closure for small groups it leaves open."""
    if group.family == "Sz":
        return _generation_closure(group, t)[0], "closure"
    try:
        verdict, _ = psl2.generation_ladder(group.field, [t.x, t.y, t.z], triple=True)
    except MatrixError:
        return "disproven", "ladder"
    if group.family == psl2.SL2 and group.q <= 3:
        verdict = "unknown"
    if verdict == "unknown" and group.order <= FAST_CLOSURE_LIMIT:
        return _generation_closure(group, t)[0], "closure"
    return verdict, "ladder"


def _generation_closure(group: GroupSpec, t: Triple, bound: int = CLOSURE_BOUND) -> tuple[str, int]:
    ops = group.ops()
    n = subgroup_order(ops, [group.key(t.x), group.key(t.y)], bound=max(bound, group.order))
    return ("proven" if n == group.order else "disproven"), n


def enumerate_group(group: GroupSpec, hint: Sequence = ()) -> FiniteGroup:
    """The whole group as a FiniteGroup; ``hint`` generators are tried first."""
    if group.family == "Sz":
        return suzuki.sz_group(SzContext(group.field.e, group.field))
    ops = group.ops()
    if hint:
        G = closure(ops, [group.key(m) for m in hint], bound=group.order + 1)
        if G.order == group.order:
            return G
    return closure(ops, [group.key(m) for m in standard_generators(group)], bound=group.order + 1)


def verify(structure: BeauvilleStructure, effort: str = FAST) -> VerificationReport:
    """Check conditions (1)-(3) and look for a strongly-real witness.

    ``fast`` never enumerates L2/SL2; ``exhaustive`` enumerates the group,
    decides everything from the enumeration and cross-checks the fast
    verdicts, recording any disagreement (which also fails the report).
    """
    if effort not in (FAST, EXHAUSTIVE):
        raise ValueError(f"unknown effort {effort!r}")
    group = structure.group
    t1, t2 = structure.t1, structure.t2
    dets = tuple(all(_det_ok(group, m) for m in t) for t in (t1, t2))
    if not all(dets):
        return VerificationReport(effort, str(group), ((0, 0, 0), (0, 0, 0)), dets, (False, False),
                                  ("unknown", "unknown"), "none", None, "undecided",
                                  None, [], group)
    types = tuple(tuple(element_order(group, m) for m in t) for t in (t1, t2))
    cond2 = tuple(is_hyperbolic(*ty) for ty in types)

    fast = (_generation_fast(group, t1), _generation_fast(group, t2))
    gen_fast = tuple(v for v, _ in fast)
    G = None
    disagreements: list[str] = []
    exhaustive = effort == EXHAUSTIVE or group.family == "Sz"
    if exhaustive:
        G = enumerate_group(group, hint=[t1.x, t1.y])
        generation = tuple(_generation_closure(group, t)[0] for t in (t1, t2))
        method = "closure"
        for i, (f, e) in enumerate(zip(gen_fast, generation)):
            if f != "unknown" and f != e:
                disagreements.append(f"generation of T{i + 1}: fast {f}, exhaustive {e}")
    else:
        generation = gen_fast
        method = "+".join(sorted({m for _, m in fast}))
    cond1 = (_cond1(group, t1, G), _cond1(group, t2, G))

    c3_fast = condition3(None, [], [], types[0], types[1], exhaustive=False)
    c3_value, c3_method = c3_fast.holds, c3_fast.method
    if c3_value is None and group.family != "Sz":
        c3_value = condition3_by_traces(group, t1, t2, types[0], types[1])
        c3_method = "trace" if c3_value is not None else "undecided"
    if effort == EXHAUSTIVE and all(cond1):
        keys1 = [group.key(m) for m in t1]
        keys2 = [group.key(m) for m in t2]
        ex = condition3(G, keys1, keys2, types[0], types[1], exhaustive=True)
        if c3_value is not None and c3_value != ex.holds:
            disagreements.append(f"condition (3): {c3_method} {c3_value}, exhaustive {ex.holds}")
        fast_c3 = (c3_value, c3_method)
        c3_value, c3_method = ex.holds, ex.method
    else:
        fast_c3 = (c3_value, c3_method)

    sr = strongly_real_check(structure, effort, G) if all(cond1) else None
    return VerificationReport(effort, str(group), types, cond1, cond2, generation, method,
                              c3_value, c3_method, sr, disagreements, group, fast_c3)
