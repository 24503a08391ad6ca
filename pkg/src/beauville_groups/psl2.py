"""2x2 matrices over GF(q) and the groups SL2, GL2, PSL2 = L2, PGL2.

Matrices are stored as 4-tuples of field codes ``(a, b, c, d)`` (row major).
A group element pairs a matrix with a *mode*; projective modes pick a
canonical representative so that equal elements have equal keys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from sympy import factorint

from .ffield import Field, FieldElement, FieldError, quad_ext

SL2, GL2, PSL2, PGL2 = "SL2", "GL2", "PSL2", "PGL2"
MODES = (SL2, GL2, PSL2, PGL2)
PROJECTIVE = (PSL2, PGL2)

Codes = tuple  # (a, b, c, d)


class MatrixError(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw matrix arithmetic on codes


def mat_mul(F: Field, m: Codes, n: Codes) -> Codes:
    a, b, c, d = m
    e, f, g, h = n
    add, mul = F.add, F.mul
    return (
        add(mul(a, e), mul(b, g)),
        add(mul(a, f), mul(b, h)),
        add(mul(c, e), mul(d, g)),
        add(mul(c, f), mul(d, h)),
    )


def mat_det(F: Field, m: Codes) -> int:
    a, b, c, d = m
    return F.sub(F.mul(a, d), F.mul(b, c))


def mat_inv(F: Field, m: Codes) -> Codes:
    a, b, c, d = m
    det = mat_det(F, m)
    if det == 0:
        raise MatrixError("singular matrix")
    di = F.inv(det)
    return (F.mul(d, di), F.mul(F.neg(b), di), F.mul(F.neg(c), di), F.mul(a, di))


def mat_neg(F: Field, m: Codes) -> Codes:
    return tuple(F.neg(x) for x in m)


def mat_trace(F: Field, m: Codes) -> int:
    return F.add(m[0], m[3])


def canonical_codes(F: Field, m: Codes, mode: str) -> Codes:
    """Representative of m in ``mode``.

    PSL2: of {M, -M} the one whose first nonzero entry has the smaller code.
    PGL2: scaled so the first nonzero entry is 1.
    """
    if mode == PSL2:
        for x in m:
            if x:
                nx = F.neg(x)
                return tuple(F.neg(y) for y in m) if nx < x else m
        raise MatrixError("zero matrix")
    if mode == PGL2:
        for x in m:
            if x:
                if x == 1:
                    return m
                xi = F.inv(x)
                return tuple(F.mul(y, xi) for y in m)
        raise MatrixError("zero matrix")
    return m


# ---------------------------------------------------------------------------
# user-facing matrices and group elements


@dataclass(frozen=True)
class Mat2:
    field: Field
    codes: Codes

    @classmethod
    def of(cls, F: Field, rows: Sequence[Sequence]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(F, tuple(F.code_of(x) for x in (a, b, c, d)))

    @classmethod
    def identity(cls, F: Field) -> "Mat2":
        return cls(F, (1, 0, 0, 1))

    @property
    def a(self) -> FieldElement:
        return FieldElement(self.field, self.codes[0])

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.field, self.codes[1])

    @property
    def c(self) -> FieldElement:
        return FieldElement(self.field, self.codes[2])

    @property
    def d(self) -> FieldElement:
        return FieldElement(self.field, self.codes[3])

    def _check(self, other: "Mat2") -> None:
        if other.field != self.field:
            raise MatrixError("matrices over different fields")

    def __mul__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(self.field, mat_mul(self.field, self.codes, other.codes))

    def __neg__(self) -> "Mat2":
        return Mat2(self.field, mat_neg(self.field, self.codes))

    def inverse(self) -> "Mat2":
        return Mat2(self.field, mat_inv(self.field, self.codes))

    def power(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Mat2.identity(self.field)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def trace(self) -> FieldElement:
        return FieldElement(self.field, mat_trace(self.field, self.codes))

    def det(self) -> FieldElement:
        return FieldElement(self.field, mat_det(self.field, self.codes))

    def rows(self) -> list[list[FieldElement]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __repr__(self):
        a, b, c, d = (self.field.format(x) for x in self.codes)
        return f"[[{a}, {b}], [{c}, {d}]]"

    def to_json(self, mode: str | None = None) -> dict:
        F = self.field
        out = {k: {"coeffs": list(F.digits(x))} for k, x in zip("abcd", self.codes)}
        if mode is not None:
            out["mode"] = mode
        return out

    @classmethod
    def from_json(cls, F: Field, data: dict) -> "Mat2":
        try:
            return cls(F, tuple(F.from_digits(data[k]["coeffs"]) for k in "abcd"))
        except (KeyError, TypeError) as exc:
            raise MatrixError(f"malformed matrix {data!r}") from exc


@dataclass(frozen=True)
class GroupElement:
    """A matrix viewed in one of SL2, GL2, PSL2, PGL2."""

    matrix: Mat2
    mode: str = PSL2

    def __post_init__(self):
        if self.mode not in MODES:
            raise MatrixError(f"unknown mode {self.mode}")
        det = mat_det(self.matrix.field, self.matrix.codes)
        if det == 0:
            raise MatrixError("singular matrix")
        if self.mode in (SL2, PSL2) and det != 1:
            raise MatrixError(f"determinant {self.matrix.field.format(det)} != 1 in {self.mode}")

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def canonical(self) -> Mat2:
        return Mat2(self.field, canonical_codes(self.field, self.matrix.codes, self.mode))

    @property
    def key(self) -> Codes:
        return canonical_codes(self.field, self.matrix.codes, self.mode)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix * other.matrix, self.mode)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.matrix.inverse(), self.mode)

    def power(self, n: int) -> "GroupElement":
        return GroupElement(self.matrix.power(n), self.mode)

    def is_identity(self) -> bool:
        return is_identity_codes(self.field, self.matrix.codes, self.mode)

    def order(self) -> int:
        return element_order(self)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.mode == other.mode and self.field == other.field and self.key == other.key

    def __hash__(self):
        return hash((self.mode, self.key))

    def __repr__(self):
        return f"{self.mode}{self.matrix!r}"


def is_identity_codes(F: Field, m: Codes, mode: str) -> bool:
    a, b, c, d = m
    if b or c or a != d:
        return False
    if mode in PROJECTIVE:
        return True
    return a == 1


# ---------------------------------------------------------------------------
# operations bundle for the generic group engine


class LinearOps:
    """Element protocol for :mod:`grouptool`: elements are canonical code tuples."""

    def __init__(self, F: Field, mode: str):
        self.field = F
        self.mode = mode
        self._fast = F.e == 1
        p = F.p
        if self._fast and mode == PSL2 and p > 2:
            half = p // 2

            def mul(m, n):
                a, b, c, d = m
                e, f, g, h = n
                r = ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)
                x = r[0] or r[1]  # a and b never both vanish
                if x > half:
                    return ((p - r[0]) % p, (p - r[1]) % p, (p - r[2]) % p, (p - r[3]) % p)
                return r

            self.mul = mul
        elif self._fast and mode in (SL2, GL2):

            def mul(m, n):
                a, b, c, d = m
                e, f, g, h = n
                return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

            self.mul = mul

    def identity(self) -> Codes:
        return (1, 0, 0, 1)

    def canonical(self, m: Codes) -> Codes:
        return canonical_codes(self.field, m, self.mode)

    def mul(self, m: Codes, n: Codes) -> Codes:  # replaced per instance on prime fields
        return canonical_codes(self.field, mat_mul(self.field, m, n), self.mode)

    def inv(self, m: Codes) -> Codes:
        return canonical_codes(self.field, mat_inv(self.field, m), self.mode)

    def encode(self, m: Codes) -> bytes:
        width = (self.field.q.bit_length() + 7) // 8
        return b"".join(x.to_bytes(width, "little") for x in m)

    def decode(self, data: bytes) -> Codes:
        width = len(data) // 4
        return tuple(int.from_bytes(data[i * width:(i + 1) * width], "little") for i in range(4))

    def element(self, m: Mat2) -> Codes:
        return self.canonical(m.codes)

    def to_matrix(self, m: Codes) -> Mat2:
        return Mat2(self.field, m)

    def order(self, m: Codes) -> int:
        return element_order(GroupElement(Mat2(self.field, m), self.mode))

    def trace_key(self, m: Codes):
        """Trace (up to sign in projective modes): a class function."""
        F = self.field
        t = mat_trace(F, m)
        if self.mode in PROJECTIVE:
            return min(t, F.neg(t))
        return t


def group_order(q: int, family: str) -> int:
    base = q * (q * q - 1)
    if family in (PSL2, "L2"):
        return base // math.gcd(2, q - 1)
    if family == SL2:
        return base
    if family == PGL2:
        return base
    if family == GL2:
        return base * (q - 1)
    raise MatrixError(f"unknown family {family}")


# ---------------------------------------------------------------------------
# trace classification and element orders


@dataclass(frozen=True)
class TraceClass:
    kind: str  # "split" | "parabolic" | "nonsplit"
    sl2_bound: int  # order in SL2 divides this
    psl2_bound: int  # order in PSL2 divides this


def trace_class(tau: FieldElement) -> TraceClass:
    """Classify an SL2 trace by whether tau^2 - 4 is a nonzero square, zero, or not."""
    F = tau.field
    q, p = F.q, F.p
    if p == 2:
        if tau.code == 0:
            return TraceClass("parabolic", 2, 2)
        beta = F.inv(F.mul(tau.code, tau.code))
        split = F.absolute_trace_code(beta) == 0
    else:
        disc = F.sub(F.mul(tau.code, tau.code), 4 % p)
        if disc == 0:
            return TraceClass("parabolic", 2 * p, p)
        split = F.is_square_code(disc)
    if split:
        return TraceClass("split", q - 1, (q - 1) // F.k)
    return TraceClass("nonsplit", q + 1, (q + 1) // F.k)


def _reaches_identity(F: Field, m: Codes, n: int, mode: str) -> bool:
    return is_identity_codes(F, Mat2(F, m).power(n).codes, mode)


def element_order(g: GroupElement) -> int:
    """Order of g in its mode: trace-class bound, then descent through prime divisors."""
    F, m, mode = g.field, g.matrix.codes, g.mode
    if mode in (GL2, PGL2):
        # det need not be 1; scale into SL2 over GF(q^2) is avoided, use q^2 - 1 style bound
        n = _gl2_bound(F, m, mode)
    else:
        tc = trace_class(g.matrix.trace())
        n = tc.psl2_bound if mode == PSL2 else tc.sl2_bound
    if not _reaches_identity(F, m, n, mode):
        return order_by_powering(g)  # pragma: no cover - guarded by tests
    for ell in sorted(factorint(n)) if n > 1 else []:
        while n % ell == 0 and _reaches_identity(F, m, n // ell, mode):
            n //= ell
    return n


def _gl2_bound(F: Field, m: Codes, mode: str) -> int:
    q = F.q
    # every element of GL2(q) has order dividing p(q-1), q^2-1 or q(q-1)
    return (q - 1) * q * (q + 1)


def order_by_powering(g: GroupElement, limit: int | None = None) -> int:
    """Reference order: multiply until the identity appears."""
    F, mode = g.field, g.mode
    limit = limit or (F.q * F.q * F.q + 1)
    x = g.matrix.codes
    for n in range(1, limit + 1):
        if is_identity_codes(F, x, mode):
            return n
        x = mat_mul(F, x, g.matrix.codes)
    raise MatrixError("order exceeds limit")


# ---------------------------------------------------------------------------
# projective line


@dataclass(frozen=True)
class ProjPoint:
    """[x : 1] (coordinates in GF(q^2) as a code pair) or the point at infinity [1 : 0]."""

    coords: tuple | None
    field: Field | None = dc_field(default=None, compare=False, hash=False)

    @classmethod
    def infinity(cls, F: Field | None = None) -> "ProjPoint":
        return cls(None, F)

    @classmethod
    def finite(cls, x: FieldElement) -> "ProjPoint":
        return cls((x.code, 0), x.field)

    @property
    def is_infinite(self) -> bool:
        return self.coords is None

    @property
    def is_rational(self) -> bool:
        return self.coords is None or self.coords[1] == 0

    def __repr__(self):
        if self.coords is None:
            return "inf"
        x0, x1 = self.coords
        fmt = self.field.format if self.field else str
        return fmt(x0) if x1 == 0 else f"({fmt(x0)})+({fmt(x1)})w"

    def to_json(self):
        if self.coords is None:
            return "inf"
        if self.field is None:
            return {"ext": list(self.coords)}
        F = self.field
        if self.coords[1] == 0:
            return {"coeffs": list(F.digits(self.coords[0]))}
        return {"ext": [list(F.digits(c)) for c in self.coords]}


def fixed_points(g: GroupElement, over: str = "base") -> set[ProjPoint]:
    """Fixed points of z -> (az+b)/(cz+d) on P^1(F_q) or P^1(F_{q^2}).

    The identity (in its mode) fixes everything; that case raises.
    """
    F = g.field
    a, b, c, d = g.matrix.codes
    if b == 0 and c == 0 and a == d:
        raise MatrixError("a scalar matrix fixes every point")
    pts: set[ProjPoint] = set()
    if c == 0:
        pts.add(ProjPoint.infinity(F))
        dma = F.sub(d, a)
        if dma:
            # (a - d) z = -b
            z = F.div(F.neg(b), F.sub(a, d))
            pts.add(ProjPoint((z, 0), F))
        return pts
    # c z^2 + (d - a) z - b = 0
    ci = F.inv(c)
    b1 = F.mul(F.sub(d, a), ci)
    b0 = F.mul(F.neg(b), ci)
    roots = quad_ext(F).quadratic_roots(b1, b0)
    for r in roots:
        if over == "base" and r[1] != 0:
            continue
        pts.add(ProjPoint(r, F))
    return pts


# ---------------------------------------------------------------------------
# inversion by conjugation


def is_inverted_by(M: Mat2, A: Mat2, projective: bool = False) -> bool:
    """True iff A M A^-1 = M^-1 (up to the scalar -1 when ``projective``)."""
    if M.field != A.field:
        raise MatrixError("matrices over different fields")
    F = M.field
    conj = mat_mul(F, mat_mul(F, A.codes, M.codes), mat_inv(F, A.codes))
    target = mat_inv(F, M.codes)
    if conj == target:
        return True
    return projective and conj == mat_neg(F, target)


def inverted_by_swap(M: Mat2) -> bool:
    """Conjugation by [[0,1],[1,0]] inverts an SL2 matrix iff b + c = 0."""
    F = M.field
    return F.add(M.codes[1], M.codes[2]) == 0


def standard_involutors(F: Field) -> list[Mat2]:
    """A = [[0,1],[1,0]], then B = [[0,1],[t+1,0]] when q = 9, then every [[0,1],[l,0]]."""
    out = [Mat2(F, (0, 1, 1, 0))]
    if F.q == 9:
        out.append(Mat2(F, (0, 1, F.add(F.gen.code, 1), 0)))
    for lam in range(1, F.q):
        m = Mat2(F, (0, 1, lam, 0))
        if m not in out:
            out.append(m)
    return out


def frobenius_matrix(M: Mat2, j: int) -> Mat2:
    """Entrywise x -> x^(p^j)."""
    F = M.field
    return Mat2(F, tuple(F.frobenius_code(x, j) for x in M.codes))


# ---------------------------------------------------------------------------
# maximal-subgroup exclusion for generation


def _orders_l2(r: int, p: int) -> tuple[set[int], list[int]]:
    """(exact extra orders, moduli whose divisors occur) for L2(r)."""
    k = math.gcd(2, r - 1)
    return {1, p}, [(r - 1) // k, (r + 1) // k]


def _order_occurs(o: int, exact: set[int], moduli: Iterable[int]) -> bool:
    return o in exact or any(m % o == 0 for m in moduli)


def generation_ladder(F: Field, mats: Sequence[Mat2], triple: bool = False) -> tuple[str, list[str]]:
    """Decide whether the PSL2 images of ``mats`` generate L2(q) without enumerating.

    Runs through the maximal-subgroup types of L2(q) (point stabiliser, dihedral,
    subfield L2(r), PGL2(r) for q = r^2, A4/S4/A5).  Returns ("proven" |
    "disproven" | "unknown", reasons).  With ``triple`` the matrices form a
    product-one triple, which enables the S4 parity argument.
    """
    q, p, e = F.q, F.p, F.e
    els = [GroupElement(m if mat_det(F, m.codes) == 1 else _fail_det(m), PSL2) for m in mats]
    nontriv = [g for g in els if not g.is_identity()]
    reasons: list[str] = []
    if not nontriv:
        return "disproven", ["all generators trivial"]
    orders = [g.order() for g in nontriv]

    # (1) point stabiliser, and cyclic subgroups with a common non-rational point
    common = None
    for g in nontriv:
        pts = fixed_points(g, over="ext")
        common = pts if common is None else common & pts
    if common:
        return "disproven", [f"common fixed point {sorted(map(repr, common))}"]
    reasons.append("no common fixed point: not in a point stabiliser")

    # (2) dihedral groups of order 2(q +- 1)/k
    pivot = next(
        (g for g, o in zip(nontriv, orders) if o > 2 and trace_class(g.matrix.trace()).kind != "parabolic"),
        None,
    )
    if pivot is not None:
        pair = fixed_points(pivot, over="ext")
        if all(_stabilises(g, pair) for g in nontriv):
            return "disproven", ["all generators stabilise one fixed pair: dihedral"]
        reasons.append("generators do not stabilise a common pair: not dihedral")
    elif p > 2 and p in orders:
        reasons.append(f"order {p} is prime to the dihedral orders")
    else:
        return "unknown", reasons + ["dihedral case undecided"]

    # (3) L2(r) for maximal subfields, (4) PGL2(r) for q = r^2
    for ell in sorted(factorint(e)) if e > 1 else []:
        r = p ** (e // ell)
        exact, moduli = _orders_l2(r, p)
        bad = [o for o in orders if not _order_occurs(o, exact, moduli)]
        if not bad:
            return "unknown", reasons + [f"orders fit inside L2({r})"]
        reasons.append(f"order {bad[0]} does not occur in L2({r})")
    if e % 2 == 0:
        r = p ** (e // 2)
        bad = [o for o in orders if not _order_occurs(o, {1, p}, [r - 1, r + 1])]
        if not bad and r == 3 and _s4_parity(orders, triple):
            reasons.append("PGL2(3) = S4 excluded: an odd number of odd permutations cannot multiply to 1")
        elif not bad:
            return "unknown", reasons + [f"orders fit inside PGL2({r})"]
        else:
            reasons.append(f"order {bad[0]} does not occur in PGL2({r})")

    # (5) A4, S4, A5
    spectra = {"A4": {1, 2, 3}, "S4": {1, 2, 3, 4}, "A5": {1, 2, 3, 5}}
    oset = set(orders)
    for name, spec in spectra.items():
        if not oset <= spec:
            continue
        if name == "S4" and _s4_parity(orders, triple):
            reasons.append("S4 excluded: an odd number of odd permutations cannot multiply to 1")
            continue
        if name == "A5" and triple and len(nontriv) == 3 and set(orders) == {5}:
            keys = {_pm_trace(g) for g in nontriv}
            if len(keys) > 1:
                # a generating (5,5,5) triple of A5 lies in a single class of A5
                reasons.append("A5 excluded: a (5,5,5) triple generating A5 is conjugate elementwise")
                continue
        return "unknown", reasons + [f"orders fit inside {name}"]
    reasons.append("element orders exclude A4, S4, A5")
    return "proven", reasons


def _s4_parity(orders: Sequence[int], triple: bool) -> bool:
    """In S4 every element of order 4 is odd and every element of order 3 even;
    with no involutions a product-one triple needs an even number of 4-cycles."""
    return triple and 2 not in orders and set(orders) <= {1, 3, 4} and orders.count(4) % 2 == 1


def _pm_trace(g: GroupElement) -> int:
    F = g.field
    t = mat_trace(F, g.matrix.codes)
    return min(t, F.neg(t))


def _fail_det(m: Mat2):
    raise MatrixError(f"{m!r} is not in SL2")


def _stabilises(g: GroupElement, pair: set[ProjPoint]) -> bool:
    F = g.field
    Q = quad_ext(F)
    a, b, c, d = g.matrix.codes
    for pt in pair:
        if pt.coords is None:
            img = None if c == 0 else (F.mul(a, F.inv(c)), 0)
        else:
            z = pt.coords
            num = Q.add(Q.mul((a, 0), z), (b, 0))
            den = Q.add(Q.mul((c, 0), z), (d, 0))
            img = None if den == (0, 0) else Q.mul(num, Q.inv(den))
        if ProjPoint(img, F) not in pair:
            return False
    return True
