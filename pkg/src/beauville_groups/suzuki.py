"""Suzuki groups Sz(2^e) as 4x4 matrices, and order arithmetic for Sz and Ree groups.

Elements of Sz(q) are stored as 16-tuples of field codes (row-major).  The
group preserves the symplectic form given by the antidiagonal matrix J, so in
characteristic 2 inverses are g^-1 = J g^T J, i.e. a transpose through the
antidiagonal.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .ffield import Field, FieldError, make_field, smallest_primitive_root
from .grouptool import (
    CLOSURE_BOUND,
    ClosureBoundExceeded,
    FiniteGroup,
    GroupError,
    closure,
    frobenius_count,
    subgroup_order,
)

log = logging.getLogger(__name__)

CACHE_ENV = "BEAUVILLE_CACHE_DIR"
SZ_CLOSURE_MAX_E = 3

IDENTITY4 = (1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1)


class SuzukiError(ValueError):
    pass


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class SzContext:
    """Parameters of Sz(q), q = 2^e with e = 2m + 1 odd."""

    e: int
    field: Field = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.e < 3 or self.e % 2 == 0:
            raise SuzukiError(f"Sz(2^e) needs odd e >= 3, got e = {self.e}")
        if self.field is None:
            object.__setattr__(self, "field", make_field(2, self.e))

    @property
    def q(self) -> int:
        return 2 ** self.e

    @property
    def m(self) -> int:
        return (self.e - 1) // 2

    @property
    def r(self) -> int:
        return 2 ** (self.m + 1)

    def theta(self, a: int) -> int:
        """The field automorphism x -> x^(2^(m+1)); theta(theta(x)) = x^2."""
        return self.field.pow(a, self.r)


# ---------------------------------------------------------------------------
# 4x4 matrices


@dataclass(frozen=True)
class Mat4:
    field: Field = field(repr=False, compare=False)
    codes: tuple[int, ...]

    def __post_init__(self):
        if len(self.codes) != 16:
            raise SuzukiError("a 4x4 matrix needs 16 entries")

    @classmethod
    def of(cls, F: Field, rows) -> "Mat4":
        return cls(F, tuple(F(x).code for row in rows for x in row))

    def rows(self) -> list[list[int]]:
        return [list(self.codes[4 * i:4 * i + 4]) for i in range(4)]

    def __mul__(self, other: "Mat4") -> "Mat4":
        return Mat4(self.field, mat4_mul(self.field, self.codes, other.codes))

    def inverse(self) -> "Mat4":
        return Mat4(self.field, mat4_inv(self.field, self.codes))

    def is_identity(self) -> bool:
        return self.codes == IDENTITY4

    def order(self) -> int:
        x, n = self.codes, 1
        while x != IDENTITY4:
            x = mat4_mul(self.field, x, self.codes)
            n += 1
        return n

    def to_json(self) -> dict:
        F = self.field
        return {
            "rows": [[{"coeffs": F.digits(c)} for c in row] for row in self.rows()],
            "mode": "Sz",
        }

    @classmethod
    def from_json(cls, F: Field, data: dict) -> "Mat4":
        rows = data["rows"]
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise SuzukiError("a 4x4 matrix needs 4 rows of 4 entries")
        return cls(F, tuple(F.from_digits(x["coeffs"]) for r in rows for x in r))


def mat4_mul(F: Field, A: Sequence[int], B: Sequence[int]) -> tuple[int, ...]:
    mul, add = F.mul, F.add
    out = []
    for i in range(4):
        r = A[4 * i:4 * i + 4]
        for j in range(4):
            s = 0
            for k in range(4):
                if r[k] and B[4 * k + j]:
                    s = add(s, mul(r[k], B[4 * k + j]))
            out.append(s)
    return tuple(out)


def mat4_inv(F: Field, A: Sequence[int]) -> tuple[int, ...]:
    """Gauss-Jordan inverse over F."""
    rows = [list(A[4 * i:4 * i + 4]) + [1 if j == i else 0 for j in range(4)] for i in range(4)]
    for col in range(4):
        piv = next((r for r in range(col, 4) if rows[r][col]), None)
        if piv is None:
            raise SuzukiError("singular 4x4 matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        s = F.inv(rows[col][col])
        rows[col] = [F.mul(s, v) for v in rows[col]]
        for r in range(4):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [F.sub(v, F.mul(f, w)) for v, w in zip(rows[r], rows[col])]
    return tuple(v for row in rows for v in row[4:])


def antidiagonal_transpose(A: Sequence[int]) -> tuple[int, ...]:
    """J A^T J for J the antidiagonal ones matrix: entry (i, j) is A[3-j][3-i]."""
    return tuple(A[4 * (3 - j) + (3 - i)] for i in range(4) for j in range(4))


class SzOps:
    """Group operations on 16-tuples for the grouptool engine."""

    def __init__(self, ctx: SzContext):
        self.ctx = ctx
        F = ctx.field
        self.field = F
        if F.q <= 1 << 12:
            table = [[F.mul(a, b) for b in range(F.q)] for a in range(F.q)]
            self.mul = self._table_mul(table)
        else:
            self.mul = lambda A, B: mat4_mul(F, A, B)

    @staticmethod
    def _table_mul(T):
        def mul(A, B):
            out = []
            for i in range(0, 16, 4):
                r0, r1, r2, r3 = T[A[i]], T[A[i + 1]], T[A[i + 2]], T[A[i + 3]]
                for j in range(4):
                    out.append(r0[B[j]] ^ r1[B[4 + j]] ^ r2[B[8 + j]] ^ r3[B[12 + j]])
            return tuple(out)
        return mul

    def identity(self):
        return IDENTITY4

    def inv(self, g):
        return antidiagonal_transpose(g)

    def encode(self, g) -> bytes:
        width = (self.field.q - 1).bit_length()
        return b"".join(c.to_bytes((width + 7) // 8, "little") for c in g)

    def decode(self, data: bytes):
        w = len(data) // 16
        return tuple(int.from_bytes(data[i * w:(i + 1) * w], "little") for i in range(16))

    def frobenius(self, g, j: int = 1):
        """Entrywise x -> x^(2^j), the field automorphisms of Sz(q)."""
        F = self.field
        return tuple(F.pow(c, 2 ** j) if c else 0 for c in g)

    def matrix(self, g) -> Mat4:
        return Mat4(self.field, g)


# ---------------------------------------------------------------------------
# generators


def unipotent(ctx: SzContext, a: int, b: int) -> tuple[int, ...]:
    """The lower unitriangular element S(a, b) of the Sylow 2-subgroup."""
    F, th = ctx.field, ctx.theta
    mul, add, pw = F.mul, F.add, F.pow
    ta = th(a)
    r3c0 = add(add(mul(pw(a, 2), ta), mul(a, b)), th(b))
    r3c1 = add(mul(a, ta), b)
    return (1, 0, 0, 0,
            a, 1, 0, 0,
            b, ta, 1, 0,
            r3c0, r3c1, a, 1)


def torus(ctx: SzContext, lam: int) -> tuple[int, ...]:
    """diag(l^(1+2^m), l^(2^m), l^-(2^m), l^-(1+2^m))."""
    F = ctx.field
    s = 2 ** ctx.m
    d0, d1 = F.pow(lam, 1 + s), F.pow(lam, s)
    return (d0, 0, 0, 0, 0, d1, 0, 0, 0, 0, F.inv(d1), 0, 0, 0, 0, F.inv(d0))


WEYL = (0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0)


def sz_generators(ctx: SzContext) -> list[Mat4]:
    """Unipotent S(1, 0), the torus element of a primitive root, and the Weyl involution."""
    F = ctx.field
    lam = smallest_primitive_root(F).code
    return [Mat4(F, unipotent(ctx, 1, 0)), Mat4(F, torus(ctx, lam)), Mat4(F, WEYL)]


def sz_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


# ---------------------------------------------------------------------------
# order arithmetic


@dataclass(frozen=True)
class SuzukiOrderData:
    e: int
    q: int
    r: int
    q_minus_1: int
    q_plus_r_plus_1: int
    q_minus_r_plus_1: int
    n: int
    q_minus_1_coprime_to_5: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def suzuki_order_data(e: int) -> SuzukiOrderData:
    """Torus orders of Sz(2^e); n is whichever of q +- r + 1 is coprime to 5 (by gcd)."""
    if e < 3 or e % 2 == 0:
        raise SuzukiError(f"Sz(2^e) needs odd e >= 3, got e = {e}")
    q, r = 2 ** e, 2 ** ((e + 1) // 2)
    plus, minus = q + r + 1, q - r + 1
    assert plus * minus == q * q + 1
    coprime = [n for n in (plus, minus) if math.gcd(n, 5) == 1]
    if not coprime:  # pragma: no cover - one of them is always divisible by 5 only
        raise SuzukiError(f"neither {plus} nor {minus} is coprime to 5")
    return SuzukiOrderData(e, q, r, q - 1, plus, minus, min(coprime), math.gcd(q - 1, 5) == 1)


@dataclass(frozen=True)
class ReeOrderData:
    e: int
    q: int
    r: int
    candidates: tuple[int, int]
    n: int
    t1_type: tuple[int, int, int]
    t2_type: tuple[int, int, int]
    coprime: bool

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["candidates"] = list(self.candidates)
        d["t1_type"] = list(self.t1_type)
        d["t2_type"] = list(self.t2_type)
        return d


def ree_order_data(e: int) -> ReeOrderData:
    """Candidate torus orders (q + 1) +- r of R(3^e), with r^2 = 3q."""
    if e < 3 or e % 2 == 0:
        raise SuzukiError(f"R(3^e) needs odd e >= 3, got e = {e}")
    q = 3 ** e
    r = 3 ** ((e + 1) // 2)
    assert r * r == 3 * q
    cands = (q + 1 - r, q + 1 + r)
    assert cands[0] * cands[1] == q * q - q + 1
    good = [n for n in cands if math.gcd(n, 7) == 1]
    if not good:
        raise SuzukiError(f"neither {cands[0]} nor {cands[1]} is coprime to 7")
    n = min(good)
    t1 = (2, 3, 7)
    t2 = ((q - 1) // 2, n, n)
    ok = math.gcd(math.prod(t1), math.prod(t2)) == 1
    return ReeOrderData(e, q, r, cands, n, t1, t2, ok)


# ---------------------------------------------------------------------------
# the enumerated group Sz(8)


def _cache_path(ctx: SzContext) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"sz{ctx.q}.bfg"


def sz_group(ctx: SzContext, bound: int = CLOSURE_BOUND) -> FiniteGroup:
    """Closure of the standard generators.  Refused for e > 3.

    With ``BEAUVILLE_CACHE_DIR`` set, the element list is cached in the BFG1
    dump format and reloaded on later calls.
    """
    if ctx.e > SZ_CLOSURE_MAX_E:
        raise ClosureBoundExceeded(bound, sz_order(ctx.q))
    key = (ctx.e, ctx.field.modulus.coeffs)
    if key not in _GROUPS:
        _GROUPS[key] = _build_sz_group(ctx, bound)
    return _GROUPS[key]


_GROUPS: dict = {}


def _build_sz_group(ctx: SzContext, bound: int) -> FiniteGroup:
    ops = SzOps(ctx)
    gens = [m.codes for m in sz_generators(ctx)]
    for g in gens:
        if ops.mul(g, ops.inv(g)) != IDENTITY4:
            raise SuzukiError("generator does not preserve the antidiagonal form")
    path = _cache_path(ctx)
    if path is not None and path.exists():
        try:
            G = FiniteGroup.load(path, ops, gens)
            if G.order == sz_order(ctx.q):
                return G
        except (GroupError, OSError, ValueError) as exc:
            log.warning("ignoring unusable cache %s: %s", path, exc)
    G = closure(ops, gens, bound=bound)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        G.dump(path)
    return G


def self_centralising(G: FiniteGroup, order: int) -> bool:
    """Every element of the given order has centraliser of exactly that order."""
    orders = G.class_orders
    for cid, members in enumerate(G.classes):
        if orders[cid] == order:
            g = G.elements[members[0]]
            if len(G.centralizer(g)) != order:
                return False
    return True


# ---------------------------------------------------------------------------
# structure search


@dataclass
class SzSearchResult:
    ctx: SzContext
    group: FiniteGroup = field(repr=False)
    t1: tuple[tuple, tuple, tuple]
    t2: tuple[tuple, tuple, tuple]
    types: tuple[tuple[int, int, int], tuple[int, int, int]]
    frobenius: tuple[int, int]


def _find_triple(G: FiniteGroup, lmn: tuple[int, int, int], same_yz_class: bool) -> tuple:
    """Least (by closure index) x of order l, then least y of order m with
    z = (xy)^-1 of order n and <x, y> = G."""
    l, m, n = lmn
    orders, class_of, idx = G.class_orders, G.class_of, G.index
    mul, inv = G.ops.mul, G.ops.inv
    by_order = lambda k: [i for i in range(G.order) if orders[class_of[i]] == k]
    x = G.elements[by_order(l)[0]]
    for yi in by_order(m):
        y = G.elements[yi]
        z = inv(mul(x, y))
        cz = class_of[idx[z]]
        if orders[cz] != n or (same_yz_class and cz != class_of[yi]):
            continue
        if subgroup_order(G.ops, [x, y], bound=G.order) == G.order:
            return x, y, z
    raise SuzukiError(f"no generating triple of type {lmn}")  # would contradict the theory


def sz_search(ctx: SzContext) -> SzSearchResult:
    """Find generating triples of types (2, 4, 5) and (q-1, n, n) in Sz(q)."""
    G = sz_group(ctx)
    data = suzuki_order_data(ctx.e)
    type1 = (2, 4, 5)
    type2 = (ctx.q - 1, data.n, data.n)
    t1 = _find_triple(G, type1, same_yz_class=False)
    t2 = _find_triple(G, type2, same_yz_class=True)
    cls = lambda g: G.class_id(g)
    f1 = frobenius_count(G, cls(t1[0]), cls(t1[1]), cls(t1[2]))
    f2 = frobenius_count(G, cls(t2[0]), cls(t2[1]), cls(t2[2]))
    return SzSearchResult(ctx, G, t1, t2, (type1, type2), (f1, f2))


def sz_find_structure(ctx: SzContext):
    """The (2,4,5) / (q-1,n,n) Beauville structure on Sz(q) as a BeauvilleStructure."""
    from .beauville import BeauvilleStructure, GroupSpec, Triple

    res = sz_search(ctx)
    F = ctx.field
    group = GroupSpec("Sz", F)
    mk = lambda t: Triple(*(Mat4(F, g) for g in t))
    return BeauvilleStructure(group, mk(res.t1), mk(res.t2))


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class SzWitness:
    conjugator: tuple[int, ...]
    frobenius_power: int
    rotations: tuple[int, int]


def rotate(t: Sequence, k: int) -> tuple:
    k %= 3
    return tuple(t[k:]) + tuple(t[:k])


def sz_strongly_real_search(G: FiniteGroup, ctx: SzContext, t1: Sequence, t2: Sequence) -> SzWitness | None:
    """Search all of Aut(Sz(q)) = Sz(q) : <field automorphism> for a single
    alpha inverting x_i and y_i of both (rotated) triples.

    Candidates alpha: g -> c phi^j(g) c^-1.  For fixed (j, rotations) such a c
    exists for one element a only if phi^j(a) and a^-1 are conjugate, so the
    class test prunes exactly; surviving cases are decided by enumerating c.
    """
    ops = G.ops
    mul, inv = ops.mul, ops.inv
    for j in range(ctx.e):
        for r1 in range(3):
            for r2 in range(3):
                a1, b1, _ = rotate(t1, r1)
                a2, b2, _ = rotate(t2, r2)
                pairs = [(ops.frobenius(a, j), inv(a)) for a in (a1, b1, a2, b2)]
                if any(G.class_id(u) != G.class_id(v) for u, v in pairs):
                    continue
                for c in G.elements:
                    ci = inv(c)
                    if all(mul(mul(c, u), ci) == v for u, v in pairs):
                        return SzWitness(c, j, (r1, r2))
    return None


def is_inverted_by_some_automorphism(G: FiniteGroup, ctx: SzContext, g) -> bool:
    """Whether some automorphism (inner composed with field) sends g to g^-1."""
    target = G.class_id(G.ops.inv(g))
    return any(G.class_id(G.ops.frobenius(g, j)) == target for j in range(ctx.e))
