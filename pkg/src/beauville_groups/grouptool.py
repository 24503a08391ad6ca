"""Generic finite-group engine.

Works with any *ops* object exposing ``identity()``, ``mul(g, h)``, ``inv(g)``
and ``encode(g) -> bytes`` over hashable canonical elements.  A closure
records right multiplication by each generator, so conjugation by generators
becomes index lookups; conjugacy classes, power maps and Sigma-sets are then
cheap even for groups of a few times 10^4 elements.
"""

from __future__ import annotations

import logging
import math
import struct
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Hashable, Iterable, Sequence

from . import psl2
from .ffield import Field
from .psl2 import Mat2, LinearOps, GroupElement

log = logging.getLogger(__name__)

CLOSURE_BOUND = 2_000_000
SEARCH_BOUND = 10_000
DUMP_MAGIC = b"BFG1"


class ClosureBoundExceeded(RuntimeError):
    def __init__(self, bound: int, partial: int):
        super().__init__(f"closure exceeded {bound} elements (reached {partial})")
        self.bound = bound
        self.partial = partial


class GroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# enumerated groups


class FiniteGroup:
    """An enumerated group: elements indexed by insertion order of the closure."""

    def __init__(self, ops, elements: list, generators: Sequence, right: list[list[int]] | None = None):
        self.ops = ops
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self.generators = list(generators)
        self.order = len(elements)
        self._right = right
        self._class_of: list[int] | None = None
        self._class_members: list[list[int]] | None = None
        self._class_order: list[int] | None = None

    def __len__(self):
        return self.order

    def __contains__(self, g) -> bool:
        return g in self.index

    def index_of(self, g) -> int:
        try:
            return self.index[g]
        except KeyError:
            raise GroupError(f"{g!r} is not in the group") from None

    @property
    def identity(self):
        return self.elements[0]

    def mul(self, g, h):
        return self.ops.mul(g, h)

    def inv(self, g):
        return self.ops.inv(g)

    # multiplication tables ----------------------------------------------------

    def _right_tables(self) -> list[list[int]]:
        if self._right is None:
            mul, idx = self.ops.mul, self.index
            self._right = [[idx[mul(x, g)] for x in self.elements] for g in self.generators]
        return self._right

    def _conjugation_perms(self) -> list[list[int]]:
        """For each generator g, the permutation x -> g^-1 x g on indices."""
        right = self._right_tables()
        mul, inv, idx = self.ops.mul, self.ops.inv, self.index
        perms = []
        for gi, g in enumerate(self.generators):
            gi_inv = inv(g)
            r = right[gi]
            perms.append([r[idx[mul(gi_inv, x)]] for x in self.elements])
        return perms

    # conjugacy --------------------------------------------------------------

    def _compute_classes(self) -> None:
        n = self.order
        class_of = [-1] * n
        members: list[list[int]] = []
        perms = self._conjugation_perms() if self.generators else []
        for start in range(n):
            if class_of[start] >= 0:
                continue
            cid = len(members)
            class_of[start] = cid
            orbit = [start]
            queue = deque([start])
            while queue:
                i = queue.popleft()
                for perm in perms:
                    j = perm[i]
                    if class_of[j] < 0:
                        class_of[j] = cid
                        orbit.append(j)
                        queue.append(j)
            orbit.sort()
            members.append(orbit)
        self._class_of = class_of
        self._class_members = members

    @property
    def class_of(self) -> list[int]:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of

    @property
    def classes(self) -> list[list[int]]:
        """Conjugacy classes as sorted index lists; class 0 is the identity."""
        if self._class_members is None:
            self._compute_classes()
        return self._class_members

    def class_id(self, g) -> int:
        return self.class_of[self.index_of(g)]

    def class_size(self, cid: int) -> int:
        return len(self.classes[cid])

    def class_rep(self, cid: int):
        return self.elements[self.classes[cid][0]]

    def conjugacy_class(self, g) -> set:
        return {self.elements[i] for i in self.classes[self.class_id(g)]}

    def inverse_class(self, cid: int) -> int:
        return self.class_id(self.ops.inv(self.class_rep(cid)))

    # orders -------------------------------------------------------------------

    def _order_of(self, g) -> int:
        e, mul = self.identity, self.ops.mul
        x, n = g, 1
        while x != e:
            x = mul(x, g)
            n += 1
            if n > self.order:
                raise GroupError("element order exceeds group order")  # pragma: no cover
        return n

    @property
    def class_orders(self) -> list[int]:
        if self._class_order is None:
            self._class_order = [self._order_of(self.elements[m[0]]) for m in self.classes]
        return self._class_order

    def element_order(self, g) -> int:
        return self.class_orders[self.class_id(g)]

    def spectrum(self) -> set[int]:
        return set(self.class_orders)

    def powers(self, g) -> list:
        e, mul = self.identity, self.ops.mul
        out, x = [e], g
        while x != e:
            out.append(x)
            x = mul(x, g)
        return out

    def power_classes(self, g) -> set[int]:
        return {self.class_id(x) for x in self.powers(g)}

    def centralizer(self, g) -> list:
        mul = self.ops.mul
        return [h for h in self.elements if mul(g, h) == mul(h, g)]

    # persistence --------------------------------------------------------------

    def dump(self, path: str | Path) -> None:
        """Write the element keys in index order ("BFG1" format)."""
        with open(path, "wb") as fh:
            fh.write(DUMP_MAGIC)
            fh.write(struct.pack("<Q", self.order))
            for g in self.elements:
                key = self.ops.encode(g)
                fh.write(struct.pack("<I", len(key)))
                fh.write(key)

    @classmethod
    def load(cls, path: str | Path, ops, generators: Sequence) -> "FiniteGroup":
        data = Path(path).read_bytes()
        if data[:4] != DUMP_MAGIC:
            raise GroupError(f"{path}: not a BFG1 group dump")
        (count,) = struct.unpack_from("<Q", data, 4)
        pos, elements = 12, []
        for _ in range(count):
            (n,) = struct.unpack_from("<I", data, pos)
            pos += 4
            elements.append(ops.decode(data[pos:pos + n]))
            pos += n
        if pos != len(data):
            raise GroupError(f"{path}: trailing bytes in group dump")
        G = cls(ops, elements, generators)
        missing = [g for g in generators if g not in G.index]
        if missing or elements[0] != ops.identity():
            raise GroupError(f"{path}: dump does not match the generators")
        return G


def closure(ops, generators: Sequence, bound: int = CLOSURE_BOUND) -> FiniteGroup:
    """Breadth-first product closure of ``generators``.

    Indexing is deterministic for a fixed generator order.  Raises
    :class:`ClosureBoundExceeded` once more than ``bound`` elements appear.
    """
    gens = list(generators)
    e = ops.identity()
    elements = [e]
    index = {e: 0}
    right: list[list[int]] = [[] for _ in gens]
    mul = ops.mul
    i = 0
    while i < len(elements):
        x = elements[i]
        for gi, g in enumerate(gens):
            y = mul(x, g)
            j = index.get(y)
            if j is None:
                j = len(elements)
                index[y] = j
                elements.append(y)
                if j >= bound:
                    raise ClosureBoundExceeded(bound, j + 1)
            right[gi].append(j)
        i += 1
    G = FiniteGroup(ops, elements, gens, right)
    G.index = index
    return G


def subgroup_order(ops, generators: Sequence, bound: int = CLOSURE_BOUND) -> int:
    """Order of the generated subgroup (no tables kept)."""
    gens = list(generators)
    e = ops.identity()
    seen = {e}
    frontier = [e]
    mul = ops.mul
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise ClosureBoundExceeded(bound, len(seen))
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# Sigma-sets and condition (3)


def sigma_set(G: FiniteGroup, triple: Sequence) -> frozenset[int]:
    """Class ids of all powers of the triple's elements (identity class included)."""
    out: set[int] = set()
    for g in triple:
        out |= G.power_classes(g)
    return frozenset(out)


def sigma_elements(G: FiniteGroup, triple: Sequence) -> set:
    """The Sigma-set as a set of group elements."""
    return {G.elements[i] for cid in sigma_set(G, triple) for i in G.classes[cid]}


@dataclass(frozen=True)
class Condition3:
    holds: bool | None
    method: str  # "gcd" | "exhaustive" | "trace" | "undecided"


def condition3(
    G: FiniteGroup | None,
    t1: Sequence,
    t2: Sequence,
    orders1: Sequence[int] | None = None,
    orders2: Sequence[int] | None = None,
    exhaustive: bool = True,
) -> Condition3:
    """No non-identity power of a T1 element is conjugate to a power of a T2 element.

    The coprimality shortcut is tried first; when ``exhaustive`` the Sigma-set
    intersection decides and the shortcut is cross-checked against it.
    """
    gcd_ok = None
    if orders1 is not None and orders2 is not None:
        gcd_ok = math.gcd(math.prod(orders1), math.prod(orders2)) == 1
    if not exhaustive or G is None:
        if gcd_ok:
            return Condition3(True, "gcd")
        return Condition3(None, "undecided")
    s1 = sigma_set(G, t1) - {0}
    s2 = sigma_set(G, t2) - {0}
    holds = not (s1 & s2)
    if gcd_ok and not holds:
        raise GroupError("coprime orders but intersecting Sigma-sets")  # would be an engine bug
    return Condition3(holds, "exhaustive")


# ---------------------------------------------------------------------------
# structure-constant counting


def frobenius_count(G: FiniteGroup, cx: int, cy: int, cz: int, method: str = "rep") -> int:
    """Number of (x, y, z) in classes (cx, cy, cz) with xyz = 1.

    ``method="full"`` loops over X x Y.  ``method="rep"`` fixes one x and
    multiplies by |X|, which is exact because the count of pairs (y, z) for a
    given x is constant on the class of x.
    """
    mul, inv, idx, class_of = G.ops.mul, G.ops.inv, G.index, G.class_of
    ys = [G.elements[i] for i in G.classes[cy]]
    xs_idx = G.classes[cx]
    xs = [G.elements[xs_idx[0]]] if method == "rep" else [G.elements[i] for i in xs_idx]
    hits = 0
    for x in xs:
        for y in ys:
            if class_of[idx[inv(mul(x, y))]] == cz:
                hits += 1
    return hits * len(xs_idx) if method == "rep" else hits


# ---------------------------------------------------------------------------
# Riemann-Hurwitz


def genus(order: int, l: int, m: int, n: int) -> int:
    """Genus g with 2g - 2 = |G| (1 - 1/l - 1/m - 1/n)."""
    chi = order * (1 - Fraction(1, l) - Fraction(1, m) - Fraction(1, n))
    if chi.denominator != 1 or chi.numerator % 2:
        raise GroupError(f"|G|(1 - 1/l - 1/m - 1/n) = {chi} is not an even integer")
    return int(chi) // 2 + 1


# ---------------------------------------------------------------------------
# generation


@dataclass(frozen=True)
class Generation:
    verdict: str  # "proven" | "disproven" | "unknown"
    method: str  # "closure" | "ladder"
    detail: tuple[str, ...] = ()
    order: int | None = None


def generates(
    family: str,
    F: Field,
    generators: Sequence[Mat2],
    strategy: str = "auto",
    triple: bool = False,
    closure_bound: int = CLOSURE_BOUND,
) -> Generation:
    """Three-valued generation test inside PSL2(q) or SL2(q).

    ``closure`` enumerates the subgroup; ``ladder`` rules out each maximal
    subgroup type of L2(q).  For SL2 the ladder runs on the PSL2 images: SL2(q)
    is a perfect central extension for q > 3, so a set generates it iff its
    image generates L2(q).
    """
    target = psl2.group_order(F.q, family)
    if strategy == "auto":
        strategy = "closure" if target <= closure_bound else "ladder"
    if strategy == "closure":
        ops = LinearOps(F, family)
        elems = [ops.element(m) for m in generators]
        try:
            n = subgroup_order(ops, elems, bound=target)
        except ClosureBoundExceeded:  # pragma: no cover - a subgroup cannot exceed the group
            raise GroupError("closure exceeded the group order")
        verdict = "proven" if n == target else "disproven"
        return Generation(verdict, "closure", (f"subgroup order {n} of {target}",), n)
    if family == psl2.SL2 and F.q <= 3:
        return Generation("unknown", "ladder", ("SL2(q) is not perfect for q <= 3",))
    verdict, reasons = psl2.generation_ladder(F, generators, triple=triple)
    return Generation(verdict, "ladder", tuple(reasons))


# ---------------------------------------------------------------------------
# lifting along SL2 -> PSL2


def faithfully_represented(ops, g, center: Iterable) -> bool:
    """<g> meets the central subgroup only in the identity."""
    e = ops.identity()
    cset = set(center) - {e}
    x = g
    while x != e:
        if x in cset:
            return False
        x = ops.mul(x, g)
    return True


@dataclass
class LiftResult:
    lifts: tuple[Mat2, Mat2, Mat2]
    faithful: tuple[bool, bool, bool]
    orders: tuple[int, int, int]
    all_faithful: bool
    any_choice_faithful: bool
    generates: str | None = None


def lift_check(F: Field, triple: Sequence[Mat2], check_generation: bool = True) -> LiftResult:
    """Lift a PSL2 triple (x, y, z) to SL2 with N = {+-I}.

    Tries the four sign choices for (X, Y) with Z = (XY)^-1 and reports the
    first fully faithful one (or the first choice if none is).  When the lifted
    group is small enough its generation is checked by closure.
    """
    ops = LinearOps(F, psl2.SL2)
    minus = (F.neg(1), 0, 0, F.neg(1))
    center = [ops.identity(), minus]
    x, y = triple[0], triple[1]
    best = None
    any_ok = False
    for sx in (1, -1):
        for sy in (1, -1):
            X = x if sx == 1 else -x
            Y = y if sy == 1 else -y
            Z = (X * Y).inverse()
            flags = tuple(faithfully_represented(ops, m.codes, center) for m in (X, Y, Z))
            cand = (X, Y, Z, flags)
            if all(flags) and not any_ok:
                any_ok = True
                best = cand
            if best is None:
                best = cand
    X, Y, Z, flags = best
    orders = tuple(GroupElement(m, psl2.SL2).order() for m in (X, Y, Z))
    gen = None
    if check_generation and psl2.group_order(F.q, psl2.SL2) <= 200_000:
        gen = generates(psl2.SL2, F, [X, Y], strategy="closure").verdict
    return LiftResult((X, Y, Z), flags, orders, all(flags), any_ok, gen)


# ---------------------------------------------------------------------------
# small explicit groups


class MetacyclicOps:
    """<a, b | a^(p^2) = b^p = 1, a^b = a^(p+1)> with elements (i, j) = a^i b^j.

    (a^i b^j)(a^k b^l) = a^(i + k (p+1)^j) b^(j + l).
    """

    def __init__(self, p: int):
        self.p = p
        self.n = p * p

    def identity(self):
        return (0, 0)

    def mul(self, g, h):
        i, j = g
        k, l = h
        return ((i + k * pow(self.p + 1, j, self.n)) % self.n, (j + l) % self.p)

    def inv(self, g):
        i, j = g
        k = (-i * pow(self.p + 1, -j, self.n)) % self.n
        return (k, (-j) % self.p)

    def encode(self, g) -> bytes:
        return struct.pack("<II", *g)

    def decode(self, data: bytes):
        return struct.unpack("<II", data)

    def generators(self):
        return [(1, 0), (0, 1)]


class AbelianOps:
    """Direct product of cyclic groups C_n1 x ... x C_nr, written additively."""

    def __init__(self, moduli: Sequence[int]):
        self.moduli = tuple(moduli)

    def identity(self):
        return (0,) * len(self.moduli)

    def mul(self, g, h):
        return tuple((a + b) % n for a, b, n in zip(g, h, self.moduli))

    def inv(self, g):
        return tuple((-a) % n for a, n in zip(g, self.moduli))

    def encode(self, g) -> bytes:
        return struct.pack(f"<{len(g)}I", *g)

    def decode(self, data: bytes):
        return struct.unpack(f"<{len(self.moduli)}I", data)

    def generators(self):
        r = len(self.moduli)
        return [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]


# ---------------------------------------------------------------------------
# exhaustive search for small groups


@dataclass
class SearchResult:
    group_order: int
    structure: tuple[tuple, tuple] | None
    triple_classes: int  # generating hyperbolic triples, x up to conjugacy, y up to C(x)
    sigma_sets: int  # distinct Sigma-sets among them
    types: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def exists(self) -> bool:
        return self.structure is not None


def _is_hyperbolic(l: int, m: int, n: int) -> bool:
    return Fraction(1, l) + Fraction(1, m) + Fraction(1, n) < 1


def _centralizer_orbit_reps(G: FiniteGroup, cent: list) -> list[int]:
    """Least index in each orbit of the centralizer acting on G by conjugation."""
    mul, inv, idx = G.ops.mul, G.ops.inv, G.index
    rep = [-1] * G.order
    out = []
    cinv = [(c, inv(c)) for c in cent]
    for i, y in enumerate(G.elements):
        if rep[i] >= 0:
            continue
        out.append(i)
        for c, ci in cinv:
            rep[idx[mul(mul(c, y), ci)]] = i
    return out


def exhaustive_beauville_search(G: FiniteGroup, bound: int = SEARCH_BOUND) -> SearchResult:
    """Decide whether G carries an unmixed Beauville structure.

    Enumerates generating hyperbolic triples with x a class representative and
    y up to the centralizer of x, then looks for two with trivially
    intersecting Sigma-sets.  The first pair in enumeration order is returned.
    """
    if G.order > bound:
        raise GroupError(f"|G| = {G.order} exceeds the search bound {bound}")
    mul, inv, idx = G.ops.mul, G.ops.inv, G.index
    e = G.identity
    found: list[tuple[tuple, frozenset[int]]] = []
    types: set[tuple[int, int, int]] = set()
    for cid in range(1, len(G.classes)):
        x = G.class_rep(cid)
        ox = G.element_order(x)
        for j in _centralizer_orbit_reps(G, G.centralizer(x)):
            y = G.elements[j]
            if y == e:
                continue
            z = inv(mul(x, y))
            if z == e:
                continue
            t = (ox, G.element_order(y), G.element_order(z))
            if not _is_hyperbolic(*t):
                continue
            if subgroup_order(G.ops, [x, y], bound=G.order) != G.order:
                continue
            types.add(t)
            found.append(((x, y, z), sigma_set(G, (x, y, z)) - {0}))
    distinct: dict[frozenset[int], tuple] = {}
    for trip, sig in found:
        distinct.setdefault(sig, trip)
    sigs = list(distinct.items())
    for a in range(len(sigs)):
        for b in range(a + 1, len(sigs)):
            if not (sigs[a][0] & sigs[b][0]):
                return SearchResult(G.order, (sigs[a][1], sigs[b][1]), len(found), len(sigs), sorted(types))
    return SearchResult(G.order, None, len(found), len(sigs), sorted(types))


def named_group(name: str) -> FiniteGroup:
    """Small groups used for negative certificates.

    Names: ``l2-2``, ``l2-3``, ``l2-4``, ``l2-5``, ``a5`` (= L2(5)), ``sl2-3``,
    ``sl2-5``, ``metacyclic-P`` (order P^3), ``cPxcP`` (e.g. ``c5xc5``).
    """
    from .ffield import field_of_order

    key = name.lower().replace("_", "-")
    if key == "a5":
        key = "l2-5"
    if key.startswith("l2-") or key.startswith("sl2-"):
        fam, q = key.split("-")
        F = field_of_order(int(q))
        mode = psl2.PSL2 if fam == "l2" else psl2.SL2
        ops = LinearOps(F, mode)
        gens = [ops.canonical((1, 1, 0, 1)), ops.canonical((0, 1, F.neg(1), 0))]
        if F.e > 1:
            g = F.gen.code
            gens.append(ops.canonical((g, 0, 0, F.inv(g))))
        return closure(ops, gens)
    if key.startswith("metacyclic-"):
        ops = MetacyclicOps(int(key.split("-")[1]))
        return closure(ops, ops.generators())
    if key.startswith("c") and "x" in key:
        moduli = [int(part.lstrip("c")) for part in key.split("x")]
        ops = AbelianOps(moduli)
        return closure(ops, ops.generators())
    raise GroupError(f"unknown group name {name!r}")
