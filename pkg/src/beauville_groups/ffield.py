"""Exact arithmetic in GF(p^e) = F_p[t]/(f(t)).

Elements are coefficient vectors in the basis 1, t, ..., t^(e-1).  Internally
every element also has an integer *code* ``sum(c_i * p**i)``; comparing codes
gives the canonical total order used for tie-breaks throughout the package
(constants first, then t, t+1, ...).

Fields up to ``TABLE_LIMIT`` elements carry exp/log and Zech tables, so the
hot loops in the matrix-group code work on plain ints.
"""

from __future__ import annotations

import functools
import math
import re
from typing import Iterable, Iterator, Sequence

from sympy import factorint, isprime

TABLE_LIMIT = 1 << 20
ZERO_DEGREE = -1  # degree of the zero polynomial; never feed it to exponent formulas


class FieldError(ValueError):
    """Invalid field parameters or an operation outside a field's domain."""


# ---------------------------------------------------------------------------
# polynomials over F_p


class Polynomial:
    """Polynomial over F_p, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree ``ZERO_DEGREE``.
    """

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable[int], p: int):
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.p = p

    # construction ----------------------------------------------------------

    @classmethod
    def parse(cls, text: str, p: int) -> "Polynomial":
        """Parse ascii text such as ``"t^3-t+1"`` or ``"2*t^2 + t"``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise FieldError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"([+-])([^+-]+)", s)
        if "".join(sign + body for sign, body in terms) != s:
            raise FieldError(f"cannot parse polynomial {text!r}")
        acc: dict[int, int] = {}
        for sign, body in terms:
            m = re.fullmatch(r"(\d+)?\*?(t(?:\^(\d+))?)?", body)
            if m is None or (m.group(1) is None and m.group(2) is None):
                raise FieldError(f"bad term {body!r} in {text!r}")
            coef = int(m.group(1)) if m.group(1) is not None else 1
            if m.group(2) is None:
                power = 0
            else:
                power = int(m.group(3)) if m.group(3) is not None else 1
            if sign == "-":
                coef = -coef
            acc[power] = acc.get(power, 0) + coef
        top = max(acc)
        return cls([acc.get(i, 0) for i in range(top + 1)], p)

    @classmethod
    def from_code(cls, code: int, p: int) -> "Polynomial":
        cs = []
        while code:
            code, r = divmod(code, p)
            cs.append(r)
        return cls(cs, p)

    @classmethod
    def monomial(cls, n: int, p: int, coef: int = 1) -> "Polynomial":
        return cls([0] * n + [coef], p)

    # basic properties --------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def code(self) -> int:
        return sum(c * self.p**i for i, c in enumerate(self.coeffs))

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        inv = pow(self.lc, -1, self.p)
        return Polynomial([c * inv for c in self.coeffs], self.p)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.p != self.p:
                raise FieldError("polynomials over different primes")
            return other
        if isinstance(other, int):
            return Polynomial([other], self.p)
        return NotImplemented

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)], self.p)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Polynomial([], self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out, self.p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dq = other.degree
        inv = pow(other.lc, -1, p)
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] % p
            if c:
                f = c * inv % p
                quot[i - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= f * b
        return Polynomial(quot, p), Polynomial(rem[:dq] if dq > 0 else [], p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def powmod(self, n: int, modulus: "Polynomial") -> "Polynomial":
        result = Polynomial([1], self.p) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial([other], self.p)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self}, p={self.p})"

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence[int], var: str = "t") -> str:
    """Render low-first coefficients as ``"2t^2+t+1"``."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}{mono}")
    return "+".join(parts) if parts else "0"


def _prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test; f must have degree >= 1."""
    n = f.degree
    if n < 1:
        raise FieldError("irreducibility needs a non-constant polynomial")
    if n == 1:
        return True
    p = f.p
    t = Polynomial([0, 1], p)

    def frob_power(k: int) -> Polynomial:
        h = t
        for _ in range(k):
            h = h.powmod(p, f)
        return h

    if frob_power(n) != t % f:
        return False
    for ell in _prime_divisors(n):
        h = frob_power(n // ell)
        if (h - t).gcd(f).degree != 0:
            return False
    return True


def poly_classify(f: Polynomial) -> str:
    """Return ``"reducible"``, ``"irreducible"`` or ``"primitive"`` for monic f."""
    if not f.is_monic():
        raise FieldError(f"{f} is not monic")
    if f.degree < 1:
        raise FieldError("classification needs degree >= 1")
    if not is_irreducible(f):
        return "reducible"
    p, n = f.p, f.degree
    if f.coeffs[0] == 0:  # f = t
        return "irreducible"
    order = p**n - 1
    t = Polynomial([0, 1], p)
    for ell in _prime_divisors(order):
        if t.powmod(order // ell, f) == 1:
            return "irreducible"
    return "primitive"


# ---------------------------------------------------------------------------
# fields


class Field:
    """GF(p^e) with a fixed modulus; build instances with :func:`make_field`."""

    def __init__(self, p: int, e: int, modulus: Polynomial):
        self.p = p
        self.e = e
        self.modulus = modulus
        self.q = p**e
        self.k = math.gcd(2, self.q - 1)
        self._order_factors = _prime_divisors(self.q - 1)
        self._tables = self.q <= TABLE_LIMIT and e > 1
        if e == 1:
            self._gen_code = (-modulus.coeffs[0]) % p
        if self._tables:
            self._build_tables()
        self._sq_cache: dict[int, int | None] | None = None

    # identity ----------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus.coeffs))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}) = F_{self.p}[t]/({self.modulus})"

    # code <-> digits ---------------------------------------------------------

    def digits(self, code: int) -> tuple[int, ...]:
        out = []
        p = self.p
        for _ in range(self.e):
            code, r = divmod(code, p)
            out.append(r)
        return tuple(out)

    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) > self.e:
            raise FieldError(f"{len(digits)} coordinates for a degree-{self.e} field")
        p = self.p
        return sum((int(c) % p) * p**i for i, c in enumerate(digits))

    def _poly_mulmod(self, a: int, b: int) -> int:
        pa = Polynomial(self.digits(a), self.p)
        pb = Polynomial(self.digits(b), self.p)
        return (pa * pb % self.modulus).code()

    def _build_tables(self) -> None:
        n = self.q - 1
        gamma = None
        if poly_classify(self.modulus) == "primitive":
            gamma = self.p  # the residue of t
        else:
            for cand in range(2, self.q):
                if self._order_direct(cand) == n:
                    gamma = cand
                    break
        exp = [0] * (2 * n)
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._poly_mulmod(x, gamma)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        p = self.p
        zech = [0] * n
        for i in range(n):
            c = exp[i]
            c1 = c - (p - 1) if c % p == p - 1 else c + 1
            zech[i] = log[c1] if c1 else -1
        log[0] = -1
        self._exp, self._log, self._zech = exp, log, zech
        self._gamma = gamma
        self._half = n // 2

    def _order_direct(self, a: int) -> int:
        n = self.q - 1
        one = Polynomial([1], self.p)
        pa = Polynomial(self.digits(a), self.p)
        for ell in self._order_factors:
            while n % ell == 0 and pa.powmod(n // ell, self.modulus) == one:
                n //= ell
        if pa.powmod(n, self.modulus) != one:
            raise FieldError("element is not a unit")
        return n

    # raw arithmetic on codes ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        if self._tables:
            if a == 0:
                return b
            if b == 0:
                return a
            la = self._log[a]
            z = self._zech[(self._log[b] - la) % (self.q - 1)]
            if z < 0:
                return 0
            return self._exp[la + z]
        da, db = self.digits(a), self.digits(b)
        return self.from_digits([x + y for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.e == 1:
            return self.p - a
        if self._tables:
            return self._exp[self._log[a] + self._half]
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._poly_mulmod(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(a, -1, self.p)
        if self._tables:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        if self.e == 1:
            return pow(a, n, self.p)
        if self._tables:
            return self._exp[self._log[a] * n % (self.q - 1)]
        result, base = 1, a
        while n:
            if n & 1:
                result = self._poly_mulmod(result, base)
            base = self._poly_mulmod(base, base)
            n >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Code of the integer n, i.e. n * 1 in the prime subfield."""
        return n % self.p

    def log(self, a: int) -> int:
        """Discrete log to the table generator (table-backed fields only)."""
        if not self._tables:
            raise FieldError("discrete logs are only tabulated for extension fields")
        return self._log[a]

    # element layer -------------------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.code_of(value))

    def code_of(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value.code
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, str):
            return self._reduce_poly(Polynomial.parse(value, self.p))
        if isinstance(value, Polynomial):
            return self._reduce_poly(value)
        if isinstance(value, (list, tuple)):
            return self.from_digits(value)
        raise TypeError(f"cannot interpret {value!r} as an element of {self}")

    def _reduce_poly(self, f: Polynomial) -> int:
        if f.p != self.p:
            raise FieldError("polynomial over the wrong prime")
        if self.e == 1:
            # t is the residue g of the linear modulus t - g
            acc = 0
            for c in reversed(f.coeffs):
                acc = (acc * self._gen_code + c) % self.p
            return acc
        r = f % self.modulus
        return self.from_digits(r.coeffs)

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for {self}")
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The residue of t."""
        return FieldElement(self, self._gen_code if self.e == 1 else self.p)

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield FieldElement(self, code)

    def format(self, code: int) -> str:
        if self.e == 1:
            return str(code)
        return format_poly(self.digits(code))

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus.coeffs)}

    # higher-level queries on codes ---------------------------------------------

    def is_square_code(self, a: int) -> bool:
        if self.p == 2 or a == 0:
            return True
        if self._tables:
            return self._log[a] % 2 == 0
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt_code(self, a: int) -> int | None:
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        if not self.is_square_code(a):
            return None
        if self.q < 1 << 10:
            if self._sq_cache is None:
                cache: dict[int, int | None] = {}
                for r in range(self.q):
                    s = self.mul(r, r)
                    if s not in cache:
                        cache[s] = r  # ascending r: first hit is the smaller root
                self._sq_cache = cache
            return self._sq_cache[a]
        r = self._tonelli_shanks(a)
        return min(r, self.neg(r))

    def _tonelli_shanks(self, a: int) -> int:
        m, s = self.q - 1, 0
        while m % 2 == 0:
            m //= 2
            s += 1
        z = next(c for c in range(2, self.q) if not self.is_square_code(c))
        c = self.pow(z, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = self.pow(c, 1 << (s - i - 1))
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        return x

    def order_code(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        if self._tables:
            return (self.q - 1) // math.gcd(self._log[a], self.q - 1)
        n = self.q - 1
        for ell in self._order_factors:
            while n % ell == 0 and self.pow(a, n // ell) == 1:
                n //= ell
        return n

    def absolute_trace_code(self, a: int) -> int:
        """Tr_{F_q/F_p}(a) as a code of the prime subfield."""
        acc, x = 0, a
        for _ in range(self.e):
            acc = self.add(acc, x)
            x = self.pow(x, self.p)
        return acc

    def frobenius_code(self, a: int, j: int = 1) -> int:
        """a -> a^(p^j)."""
        return self.pow(a, self.p ** (j % self.e)) if a else 0


class FieldElement:
    """An element of a :class:`Field`; immutable, hashable, totally ordered by code."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.code
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.code))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.code, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int) and not isinstance(other, bool):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __lt__(self, other: "FieldElement"):
        return self.code < other.code

    def __le__(self, other: "FieldElement"):
        return self.code <= other.code

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return self.field.format(self.code)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    # queries -----------------------------------------------------------------

    def is_square(self) -> bool:
        return is_square(self)

    def sqrt(self) -> "FieldElement | None":
        return sqrt(self)

    def order(self) -> int:
        return multiplicative_order(self)


@functools.lru_cache(maxsize=None)
def _make_field(p: int, e: int, modulus: tuple[int, ...] | None) -> Field:
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1:
        raise FieldError("extension degree must be >= 1")
    if modulus is None:
        return Field(p, e, default_modulus(p, e))
    f = Polynomial(modulus, p)
    if f.degree != e:
        raise FieldError(f"modulus {f} has degree {f.degree}, expected {e}")
    if not f.is_monic():
        raise FieldError(f"modulus {f} is not monic")
    if not is_irreducible(f):
        raise FieldError(f"modulus {f} is reducible over F_{p}")
    return Field(p, e, f)


def make_field(p: int, e: int = 1, modulus=None) -> Field:
    """Build GF(p^e).

    ``modulus`` may be a :class:`Polynomial`, ascii text (``"t^3+t+1"``) or a
    low-first coefficient sequence.  Without it the smallest primitive monic
    polynomial (ordered by code) is used, so t is a primitive root; for e = 1
    the modulus is t - g with g the least primitive root mod p.
    """
    if modulus is not None:
        if isinstance(modulus, str):
            modulus = Polynomial.parse(modulus, p)
        if isinstance(modulus, Polynomial):
            if modulus.p != p:
                raise FieldError("modulus over the wrong prime")
            modulus = modulus.coeffs
        modulus = tuple(int(c) % p for c in modulus)
        while modulus and modulus[-1] == 0:
            modulus = modulus[:-1]
    return _make_field(int(p), int(e), modulus)


def field_of_order(q: int, modulus=None) -> Field:
    """GF(q) for a prime power q."""
    fac = factorint(q)
    if len(fac) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, e), = fac.items()
    return make_field(p, e, modulus)


def default_modulus(p: int, e: int) -> Polynomial:
    if e == 1:
        g = 1 if p == 2 else next(
            a for a in range(2, p)
            if all(pow(a, (p - 1) // ell, p) != 1 for ell in _prime_divisors(p - 1))
        )
        return Polynomial([-g, 1], p)
    for code in range(p**e + 1, 2 * p**e):
        f = Polynomial.from_code(code, p)
        if poly_classify(f) == "primitive":
            return f
    raise FieldError(f"no primitive polynomial of degree {e} over F_{p}")  # pragma: no cover


# ---------------------------------------------------------------------------
# element-level operations


def is_square(a: FieldElement) -> bool:
    """Zero counts as a square; every element is a square when q is even."""
    return a.field.is_square_code(a.code)


def sqrt(a: FieldElement) -> FieldElement | None:
    """Canonical square root (smaller code of r, -r), or None for non-squares."""
    r = a.field.sqrt_code(a.code)
    return None if r is None else FieldElement(a.field, r)


def multiplicative_order(a: FieldElement) -> int:
    return a.field.order_code(a.code)


def primitive_roots(F: Field) -> Iterator[FieldElement]:
    """Generators of F*, ascending canonical order."""
    n = F.q - 1
    for code in range(1, F.q):
        if F.order_code(code) == n:
            yield FieldElement(F, code)


def smallest_primitive_root(F: Field) -> FieldElement:
    return next(primitive_roots(F))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    if p == 2 or not isprime(p):
        raise FieldError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def dedekind_symbol(g: Polynomial, f: Polynomial) -> int:
    """Quadratic symbol (g/f) over an odd prime field via reciprocity.

    For irreducible f this is the quadratic character of g mod f in
    F_p[t]/(f); it extends multiplicatively over the factors of f.
    """
    p = f.p
    if p == 2:
        raise FieldError("quadratic symbols need odd characteristic")
    if g.p != p:
        raise FieldError("polynomials over different primes")
    if f.degree < 1 or not f.is_monic():
        raise FieldError("the modulus must be monic and non-constant")
    half = (p - 1) // 2
    sign = 1
    while True:
        g = g % f
        if g.is_zero():
            return 0
        c = g.lc
        if c != 1:
            if f.degree % 2:
                sign *= legendre(c, p)
            g = g.monic()
        if g.degree == 0:
            return sign
        # (g/f)(f/g) = (-1)^(deg f * deg g * (p-1)/2)
        if (f.degree * g.degree * half) % 2:
            sign = -sign
        f, g = g, f


def euler_symbol(g: Polynomial, f: Polynomial) -> int:
    """Reference (g/f) for irreducible f: Euler's criterion inside F_p[t]/(f)."""
    p = f.p
    r = (g % f)
    if r.is_zero():
        return 0
    v = r.powmod((p**f.degree - 1) // 2, f)
    if v == 1:
        return 1
    if v == Polynomial([-1], p):
        return -1
    raise FieldError(f"{f} is not irreducible")  # Euler value outside {+-1}


# ---------------------------------------------------------------------------
# the quadratic extension GF(q^2)


class QuadExtension:
    """GF(q^2) as pairs (x0, x1) = x0 + x1*w over the base field's codes.

    Odd q: w^2 = nu with nu the least non-square.  Even q: w^2 + w + delta = 0
    with delta the least element of absolute trace 1.
    """

    def __init__(self, base: Field):
        self.base = base
        F = base
        self.odd = F.p != 2
        if self.odd:
            self.nu = next(c for c in range(1, F.q) if not F.is_square_code(c))
        else:
            self.delta = next(c for c in range(1, F.q) if F.absolute_trace_code(c) == 1)
        self.order = F.q * F.q
        self._gen = None
        self._as_table: dict[int, int] | None = None

    def mul(self, u, v):
        F = self.base
        a, b = u
        c, d = v
        bd = F.mul(b, d)
        if self.odd:
            return (F.add(F.mul(a, c), F.mul(bd, self.nu)), F.add(F.mul(a, d), F.mul(b, c)))
        return (
            F.add(F.mul(a, c), F.mul(bd, self.delta)),
            F.add(F.add(F.mul(a, d), F.mul(b, c)), bd),
        )

    def add(self, u, v):
        F = self.base
        return (F.add(u[0], v[0]), F.add(u[1], v[1]))

    def conj(self, u):
        F = self.base
        a, b = u
        if self.odd:
            return (a, F.neg(b))
        return (F.add(a, b), b)

    def norm(self, u) -> int:
        return self.mul(u, self.conj(u))[0]

    def inv(self, u):
        F = self.base
        n = self.norm(u)
        if n == 0:
            raise ZeroDivisionError("inverse of zero in GF(q^2)")
        ni = F.inv(n)
        c = self.conj(u)
        return (F.mul(c[0], ni), F.mul(c[1], ni))

    def pow(self, u, n: int):
        if n < 0:
            u, n = self.inv(u), -n
        result = (1, 0)
        while n:
            if n & 1:
                result = self.mul(result, u)
            u = self.mul(u, u)
            n >>= 1
        return result

    def frobenius(self, u):
        """u -> u^q."""
        return self.pow(u, self.base.q)

    def is_base(self, u) -> bool:
        return u[1] == 0

    def elements(self):
        for a in range(self.base.q):
            for b in range(self.base.q):
                yield (a, b)

    def generator(self):
        """Least (by (x1, x0)) generator of GF(q^2)*."""
        if self._gen is None:
            n = self.order - 1
            primes = _prime_divisors(n)
            for b in range(1, self.base.q):
                for a in range(self.base.q):
                    u = (a, b)
                    if all(self.pow(u, n // ell) != (1, 0) for ell in primes):
                        self._gen = u
                        return u
            raise FieldError("no generator found")  # pragma: no cover
        return self._gen

    def mult_order(self, u) -> int:
        n = self.order - 1
        for ell in _prime_divisors(n):
            while n % ell == 0 and self.pow(u, n // ell) == (1, 0):
                n //= ell
        return n

    def quadratic_roots(self, b1: int, b0: int) -> list:
        """Roots in GF(q^2) of z^2 + b1*z + b0 with b1, b0 in the base field."""
        F = self.base
        if self.odd:
            two_inv = F.inv(2 % F.p)
            disc = F.sub(F.mul(b1, b1), F.mul(4 % F.p, b0))
            mb1 = F.neg(b1)
            if F.is_square_code(disc):
                s = F.sqrt_code(disc)
                roots = {(F.mul(F.add(mb1, s), two_inv), 0), (F.mul(F.sub(mb1, s), two_inv), 0)}
            else:
                s = F.sqrt_code(F.div(disc, self.nu))
                h = F.mul(s, two_inv)
                roots = {(F.mul(mb1, two_inv), h), (F.mul(mb1, two_inv), F.neg(h))}
            return sorted(roots, key=lambda u: (u[1], u[0]))
        if b1 == 0:
            return [(F.sqrt_code(b0), 0)]
        beta = F.div(b0, F.mul(b1, b1))
        if F.absolute_trace_code(beta) == 0:
            u0 = self._artin_schreier(beta)
            us = [(u0, 0), (F.add(u0, 1), 0)]
        else:
            u0 = self._artin_schreier(F.add(beta, self.delta))
            us = [(u0, 1), (F.add(u0, 1), 1)]
        roots = {(F.mul(b1, u[0]), F.mul(b1, u[1])) for u in us}
        return sorted(roots, key=lambda u: (u[1], u[0]))

    def _artin_schreier(self, beta: int) -> int:
        """Least u in F_q with u^2 + u = beta (beta of absolute trace 0)."""
        if self._as_table is None:
            F = self.base
            table: dict[int, int] = {}
            for u in range(F.q):
                table.setdefault(F.add(F.mul(u, u), u), u)
            self._as_table = table
        return self._as_table[beta]

    def traces_of_order(self, m: int) -> set[int]:
        """Codes of u + u^-1 over all u of exact order m in the norm-one circle or F_q*."""
        F = self.base
        q = F.q
        out: set[int] = set()
        if (q + 1) % m == 0:
            g = self.pow(self.generator(), q - 1)  # order q + 1
            step = (q + 1) // m
            for j in range(1, m + 1):
                if math.gcd(j, m) == 1:
                    u = self.pow(g, step * j)
                    t = self.add(u, self.inv(u))
                    out.add(t[0])
        if (q - 1) % m == 0:
            for code in range(1, q):
                if F.order_code(code) == m:
                    out.add(F.add(code, F.inv(code)))
        return out

    def norm_one_traces(self, n: int, projective: bool = False) -> list[FieldElement]:
        """Sorted traces a = u + u^-1 giving [[0,1],[-1,a]] order n.

        With ``projective`` the order is taken modulo the centre {+-I}.
        """
        F = self.base
        q = F.q
        if projective and F.p != 2:
            orders = [2 * n] if n % 2 == 0 else [n, 2 * n]
        else:
            orders = [n]
        valid = [m for m in orders if (q + 1) % m == 0 or (q - 1) % m == 0]
        if not valid:
            raise FieldError(f"order {n} divides neither q-1 nor q+1 for q={q}")
        codes: set[int] = set()
        for m in valid:
            codes |= self.traces_of_order(m)
        return [FieldElement(F, c) for c in sorted(codes)]

    def find_norm_one_trace(self, n: int, count: int = 1, projective: bool = False):
        """Smallest trace (``count`` = 1) or the two smallest distinct traces."""
        traces = self.norm_one_traces(n, projective)
        if len(traces) < count:
            raise FieldError(f"only {len(traces)} distinct traces of order {n} in GF({self.base.q})")
        return traces[0] if count == 1 else tuple(traces[:count])


def quad_ext(F: Field) -> QuadExtension:
    return _quad_ext(F)


@functools.lru_cache(maxsize=None)
def _quad_ext(F: Field) -> QuadExtension:
    return QuadExtension(F)
