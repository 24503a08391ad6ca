"""Independent reference computations used by the tests.

Everything here is built on sympy's dense GF(p)[t] routines or on brute
force, never on the package's own arithmetic, so agreement is meaningful.
"""

from __future__ import annotations

from functools import reduce
from itertools import product

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_mul, gf_pow_mod, gf_rem, gf_strip


def to_dense(coeffs_low_first, p: int) -> list[int]:
    """Low-first coefficients -> sympy's high-first dense list."""
    return gf_strip([int(c) % p for c in reversed(list(coeffs_low_first))])


def euler_jacobi(g_low, f_low, p: int) -> int:
    """(g/f) as the product of Euler characters over the irreducible factors of f."""
    g, f = to_dense(g_low, p), to_dense(f_low, p)
    _, factors = gf_factor(f, p, ZZ)
    result = 1
    for h, mult in factors:
        r = gf_rem(g, h, p, ZZ)
        if not r:
            return 0
        deg = len(h) - 1
        v = gf_pow_mod(r, (p**deg - 1) // 2, h, p, ZZ)
        chi = 1 if v == [1] else -1
        assert v in ([1], [p - 1])
        result *= chi**mult
    return result


class BruteField:
    """GF(p^e) as explicit coefficient vectors, multiplied with sympy."""

    def __init__(self, p: int, modulus_low):
        self.p = p
        self.mod = to_dense(modulus_low, p)
        self.e = len(self.mod) - 1
        self.q = p**self.e

    def elements(self):
        for digits in product(range(self.p), repeat=self.e):
            yield tuple(digits)  # low-first

    def mul(self, a, b) -> tuple[int, ...]:
        r = gf_rem(gf_mul(to_dense(a, self.p), to_dense(b, self.p), self.p, ZZ), self.mod, self.p, ZZ)
        low = list(reversed(r)) + [0] * self.e
        return tuple(low[: self.e])

    def squares(self) -> set[tuple[int, ...]]:
        return {self.mul(a, a) for a in self.elements()}


def code(digits_low, p: int) -> int:
    return sum(c * p**i for i, c in enumerate(digits_low))


def group_order(q: int, family: str) -> int:
    """|SL2(q)| = q(q^2-1); |L2(q)| = that over gcd(2, q-1)."""
    n = q * (q * q - 1)
    return n if family == "SL2" or q % 2 == 0 else n // 2


def suzuki_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


def prime_powers(lo: int, hi: int) -> list[int]:
    return [n for n in range(lo, hi + 1) if len(factorint(n)) == 1]


def mat2_mul(p: int, a, b):
    """Integer 2x2 product mod p, for prime-field cross-checks."""
    return tuple(
        sum(a[2 * i + k] * b[2 * k + j] for k in range(2)) % p for i in range(2) for j in range(2)
    )


def mat2_order(p: int, m, projective: bool) -> int:
    ident = (1, 0, 0, 1)
    minus = (p - 1, 0, 0, p - 1)
    x, n = m, 1
    while x != ident and not (projective and x == minus):
        x = mat2_mul(p, x, m)
        n += 1
    return n


def product_all(xs):
    return reduce(lambda a, b: a * b, xs, 1)
