"""Finite fields F_q with q = p^d, elements encoded as integers 0..q-1.

An element c_0 + c_1 g + ... + c_{d-1} g^{d-1} is stored as the integer
c_0 + c_1 p + ... + c_{d-1} p^{d-1}, where g is a root of the reduction
polynomial.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product

from .errors import InputError

__all__ = ["FqContext", "is_prime", "smallest_irreducible"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, d) with q = p**d, or raise InputError."""
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    d, r = 0, q
    while r % p == 0:
        r //= p
        d += 1
    if r != 1:
        raise InputError(f"{q} is not a prime power")
    return p, d


def _poly_has_root(coeffs, p):
    # coeffs low-to-high
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def _poly_mod(a, b, p):
    """Remainder of a by monic b over Z/p (low-to-high lists)."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(coeffs, p):
    d = len(coeffs) - 1
    if d <= 1:
        return d == 1
    if _poly_has_root(coeffs, p):
        return False
    if d <= 3:
        return True
    # d == 4: the only remaining factorisation is into two monic quadratics
    for a0, a1 in product(range(p), repeat=2):
        if not _poly_mod(coeffs, [a0, a1, 1], p):
            return False
    return True


def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree d over Z/p.

    Returned low-to-high including the leading 1. Only d <= 4 is supported.
    """
    if not 1 <= d <= 4:
        raise InputError("extension degree must be between 1 and 4")
    if d == 1:
        return (0, 1)
    # lex order on (c_{d-1}, ..., c_0), i.e. by the written polynomial
    for high in product(range(p), repeat=d):
        coeffs = list(reversed(high)) + [1]
        if coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


class FqContext:
    """Arithmetic in F_{p^d}."""

    def __init__(self, p: int, d: int = 1, reduction_poly=None):
        if not is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        if reduction_poly is None:
            reduction_poly = smallest_irreducible(p, d)
        reduction_poly = tuple(int(c) % p for c in reduction_poly)
        if len(reduction_poly) != d + 1 or reduction_poly[-1] != 1:
            raise InputError("reduction polynomial must be monic of degree d")
        if not _is_irreducible(list(reduction_poly), p):
            raise InputError(f"{reduction_poly} is reducible over Z/{p}")
        self.p = p
        self.d = d
        self.q = p**d
        self.reduction_poly = reduction_poly

    @classmethod
    def of_order(cls, q: int) -> "FqContext":
        p, d = prime_power(q)
        return cls(p, d)

    def __repr__(self):
        return f"FqContext(p={self.p}, d={self.d}, poly={self.reduction_poly})"

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.d):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs) -> int:
        v = 0
        for c in reversed(tuple(coeffs)):
            v = v * self.p + c % self.p
        return v

    @cached_property
    def _tables(self):
        q, p, d = self.q, self.p, self.d
        cs = [self.coeffs(a) for a in range(q)]
        add = [[self.encode([(x + y) % p for x, y in zip(cs[a], cs[b])]) for b in range(q)] for a in range(q)]
        neg = [self.encode([(-x) % p for x in cs[a]]) for a in range(q)]
        red = self.reduction_poly
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * d - 1)
                for i, x in enumerate(cs[a]):
                    if x:
                        for j, y in enumerate(cs[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                for k in range(2 * d - 2, d - 1, -1):
                    c = prod[k]
                    if c:
                        for i in range(d + 1):
                            prod[k - d + i] = (prod[k - d + i] - c * red[i]) % p
                v = self.encode(prod[:d])
                mul[a][b] = mul[b][a] = v
        inv = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        return add, neg, mul, inv

    def add(self, a: int, b: int) -> int:
        return self._tables[0][a][b]

    def neg(self, a: int) -> int:
        return self._tables[1][a]

    def sub(self, a: int, b: int) -> int:
        return self._tables[0][a][self._tables[1][b]]

    def mul(self, a: int, b: int) -> int:
        return self._tables[2][a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._tables[3][a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def enumerate(self):
        return range(self.q)

    @property
    def generator(self) -> int:
        """The class of x modulo the reduction polynomial (equals 0 when d = 1)."""
        return self.p if self.d > 1 else 0

    def label(self, a: int) -> str:
        if self.d == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if not c:
                continue
            mono = "1" if i == 0 else ("g" if i == 1 else f"g^{i}")
            terms.append(mono if c == 1 and i else (str(c) if i == 0 else f"{c}{mono}"))
        return "+".join(terms) if terms else "0"
