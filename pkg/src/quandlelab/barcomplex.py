"""Chain maps from the rack complex to the bar complex of As(X), and the
homotopies showing that t·c_n is null-homotopic for n <= 3.

Bar complex (unnormalized, inhomogeneous):

    ∂(g_1, .., g_n) = (g_2, .., g_n)
                      + Σ_{i=1}^{n-1} (-1)^i (g_1, .., g_i g_{i+1}, .., g_n)
                      + (-1)^n (g_1, .., g_{n-1}).

Two signs for the rack boundary (Y = pt) appear below. ``CHAIN_MAP_SIGN``
is the negative of the boundary in ``rack.py``; only with it is c_* a chain
map (c_1 ∂_2(x,y) = e_x - e_{x◁y}), and the degree-2 identity
h_1 ∂_2 - ∂_3 h_2 = t c_2 holds with it. The degree-3 check evaluates
F = t c_3 - h_2 ∂_3 - ∂_4 h_3 with the ``rack.py`` boundary (``RACK_SIGN``);
with the other sign F depends on x.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .assoc import AdjointRep, check_daiji
from .coloring import _adjoint
from .errors import InputError
from .quandle import QuandleTable, orbits, type_of

__all__ = [
    "BarChain",
    "BarContext",
    "c_map",
    "h_map",
    "bar_boundary",
    "rack_boundary_terms",
    "verify_lemma_tthm21",
    "verify_lemma_tthm23",
    "verify_daiji",
    "verify_chain_map",
    "VerifyReport",
]

CHAIN_MAP_SIGN = -1
RACK_SIGN = 1


@dataclass
class BarChain:
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: v for k, v in sorted(self.terms.items()) if v}

    def __add__(self, other: "BarChain") -> "BarChain":
        if self.degree != other.degree:
            raise InputError("adding bar chains of different degrees")
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return BarChain(self.degree, acc)

    def __neg__(self):
        return BarChain(self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "BarChain":
        return BarChain(self.degree, {t: k * v for t, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BarChain) and self.degree == other.degree and self.terms == other.terms

    def __len__(self):
        return len(self.terms)


class BarContext:
    """As(X) arithmetic with memoised products and powers."""

    def __init__(self, Q: QuandleTable, R: AdjointRep | None = None):
        if not orbits(Q).connected:
            raise InputError("the appendix maps need a connected quandle")
        self.quandle = Q
        self.R = R or _adjoint(Q)
        self.t = type_of(Q)
        self._mul: dict = {}
        self._pow: dict = {}

    def mul(self, g, h):
        key = (g, h)
        r = self._mul.get(key)
        if r is None:
            r = self.R.mul(g, h)
            self._mul[key] = r
        return r

    def e(self, x: int, j: int = 1):
        key = (x, j)
        r = self._pow.get(key)
        if r is None:
            r = self.R.gen(x, j)
            self._pow[key] = r
        return r

    def chain(self, n: int, signed_tuples) -> BarChain:
        acc: dict = {}
        for s, tup in signed_tuples:
            acc[tup] = acc.get(tup, 0) + s
        return BarChain(n, acc)


def c_map(ctx: BarContext, n: int, tup) -> BarChain:
    Q = ctx.quandle
    e = ctx.e
    op = Q.op
    if n == 1:
        (x,) = tup
        return ctx.chain(1, [(1, (e(x),))])
    if n == 2:
        x, y = tup
        return ctx.chain(2, [(1, (e(x), e(y))), (-1, (e(y), e(op[x][y])))])
    if n == 3:
        x, y, z = tup
        xy, xz, yz = op[x][y], op[x][z], op[y][z]
        A = op[xy][z]
        return ctx.chain(3, [
            (1, (e(x), e(y), e(z))),
            (-1, (e(x), e(z), e(yz))),
            (1, (e(y), e(z), e(A))),
            (-1, (e(y), e(xy), e(z))),
            (1, (e(z), e(xz), e(yz))),
            (-1, (e(z), e(yz), e(A))),
        ])
    raise InputError("c_n is defined for n = 1, 2, 3")


def h_map(ctx: BarContext, n: int, tup) -> BarChain:
    Q = ctx.quandle
    e = ctx.e
    op = Q.op
    out = []
    J = range(1, ctx.t)
    if n == 1:
        (x,) = tup
        for j in J:
            out.append((1, (e(x), e(x, j))))
        return ctx.chain(2, out)
    if n == 2:
        x, y = tup
        xy = op[x][y]
        for j in J:
            out += [
                (1, (e(x), e(y), e(xy, j))),
                (-1, (e(x), e(x, j), e(y))),
                (-1, (e(y), e(xy), e(xy, j))),
                (1, (e(y), e(y, j), e(y))),
            ]
        return ctx.chain(3, out)
    if n == 3:
        x, y, z = tup
        xy, xz, yz = op[x][y], op[x][z], op[y][z]
        A = op[xy][z]
        for j in J:
            out += [
                (1, (e(x), e(y), e(z), e(A, j))),
                (-1, (e(x), e(z), e(yz), e(A, j))),
                (-1, (e(x), e(y), e(xy, j), e(z))),
                (-1, (e(y), e(xy), e(z), e(A, j))),
                (1, (e(x), e(z), e(xz, j), e(yz))),
                (1, (e(z), e(xz), e(yz), e(A, j))),
                (1, (e(x), e(x, j), e(y), e(z))),
                (-1, (e(x), e(x, j), e(z), e(yz))),
                (1, (e(y), e(z), e(A), e(A, j))),
                (-1, (e(z), e(yz), e(A), e(A, j))),
                (-1, (e(z), e(xz), e(xz, j), e(yz))),
                (1, (e(y), e(xy), e(xy, j), e(z))),
            ]
        return ctx.chain(4, out)
    raise InputError("h_n is defined for n = 1, 2, 3")


def bar_boundary(ctx: BarContext, chain: BarChain) -> BarChain:
    n = chain.degree
    if n < 1:
        raise InputError("bar boundary needs degree >= 1")
    acc: dict = {}

    def add(t, v):
        acc[t] = acc.get(t, 0) + v

    for g, c in chain.terms.items():
        add(g[1:], c)
        for i in range(n - 1):
            add(g[:i] + (ctx.mul(g[i], g[i + 1]),) + g[i + 2 :], (-1) ** (i + 1) * c)
        add(g[:-1], (-1) ** n * c)
    return BarChain(n - 1, acc)


def rack_boundary_terms(Q: QuandleTable, tup, sign: int = CHAIN_MAP_SIGN) -> list:
    """Signed terms of ∂^R(x_1..x_n) with Y = pt (unnormalized)."""
    out = []
    for i in range(len(tup)):
        s = sign * (-1) ** (i + 1)
        xi = tup[i]
        a = tuple(Q.op[x][xi] for x in tup[:i]) + tup[i + 1 :]
        b = tup[:i] + tup[i + 1 :]
        out.append((s, a))
        out.append((-s, b))
    return out


def _apply(ctx, f, n, terms, degree_out) -> BarChain:
    acc = BarChain(degree_out)
    for s, tup in terms:
        acc = acc + f(ctx, n, tup).scale(s)
    return acc


@dataclass
class VerifyReport:
    ok: bool
    checked: int
    mismatches: list

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "mismatches": self.mismatches[:20]}


def _fmt(chain: BarChain) -> list:
    return [[[list(g) for g in t], v] for t, v in chain.terms.items()]


def verify_chain_map(Q: QuandleTable, ctx: BarContext | None = None, degrees=(2, 3)) -> VerifyReport:
    """∂ c_n = c_{n-1} ∂^R on every tuple, for the given degrees."""
    ctx = ctx or BarContext(Q)
    bad = []
    checked = 0
    for n in degrees:
        for tup in product(range(Q.n), repeat=n):
            checked += 1
            lhs = bar_boundary(ctx, c_map(ctx, n, tup))
            rhs = _apply(ctx, c_map, n - 1, rack_boundary_terms(Q, tup), n - 1)
            if lhs != rhs:
                bad.append({"input": list(tup), "difference": _fmt(lhs - rhs)})
    return VerifyReport(not bad, checked, bad)


def verify_lemma_tthm21(Q: QuandleTable, ctx: BarContext | None = None) -> VerifyReport:
    """h_1 ∂_2^R - ∂_3 h_2 = t c_2 on every (x, y)."""
    ctx = ctx or BarContext(Q)
    t = ctx.t
    bad = []
    checked = 0
    for x in range(Q.n):
        for y in range(Q.n):
            lhs = _apply(ctx, h_map, 1, rack_boundary_terms(Q, (x, y)), 2) - bar_boundary(ctx, h_map(ctx, 2, (x, y)))
            rhs = c_map(ctx, 2, (x, y)).scale(t)
            checked += 1
            if lhs != rhs:
                bad.append({"input": [x, y], "difference": _fmt(lhs - rhs)})
    return VerifyReport(not bad, checked, bad)


def _F(ctx, Q, x, y, z) -> BarChain:
    t = ctx.t
    return (
        c_map(ctx, 3, (x, y, z)).scale(t)
        - _apply(ctx, h_map, 2, rack_boundary_terms(Q, (x, y, z), RACK_SIGN), 3)
        - bar_boundary(ctx, h_map(ctx, 3, (x, y, z)))
    )


def verify_lemma_tthm23(Q: QuandleTable, ctx: BarContext | None = None, samples: int | None = None,
                        seed: int = 0) -> VerifyReport:
    """F(x,y,z) = t c_3 - h_2 ∂_3^R - ∂_4 h_3 does not depend on x, and c_3(x,x,z) = 0.

    Exhaustive over (y, z) and all x by default; with ``samples`` set, checks
    that many random triples against x = 0.
    """
    ctx = ctx or BarContext(Q)
    n = Q.n
    bad = []
    checked = 0
    if samples is None:
        pairs = [(y, z) for y in range(n) for z in range(n)]
        xs = lambda: range(1, n)  # noqa: E731
    else:
        rng = random.Random(seed)
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
        xs = lambda: [rng.randrange(n)]  # noqa: E731
    for y, z in pairs:
        ref = _F(ctx, Q, 0, y, z)
        for x in xs():
            checked += 1
            f = _F(ctx, Q, x, y, z)
            if f != ref:
                bad.append({"input": [x, y, z], "against": [0, y, z], "difference": _fmt(f - ref)})
    for x in range(n):
        for z in range(n):
            checked += 1
            c = c_map(ctx, 3, (x, x, z))
            if not c.is_zero():
                bad.append({"input": [x, x, z], "c3": _fmt(c)})
    return VerifyReport(not bad, checked, bad)


def verify_daiji(Q: QuandleTable, R: AdjointRep | None = None) -> VerifyReport:
    """e_x^t = e_y^t for all x, y, and this element is central; the representation is
    first re-checked to be faithful (Ker ε acts freely on its cosets)."""
    if not orbits(Q).connected:
        raise InputError("needs a connected quandle")
    R = R or _adjoint(Q)
    bad = []
    if not R.K.check_regular():
        bad.append({"faithfulness": "Ker ε does not act regularly"})
    t = type_of(Q)
    if not check_daiji(R, t):
        z = R.gen(0, t)
        for x in range(Q.n):
            if R.gen(x, t) != z:
                bad.append({"power": [x, 0]})
            if R.conjugate(R.gen(x), z) != R.gen(x):
                bad.append({"central": x})
    return VerifyReport(not bad, Q.n, bad)
