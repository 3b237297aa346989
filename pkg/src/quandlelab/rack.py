"""Rack and quandle chain complexes of a finite quandle.

C_n^R(X, Y) is free on Y × X^n with Y either a point or X itself. The
boundary is

    ∂(y, x_1..x_n) = Σ_i (-1)^i [(y◁x_i, x_1◁x_i, .., x_{i-1}◁x_i, x_{i+1}, .., x_n)
                                  - (y, x_1, .., x̂_i, .., x_n)].

The quandle flavour works on the quotient by tuples with two equal
neighbours; bases are listed in lexicographic order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd

from . import kernels
from .abgroup import AbGroup, Homology
from .errors import ConsistencyError, InputError, NotACycleError, ResourceLimitError
from .intmat import IntMatrix, reduce_columns
from .quandle import QuandleTable

__all__ = [
    "RackComplex",
    "Chain",
    "boundary_matrix",
    "homology",
    "cycle_class",
    "two_cocycles",
    "Cocycle",
    "CocycleBasis",
    "DEFAULT_BASIS_CAP",
]

DEFAULT_BASIS_CAP = 500_000


def _nondegenerate(t, offset: int) -> bool:
    return all(t[i] != t[i + 1] for i in range(offset, len(t) - 1))


class RackComplex:
    """The complex for one quandle, one coefficient set and one flavour.

    ``coefficients`` is ``"pt"`` or ``"X"``; ``flavor`` is ``"rack"`` or
    ``"quandle"``. Boundary matrices and homology objects are cached.
    """

    def __init__(self, Q: QuandleTable, flavor: str = "quandle", coefficients: str = "pt",
                 basis_cap: int = DEFAULT_BASIS_CAP, large: bool = False):
        if flavor not in ("rack", "quandle"):
            raise InputError(f"unknown flavor {flavor!r}")
        if coefficients not in ("pt", "X"):
            raise InputError(f"unknown coefficient set {coefficients!r}")
        self.quandle = Q
        self.flavor = flavor
        self.coefficients = coefficients
        self.offset = 1 if coefficients == "X" else 0
        self.basis_cap = None if large else basis_cap
        self._bases: dict = {}
        self._index: dict = {}
        self._d: dict = {}
        self._h: dict = {}

    def __repr__(self):
        return f"RackComplex({self.quandle.name or self.quandle.n}, {self.flavor}, Y={self.coefficients})"

    def basis_size(self, n: int) -> int:
        m = self.quandle.n
        if n < 0:
            return 0
        lead = m if self.offset else 1
        if self.flavor == "rack" or n == 0:
            return lead * m**n
        return lead * m * (m - 1) ** (n - 1)

    def basis(self, n: int) -> list:
        if n < 0:
            return []
        b = self._bases.get(n)
        if b is None:
            size = self.basis_size(n)
            if self.basis_cap is not None and size > self.basis_cap:
                raise ResourceLimitError(f"degree-{n} basis has {size} tuples (cap {self.basis_cap}); use --large")
            m = self.quandle.n
            tuples = product(range(m), repeat=n + self.offset)
            if self.flavor == "quandle":
                b = [t for t in tuples if _nondegenerate(t, self.offset)]
            else:
                b = list(tuples)
            self._bases[n] = b
        return b

    def index(self, n: int) -> dict:
        ix = self._index.get(n)
        if ix is None:
            ix = {t: i for i, t in enumerate(self.basis(n))}
            self._index[n] = ix
        return ix

    def boundary(self, n: int) -> IntMatrix:
        """∂_n : C_n -> C_{n-1} (zero map into C_{-1} = 0 when n = 0)."""
        d = self._d.get(n)
        if d is None:
            cols = self.basis(n)
            if n <= 0:
                d = IntMatrix.zeros(0, len(cols))
            else:
                trip = kernels.rack_boundary_triplets(self.quandle.op, self.index(n - 1), cols, n, self.offset)
                d = IntMatrix.from_triplets(len(self.basis(n - 1)), len(cols), trip)
            self._d[n] = d
        return d

    def homology_data(self, n: int, coordinates: bool = True) -> Homology:
        key = (n, coordinates)
        h = self._h.get(key) or (self._h.get((n, True)) if not coordinates else None)
        if h is None:
            h = Homology(self.boundary(n + 1), self.boundary(n), check=True, coordinates=coordinates)
            self._h[key] = h
        return h

    def homology(self, n: int, coordinates: bool = True) -> AbGroup:
        return self.homology_data(n, coordinates).group

    # -- chains -------------------------------------------------------------------
    def chain_vector(self, z: "Chain") -> dict:
        ix = self.index(z.degree)
        out: dict = {}
        for t, c in z.terms.items():
            if len(t) != z.degree + self.offset:
                raise InputError(f"tuple {t} has the wrong length for degree {z.degree}")
            if any(not 0 <= x < self.quandle.n for x in t):
                raise InputError(f"tuple {t} has entries out of range")
            i = ix.get(t)
            if i is None:
                continue  # degenerate, zero in the quotient
            out[i] = out.get(i, 0) + c
        return {i: c for i, c in out.items() if c}

    def boundary_of(self, z: "Chain") -> "Chain":
        v = self.chain_vector(z)
        img = self.boundary(z.degree).apply(v)
        basis = self.basis(z.degree - 1)
        return Chain(z.degree - 1, {basis[i]: c for i, c in enumerate(img) if c})

    def cycle_class(self, z: "Chain"):
        """Coordinates (torsion, free) of the class of the cycle z."""
        v = self.chain_vector(z)
        if any(self.boundary(z.degree).apply(v)):
            raise NotACycleError("chain is not a cycle")
        return self.homology_data(z.degree).coordinates(v)


@dataclass
class Chain:
    """Integer combination of basis tuples in one degree."""

    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        acc: dict = {}
        for t, c in dict(self.terms).items():
            t = tuple(int(x) for x in t)
            acc[t] = acc.get(t, 0) + int(c)
        self.terms = {t: acc[t] for t in sorted(acc) if acc[t]}

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree:
            raise InputError("adding chains of different degrees")
        acc = dict(self.terms)
        for t, c in other.terms.items():
            acc[t] = acc.get(t, 0) + c
        return Chain(self.degree, acc)

    def __neg__(self):
        return Chain(self.degree, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "Chain":
        return Chain(self.degree, {t: k * c for t, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        return {"degree": self.degree, "terms": [[list(t), c] for t, c in self.terms.items()]}

    @classmethod
    def from_json(cls, obj) -> "Chain":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(int(obj["degree"]), {tuple(t): c for t, c in obj["terms"]})
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad chain JSON: {exc}") from exc


@lru_cache(maxsize=64)
def _complex(Q: QuandleTable, flavor: str, coefficients: str, large: bool) -> RackComplex:
    return RackComplex(Q, flavor, coefficients, large=large)


def boundary_matrix(Q: QuandleTable, n: int, flavor: str = "quandle", coefficients: str = "pt",
                    large: bool = False) -> IntMatrix:
    if n < 1:
        raise InputError("boundary degree must be >= 1")
    return _complex(Q, flavor, coefficients, large).boundary(n)


def homology(Q: QuandleTable, n: int, flavor: str = "quandle", coefficients: str = "pt",
             large: bool = False) -> AbGroup:
    return _complex(Q, flavor, coefficients, large).homology(n)


def cycle_class(z: Chain, Q: QuandleTable, flavor: str = "quandle", coefficients: str = "pt"):
    return _complex(Q, flavor, coefficients, False).cycle_class(z)


# ---------------------------------------------------------------------------
# 2-cocycles


@dataclass(frozen=True)
class Cocycle:
    """A quandle 2-cocycle X × X -> Z/m stored as a full table."""

    modulus: int
    table: tuple

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    def evaluate(self, z: Chain) -> int:
        return sum(c * self.table[t[0]][t[1]] for t, c in z.terms.items()) % self.modulus

    def is_zero(self) -> bool:
        return not any(v for r in self.table for v in r)

    def to_json(self) -> dict:
        vals = {f"{x},{y}": v for x, r in enumerate(self.table) for y, v in enumerate(r) if v}
        return {"modulus": self.modulus, "values": vals}

    @classmethod
    def from_json(cls, obj, size: int) -> "Cocycle":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            m = int(obj["modulus"])
            table = [[0] * size for _ in range(size)]
            for key, v in obj["values"].items():
                x, y = (int(s) for s in key.split(","))
                table[x][y] = int(v) % m
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad cocycle JSON: {exc}") from exc
        return cls(m, tuple(tuple(r) for r in table))


@dataclass
class CocycleBasis:
    """H^2_Q(X; Z/m) with one representative cocycle per cyclic factor."""

    modulus: int
    group: AbGroup
    generators: list
    zero: Cocycle

    @property
    def cocycles(self) -> list:
        """The zero cocycle followed by the generators."""
        return [self.zero] + list(self.generators)


def two_cocycles(Q: QuandleTable, m: int):
    """Representatives of H^2_Q(X; Z/m): one cocycle per generator, plus zero.

    Work in coordinates ψ = φ U^-1 where U ∂_3 V = S is the Smith form of the
    quandle boundary ∂_3. A cochain is a cocycle iff ψ_i d_i ≡ 0 (mod m) on
    the pivot rows. Coboundaries are the row span of ∂_2 U^-1 plus m Z^N.
    """
    if m < 2:
        raise InputError("modulus must be >= 2")
    n = Q.n
    C = RackComplex(Q, "quandle", "pt")
    d3 = C.boundary(3)
    d2 = C.boundary(2)
    basis2 = C.basis(2)
    N = len(basis2)
    red = reduce_columns(d3, track_u=True, track_uinv=True)
    c = [1] * N
    for r, _, d in red.pivots:
        c[r] = m // gcd(m, d)
    # coboundary generators in ψ-coordinates, divided by c (integral because B ⊂ Z)
    byk: dict = {}
    for i in range(N):
        for k, u in red.Uinv[i].items():
            byk.setdefault(k, []).append((i, u))
    bcols = []
    for row in d2.row_dicts():
        psi: dict = {}
        for k, v in row.items():
            for i, u in byk.get(k, ()):
                psi[i] = psi.get(i, 0) + v * u
        col = {}
        for i, v in psi.items():
            if v % c[i]:
                raise ConsistencyError("coboundary outside the cocycle lattice")
            if v:
                col[i] = v // c[i]
        bcols.append(col)
    for i in range(N):
        bcols.append({i: m // c[i]})
    q = reduce_columns((N, bcols), track_u=True, track_uinv=True)
    if q.free_rows:
        raise ConsistencyError("H^2 with finite coefficients must be finite")
    gens = []
    orders = []
    for r, _, d in q.pivots:
        if d < 2:
            continue
        y = q.Uinv[r]  # Z-lattice coordinates of the generator
        psi = {i: c[i] * v for i, v in y.items()}
        # φ = ψ U
        phi = [0] * N
        for i, v in psi.items():
            for k, u in red.U[i].items():
                phi[k] += v * u
        table = [[0] * n for _ in range(n)]
        for k, (x, z) in enumerate(basis2):
            table[x][z] = phi[k] % m
        gens.append(Cocycle(m, tuple(tuple(r) for r in table)))
        orders.append(d)
    group = AbGroup.from_orders(orders)
    zero = Cocycle(m, tuple(tuple([0] * n) for _ in range(n)))
    return CocycleBasis(m, group, gens, zero)
