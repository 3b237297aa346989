"""Cyclic covers of S^3 branched over a knot, and the homomorphism θ_{X,D}.

Generators γ_{i,s} (arc i, sheet s in Z/t) with relators

    γ_{k,s} = γ_{j,s-1}^-1 γ_{i,s-1} γ_{j,s}     for each crossing and sheet,
    γ_{0,s} = 1                                   for s = 0 .. t-2,

where (i, j, k) = (source, over, target) at the crossing and arc 0 is the
base arc. The branched cover adds γ_{0,t-1} = 1. A colouring C sends
γ_{i,s} to e_{C(γ_0)}^{s-1} e_{C(γ_i)} e_{C(γ_0)}^{-s}, which lies in Ker ε.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .abgroup import AbGroup
from .assoc import AdjointRep
from .coloring import _adjoint, _check_coloring
from .diagram import LinkDiagram
from .errors import ConsistencyError, InputError
from .presentation import Abelianization, Presentation
from .quandle import QuandleTable, orbits, type_of

__all__ = ["CoverPresentation", "branched_cover_presentation", "cover_homology", "ThetaResult", "theta",
           "equivariance_check"]


@dataclass(frozen=True)
class CoverPresentation:
    t: int
    num_arcs: int
    base_arc: int
    presentation: Presentation
    branched: bool

    def gen(self, i: int, s: int) -> int:
        """0-based generator index of γ_{i,s}."""
        return (s % self.t) * self.num_arcs + i

    def h1(self) -> AbGroup:
        return Abelianization(self.presentation).group


def branched_cover_presentation(D: LinkDiagram, t: int, branched: bool = True) -> CoverPresentation:
    if t < 1:
        raise InputError("fold count must be >= 1")
    if len(D.components) != 1:
        raise InputError("cyclic covers are built for knots only")
    n = D.num_arcs
    base = D.components[0].base_arc

    def g(i, s):
        return (s % t) * n + i + 1

    rels = []
    for x in D.crossings:
        i, j, k = x.source, x.over, x.target
        for s in range(t):
            rels.append((-g(k, s), -g(j, s - 1), g(i, s - 1), g(j, s)))
    last = t if branched else t - 1
    for s in range(last):
        rels.append((g(base, s),))
    names = tuple(f"g{i}_{s}" for s in range(t) for i in range(n))
    return CoverPresentation(t, n, base, Presentation(n * t, tuple(rels), names), branched)


def cover_homology(D: LinkDiagram, t: int) -> AbGroup:
    return branched_cover_presentation(D, t).h1()


@dataclass
class ThetaResult:
    t: int
    cover: CoverPresentation
    values: dict  # (arc, sheet) -> element of Ker ε (index into the coset table)
    well_defined: bool
    failures: list
    image: tuple  # sorted elements of the image subgroup
    image_canonical: tuple  # lexicographically least conjugate of ``image``
    base_color: int
    R: AdjointRep

    @property
    def image_order(self) -> int:
        return len(self.image)

    def to_json(self) -> dict:
        return {
            "fold": self.t,
            "well_defined": self.well_defined,
            "equivariant": equivariance_check(self),
            "image_order": self.image_order,
        }


def theta(D: LinkDiagram, Q: QuandleTable, C, R: AdjointRep | None = None, check: bool = True) -> ThetaResult:
    """Evaluate θ_{X,D}(C) on every γ_{i,s} and verify every relator of the branched cover."""
    if not orbits(Q).connected:
        raise InputError("θ needs a connected quandle")
    C = _check_coloring(D, Q, C)
    t = type_of(Q)
    cov = branched_cover_presentation(D, t)
    R = R or _adjoint(Q)
    K = R.K
    x0 = C.colors[cov.base_arc]
    values = {}
    for i in range(D.num_arcs):
        for s in range(t):
            g = R.mul(R.mul(R.gen(x0, s - 1), R.gen(C.colors[i])), R.gen(x0, -s))
            if g[1] != 0:
                raise ConsistencyError("θ value outside Ker ε")
            values[(i, s)] = g[0]
    fails = []
    if check:
        gen_of = {cov.gen(i, s): values[(i, s)] for (i, s) in values}
        for r in cov.presentation.relators:
            acc = 0
            for l in r:
                k = gen_of[abs(l) - 1]
                acc = K.mul(acc, k if l > 0 else K.inv(k))
            if acc != 0:
                fails.append(list(r))
    image = _closure(K, set(values.values()))
    canon = min(tuple(sorted(K.mul(K.mul(K.inv(h), k), h) for k in image)) for h in range(K.size))
    return ThetaResult(t, cov, values, not fails, fails, tuple(sorted(image)), canon, x0, R)


def _closure(K, gens) -> set:
    gens = [g for g in gens if g != 0]
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = K.mul(a, g)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def equivariance_check(res: ThetaResult) -> bool:
    """θ(γ_{i,s+1}) = e_{x0} θ(γ_{i,s}) e_{x0}^-1 for all i and s mod t."""
    R = res.R
    e0 = R.gen(res.base_color)
    e0i = R.inv(e0)
    t = res.t
    for (i, s), k in res.values.items():
        g = R.mul(R.mul(e0, (k, 0)), e0i)
        if g != (res.values[(i, (s + 1) % t)], 0):
            return False
    return True
