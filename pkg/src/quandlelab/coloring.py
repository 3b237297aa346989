"""X-colourings of diagrams and the invariants built from them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .abgroup import AbGroup
from .assoc import AdjointRep, StabilizerData, adjoint_rep
from .diagram import LinkDiagram
from .errors import ConsistencyError, InputError
from .quandle import QuandleTable, orbits
from .rack import Chain, Cocycle, RackComplex

__all__ = [
    "Coloring",
    "enumerate_colorings",
    "count_colorings",
    "GammaReport",
    "gamma_check",
    "gamma_longitude",
    "is_quandle_cocycle",
    "cocycle_invariant",
    "state_sum_chain",
    "state_sum_class",
    "ClassValue",
    "longitude_class",
    "coloring_polynomial",
]


@dataclass(frozen=True)
class Coloring:
    diagram: LinkDiagram = field(compare=False, repr=False)
    colors: tuple

    def __getitem__(self, arc: int) -> int:
        return self.colors[arc]

    def is_valid(self, Q: QuandleTable) -> bool:
        c = self.colors
        return all(c[x.target] == Q.op[c[x.source]][c[x.over]] for x in self.diagram.crossings)

    def is_trivial(self) -> bool:
        return len(set(self.colors)) <= 1

    def to_json(self) -> list:
        return list(self.colors)


def _search_order(D: LinkDiagram) -> list:
    """Arcs in branching order: most constrained by already placed arcs first, ties by index."""
    placed = []
    seen = set()
    touches = [set() for _ in range(D.num_arcs)]
    for x in D.crossings:
        for a in (x.source, x.over, x.target):
            touches[a].add(x)
    while len(placed) < D.num_arcs:
        best = max(
            (a for a in range(D.num_arcs) if a not in seen),
            key=lambda a: (sum(1 for x in touches[a] if {x.source, x.over, x.target} & seen), -a),
        )
        placed.append(best)
        seen.add(best)
    return placed


def enumerate_colorings(D: LinkDiagram, Q: QuandleTable) -> list:
    """All X-colourings, by backtracking with propagation, sorted by colour tuple."""
    n = D.num_arcs
    op = Q.op
    inv = Q.inv_op
    crossings = [(x.source, x.over, x.target) for x in D.crossings]
    order = _search_order(D)
    out = []

    def propagate(col):
        changed = True
        while changed:
            changed = False
            for i, j, k in crossings:
                ci, cj, ck = col[i], col[j], col[k]
                if cj < 0:
                    continue
                if ci >= 0:
                    v = op[ci][cj]
                    if ck < 0:
                        col[k] = v
                        changed = True
                    elif ck != v:
                        return False
                elif ck >= 0:
                    col[i] = inv[ck][cj]
                    changed = True
        return True

    def search(col):
        a = next((a for a in order if col[a] < 0), None)
        if a is None:
            out.append(tuple(col))
            return
        for v in range(Q.n):
            c = list(col)
            c[a] = v
            if propagate(c):
                search(c)

    search([-1] * n)
    out.sort()
    return [Coloring(D, c) for c in out]


def count_colorings(D: LinkDiagram, Q: QuandleTable) -> int:
    return len(enumerate_colorings(D, Q))


def _check_coloring(D: LinkDiagram, Q: QuandleTable, C) -> Coloring:
    if not isinstance(C, Coloring):
        C = Coloring(D, tuple(int(v) for v in C))
    if len(C.colors) != D.num_arcs:
        raise InputError(f"colouring has {len(C.colors)} colours for {D.num_arcs} arcs")
    if not C.is_valid(Q):
        raise InputError("not an X-colouring of the diagram")
    return C


# ---------------------------------------------------------------------------
# Γ_C: π1 -> As(X)


@dataclass
class GammaReport:
    ok: bool
    failures: list


def _letters(D: LinkDiagram, C: Coloring, word) -> list:
    return [(C.colors[abs(l) - 1], 1 if l > 0 else -1) for l in word]


def gamma_longitude(D: LinkDiagram, C: Coloring, R: AdjointRep, k: int = 0):
    return R.evaluate(_letters(D, C, D.longitude_word(k)))


def gamma_check(D: LinkDiagram, Q: QuandleTable, C, R: AdjointRep | None = None) -> GammaReport:
    """Wirtinger relators go to 1, f(m_i) = e_{x_i} and x_i · f(l_i) = x_i, checked in As(X)."""
    C = _check_coloring(D, Q, C)
    R = R or _adjoint(Q)
    P, mer, lon = D.wirtinger()
    fails = []
    for r in P.relators:
        if R.evaluate(_letters(D, C, r)) != R.identity:
            fails.append(f"relator {list(r)} is not sent to 1")
    for k, comp in enumerate(D.components):
        x = C.colors[comp.base_arc]
        if R.evaluate(_letters(D, C, mer[k])) != R.gen(x):
            fails.append(f"meridian of component {k} is not e_{Q.labels[x]}")
        g = R.evaluate(_letters(D, C, lon[k]))
        if R.act(x, g) != x:
            fails.append(f"longitude of component {k} moves {Q.labels[x]}")
    return GammaReport(not fails, fails)


@lru_cache(maxsize=16)
def _adjoint(Q: QuandleTable) -> AdjointRep:
    return adjoint_rep(Q)


# ---------------------------------------------------------------------------
# cocycle invariant and the state-sum cycle


def is_quandle_cocycle(Q: QuandleTable, phi: Cocycle) -> bool:
    m = phi.modulus
    if any(phi(x, x) % m for x in range(Q.n)):
        return False
    Cx = RackComplex(Q, "quandle", "pt")
    basis2 = Cx.basis(2)
    for col in Cx.boundary(3).columns():
        if sum(v * phi(*basis2[r]) for r, v in col.items()) % m:
            return False
    return True


def state_sum_chain(D: LinkDiagram, C: Coloring) -> Chain:
    """Σ_τ ε_τ (C(source), C(over))."""
    terms: dict = {}
    for x in D.crossings:
        t = (C.colors[x.source], C.colors[x.over])
        terms[t] = terms.get(t, 0) + x.sign
    return Chain(2, terms)


def cocycle_invariant(D: LinkDiagram, Q: QuandleTable, phi: Cocycle, colorings=None) -> dict:
    """Multiset {value in Z/m: multiplicity} of ⟨φ, state sum⟩ over all colourings."""
    if len(phi.table) != Q.n:
        raise InputError("cocycle table size does not match the quandle")
    if not is_quandle_cocycle(Q, phi):
        raise InputError("table is not a quandle 2-cocycle")
    cols = colorings if colorings is not None else enumerate_colorings(D, Q)
    acc = Counter(phi.evaluate(state_sum_chain(D, C)) for C in cols)
    return dict(sorted(acc.items()))


@dataclass(frozen=True)
class ClassValue:
    """A homology class in the fixed coordinates of its group, plus its order."""

    torsion: tuple
    free: tuple
    order: int | float

    def is_zero(self) -> bool:
        return not any(self.torsion) and not any(self.free)

    def to_json(self):
        return {"torsion": list(self.torsion), "free": list(self.free), "order": self.order
                if self.order != float("inf") else "inf"}


def _class(G: AbGroup, coords) -> ClassValue:
    t, f = coords
    return ClassValue(tuple(t), tuple(f), G.element_order(t, f))


def state_sum_class(D: LinkDiagram, Q: QuandleTable, C) -> ClassValue:
    """Class of the state-sum 2-cycle in H_2^Q(X)."""
    C = _check_coloring(D, Q, C)
    Cx = _quandle_complex(Q)
    h = Cx.homology_data(2)
    return _class(h.group, Cx.cycle_class(state_sum_chain(D, C)))


@lru_cache(maxsize=16)
def _quandle_complex(Q: QuandleTable) -> RackComplex:
    return RackComplex(Q, "quandle", "pt")


# ---------------------------------------------------------------------------
# colouring polynomial


@lru_cache(maxsize=64)
def _stabilizer(Q: QuandleTable, x: int) -> StabilizerData:
    return StabilizerData(Q, x)


def longitude_class(D: LinkDiagram, Q: QuandleTable, C, k: int = 0) -> tuple:
    """(orbit index, class) of Γ_C(l_k) in Stab(x)_ab / <e_x>, x the orbit representative.

    The longitude image lies in Stab(x_k) for x_k = C(base arc); it is moved
    to the representative x of the orbit by conjugating with the Schreier
    word from x to x_k, which changes the class by an inner automorphism of
    Stab(x) only.
    """
    C = _check_coloring(D, Q, C)
    od = orbits(Q)
    comp = D.components[k]
    xk = C.colors[comp.base_arc]
    oi = od.orbit_id[xk]
    rep = od.representatives[oi]
    S = _stabilizer(Q, rep)
    word = _signed(D, C, D.longitude_word(k))
    members = set(od.members(oi))
    eps = sum((1 if l > 0 else -1) for l in word if abs(l) - 1 in members)
    if eps:
        if len(D.components) > 1:
            raise InputError(
                f"longitude of component {k} is not in the kernel of ε for its orbit "
                f"(exponent sum {eps}); refusing to guess a framing"
            )
        raise ConsistencyError("knot longitude has nonzero exponent sum")
    path = S.words[xk]  # rep · e_{path} = xk, positive letters
    conj = tuple(p + 1 for p in path) + tuple(word) + tuple(-(p + 1) for p in reversed(path))
    try:
        rw = S.rewrite(conj)
    except InputError as exc:
        raise ConsistencyError(f"longitude does not fix its base colour: {exc}") from exc
    ab = S.reduced_abelianization
    return oi, _class(ab.group, ab.coordinates(rw))


def _signed(D: LinkDiagram, C: Coloring, word) -> list:
    return [(C.colors[abs(l) - 1] + 1) * (1 if l > 0 else -1) for l in word]


def coloring_polynomial(D: LinkDiagram, Q: QuandleTable, colorings=None) -> dict:
    """Multiset of per-component longitude classes, as {tuple of (orbit, class): count}."""
    cols = colorings if colorings is not None else enumerate_colorings(D, Q)
    acc = Counter()
    for C in cols:
        acc[tuple(longitude_class(D, Q, C, k) for k in range(len(D.components)))] += 1
    return dict(sorted(acc.items(), key=lambda kv: repr(kv[0])))
