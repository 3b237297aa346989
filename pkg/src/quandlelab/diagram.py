"""Oriented link diagrams given by PD codes.

A crossing (a, b, c, d) lists its four edge labels counterclockwise, starting
from the incoming under-edge, so the under-strand runs a -> c. The over-strand
runs d -> b at a positive crossing and b -> d at a negative one.

Arcs are the maximal over-strands. At every crossing we name the three arcs
as in the usual picture: ``source`` (γ_i), ``over`` (γ_j) and ``target``
(γ_k), with the colouring rule C(target) = C(source) ◁ C(over). At a
positive crossing source/target are the incoming/outgoing under-arcs, at a
negative crossing the other way round.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import InputError
from .presentation import Presentation

__all__ = [
    "Crossing",
    "Component",
    "LinkDiagram",
    "parse_pd",
    "from_braid",
    "add_kink",
    "mirror",
]


@dataclass(frozen=True)
class Crossing:
    edges: tuple
    sign: int
    under_in: int
    over: int
    under_out: int

    @property
    def source(self) -> int:
        return self.under_in if self.sign > 0 else self.under_out

    @property
    def target(self) -> int:
        return self.under_out if self.sign > 0 else self.under_in


@dataclass(frozen=True)
class Component:
    edges: tuple  # in traversal order, starting at the lowest label
    arcs: tuple  # distinct arcs in traversal order, starting at the base arc
    base_arc: int
    undercrossings: tuple  # (crossing index, over arc, sign) from the start of the base arc
    self_writhe: int


class LinkDiagram:
    def __init__(self, pd):
        pd = tuple(tuple(int(e) for e in x) for x in pd)
        if not pd:
            raise InputError("empty PD code")
        if any(len(x) != 4 for x in pd):
            raise InputError("every crossing needs four edge labels")
        self.pd = pd
        occ: dict = {}
        for ci, x in enumerate(pd):
            for p, e in enumerate(x):
                occ.setdefault(e, []).append((ci, p))
        bad = sorted(e for e, o in occ.items() if len(o) != 2)
        if bad:
            raise InputError(f"edge labels {bad} do not appear exactly twice")
        self.edge_labels = tuple(sorted(occ))
        head = self._orient(occ)
        self._head = head  # edge -> (crossing, position) where it ends
        self._tail = {e: next(o for o in occ[e] if o != head[e]) for e in occ}

        parent = {e: e for e in occ}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for a, b, c, d in pd:
            rb, rd = find(b), find(d)
            if rb != rd:
                parent[max(rb, rd)] = min(rb, rd)
        groups: dict = {}
        for e in sorted(occ):
            groups.setdefault(find(e), []).append(e)
        arcs = sorted(groups.values(), key=lambda g: g[0])
        self.arc_edges = tuple(tuple(g) for g in arcs)
        self.edge_arc = {e: i for i, g in enumerate(arcs) for e in g}

        crossings = []
        for ci, (a, b, c, d) in enumerate(pd):
            sign = -1 if head[b] == (ci, 1) else 1
            crossings.append(Crossing((a, b, c, d), sign, self.edge_arc[a], self.edge_arc[b], self.edge_arc[c]))
        self.crossings = tuple(crossings)
        self.components = self._trace_components()
        self.edge_component = {e: k for k, comp in enumerate(self.components) for e in comp.edges}

    def _orient(self, occ) -> dict:
        head: dict = {}
        pd = self.pd

        def settle(e, h):
            if e in head:
                return head[e] == h
            head[e] = h
            return True

        for e, o in occ.items():
            for ci, p in o:
                if p == 0:
                    settle(e, (ci, 0))
                elif p == 2:
                    other = o[0] if o[1] == (ci, 2) else o[1]
                    settle(e, other)
        pending = sorted(occ)
        while True:
            changed = False
            for e in pending:
                if e in head:
                    continue
                o = occ[e]
                for ci, p in o:
                    if p not in (1, 3):
                        continue
                    mate = pd[ci][4 - p]
                    if mate in head:
                        mate_in = head[mate] == (ci, 4 - p)
                        # over-strand: one end enters, the other leaves
                        here = (ci, p)
                        other = o[0] if o[1] == here else o[1]
                        settle(e, other if mate_in else here)
                        changed = True
                        break
            if all(e in head for e in occ):
                break
            if not changed:
                # an over-only component: orient its lowest edge by label order
                e = next(e for e in pending if e not in head)
                ci, p = occ[e][0]
                mate = pd[ci][4 - p]
                forward = mate == e + 1 or (mate != e - 1 and p == 1)
                here = (ci, p)
                other = occ[e][1]
                settle(e, here if forward else other)
        for e, o in occ.items():
            t = o[0] if o[1] == head[e] else o[1]
            if t == head[e] or head[e] not in o:
                raise InputError(f"edge {e} has inconsistent orientation")
        for ci, (a, b, c, d) in enumerate(pd):
            if (head[b] == (ci, 1)) == (head[d] == (ci, 3)):
                raise InputError(f"over-strand at crossing {ci} is not coherently oriented")
            if head[a] != (ci, 0) or head[c] == (ci, 2):
                raise InputError(f"under-strand at crossing {ci} is not coherently oriented")
        return head

    def next_edge(self, e: int) -> int:
        ci, p = self._head[e]
        return self.pd[ci][(p + 2) % 4]

    def _trace_components(self) -> tuple:
        seen = set()
        comps = []
        for e0 in self.edge_labels:
            if e0 in seen:
                continue
            seq = [e0]
            seen.add(e0)
            e = self.next_edge(e0)
            while e != e0:
                if e in seen:
                    raise InputError("edge sequence does not close up")
                seq.append(e)
                seen.add(e)
                e = self.next_edge(e)
            comps.append(seq)
        out = []
        comp_of = {e: k for k, seq in enumerate(comps) for e in seq}
        for k, seq in enumerate(comps):
            base = self.edge_arc[seq[0]]
            # start of the base arc: an edge of it leaving an undercrossing
            starts = [i for i, e in enumerate(seq) if self._tail[e][1] == 2]
            if starts:
                s = next((i for i in starts if self.edge_arc[seq[i]] == base), starts[0])
                walk = seq[s:] + seq[:s]
            else:
                walk = seq
            unders = []
            arcs = []
            for e in walk:
                if not arcs or arcs[-1] != self.edge_arc[e]:
                    if self.edge_arc[e] not in arcs:
                        arcs.append(self.edge_arc[e])
                ci, p = self._head[e]
                if p == 0:
                    x = self.crossings[ci]
                    unders.append((ci, x.over, x.sign))
            sw = sum(
                x.sign
                for x in self.crossings
                if comp_of[x.edges[0]] == k and comp_of[x.edges[1]] == k
            )
            out.append(Component(tuple(seq), tuple(arcs), base, tuple(unders), sw))
        return tuple(out)

    # -- summary data ---------------------------------------------------------------
    @property
    def num_arcs(self) -> int:
        return len(self.arc_edges)

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    @property
    def base_arcs(self) -> tuple:
        return tuple(c.base_arc for c in self.components)

    def arc_component(self, arc: int) -> int:
        return self.edge_component[self.arc_edges[arc][0]]

    def linking_number(self, i: int, j: int) -> int:
        """Sum of signs of crossings where component i passes under component j."""
        return sum(
            x.sign
            for x in self.crossings
            if self.edge_component[x.edges[0]] == i and self.edge_component[x.edges[1]] == j
        )

    def __repr__(self):
        return f"LinkDiagram({self.num_crossings} crossings, {self.num_arcs} arcs, {len(self.components)} components)"

    def __eq__(self, other):
        return isinstance(other, LinkDiagram) and self.pd == other.pd

    def __hash__(self):
        return hash(self.pd)

    def to_json(self) -> dict:
        return {"pd": [list(x) for x in self.pd]}

    # -- Wirtinger data ---------------------------------------------------------
    def wirtinger(self):
        """(presentation, meridians, longitudes) with one generator per arc.

        Relator per crossing: target^-1 over^-1 source over. The longitude of a
        component is the product of over-arc generators (with crossing signs)
        met along its undercrossings from the start of the base arc, followed
        by the base generator to the power minus the self-writhe.
        """
        rels = []
        for x in self.crossings:
            rels.append((-(x.target + 1), -(x.over + 1), x.source + 1, x.over + 1))
        P = Presentation(self.num_arcs, tuple(rels), tuple(f"g{i}" for i in range(self.num_arcs)))
        meridians = tuple((c.base_arc + 1,) for c in self.components)
        longitudes = tuple(self.longitude_word(k) for k in range(len(self.components)))
        return P, meridians, longitudes

    def longitude_word(self, k: int, framed: bool = True) -> tuple:
        comp = self.components[k]
        w = [(j + 1) * s for _, j, s in comp.undercrossings]
        if framed:
            b = comp.base_arc + 1
            w += [-b if comp.self_writhe > 0 else b] * abs(comp.self_writhe)
        return tuple(w)

    def longitude_letters(self, k: int, framed: bool = True) -> list:
        """The longitude as (arc, ±1) pairs."""
        return [(abs(l) - 1, 1 if l > 0 else -1) for l in self.longitude_word(k, framed)]


def parse_pd(text) -> LinkDiagram:
    """Accepts {"pd": [...]}, a bare JSON list, or ``PD[X[1,4,2,5], ...]`` text."""
    if isinstance(text, LinkDiagram):
        return text
    if isinstance(text, (list, tuple)):
        return LinkDiagram(text)
    if isinstance(text, dict):
        if "pd" not in text:
            raise InputError("PD JSON needs a 'pd' key")
        return LinkDiagram(text["pd"])
    s = str(text).strip()
    if "X[" in s:
        groups = re.findall(r"X\[([^\]]*)\]", s)
        try:
            return LinkDiagram([[int(v) for v in g.split(",")] for g in groups])
        except ValueError as exc:
            raise InputError(f"bad PD text: {exc}") from exc
    try:
        obj = json.loads(s)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse PD code: {exc}") from exc
    if isinstance(obj, dict) and "braid" in obj:
        return from_braid(obj["braid"], obj.get("strands"))
    return parse_pd(obj)


def _relabel(pd) -> list:
    """Renumber edges 1, 2, .. along each component, components in order of first label."""
    D = LinkDiagram(pd)
    new = {}
    k = 1
    for comp in D.components:
        for e in comp.edges:
            new[e] = k
            k += 1
    return [[new[e] for e in x] for x in pd]


def from_braid(word, strands: int | None = None) -> LinkDiagram:
    """Closure of a braid word; letter i (resp. -i) is σ_i (resp. σ_i^-1).

    Strands run upward; σ_i carries the left strand over the right one, which
    is a positive crossing.
    """
    word = [int(l) for l in word]
    if not word or any(l == 0 for l in word):
        raise InputError("braid word must be nonempty with nonzero letters")
    n = strands or (max(abs(l) for l in word) + 1)
    if max(abs(l) for l in word) >= n:
        raise InputError("braid letter exceeds the number of strands")
    cur = list(range(1, n + 1))
    nxt = n + 1
    pd = []
    for l in word:
        p = abs(l) - 1
        eL, eR = cur[p], cur[p + 1]
        fL, fR = nxt, nxt + 1
        nxt += 2
        if l > 0:
            pd.append([eR, fR, fL, eL])
        else:
            pd.append([eL, eR, fR, fL])
        cur[p], cur[p + 1] = fL, fR
    if any(cur[i] == i + 1 for i in range(n)):
        raise InputError("a strand of the braid has no crossings")
    close = {cur[i]: i + 1 for i in range(n)}
    pd = [[close.get(e, e) for e in x] for x in pd]
    return LinkDiagram(_relabel(pd))


def add_kink(D: LinkDiagram, edge: int, sign: int = 1, under_first: bool = True) -> LinkDiagram:
    """Reidemeister I: put a curl of the given sign on ``edge`` near its head."""
    if edge not in D._head:
        raise InputError(f"no edge {edge}")
    u = max(D.edge_labels) + 1
    v = u + 1
    ci, p = D._head[edge]
    pd = [list(x) for x in D.pd]
    pd[ci][p] = v
    e = edge
    if under_first:
        kink = [e, v, u, u] if sign > 0 else [e, u, u, v]
    else:
        kink = [u, u, v, e] if sign > 0 else [u, e, v, u]
    pd.append(kink)
    return LinkDiagram(pd)


def mirror(D: LinkDiagram) -> LinkDiagram:
    """Mirror image drawn as the reflection of D in a line, orientation reversed.

    Arcs and colourings are unchanged and every crossing sign flips.
    """
    return LinkDiagram([(c, b, a, d) for a, b, c, d in D.pd])
