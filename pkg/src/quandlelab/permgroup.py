"""Permutation groups given by generators: Schreier-Sims and brute closure.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``. Products act
on the right, so ``mul(p, q)`` applies p first and then q.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property

from .errors import InputError, ResourceLimitError

__all__ = ["PermGroup", "mul", "inverse", "identity", "perm_order", "cycle_string"]


def identity(n: int) -> tuple:
    return tuple(range(n))


def mul(p, q) -> tuple:
    return tuple(q[i] for i in p)


def inverse(p) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_order(p) -> int:
    from math import lcm

    seen = [False] * len(p)
    o = 1
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            o = lcm(o, k)
    return o


def cycle_string(p, one_based: bool = True) -> str:
    """Cycle notation, e.g. ``(1432)``; the identity prints as ``()``."""
    seen = set()
    out = []
    off = 1 if one_based else 0
    sep = "" if len(p) + off <= 10 else " "
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + off))
            j = p[j]
        out.append("(" + sep.join(cyc) + ")")
    return "".join(out) or "()"


def parse_cycles(text: str, degree: int) -> tuple:
    """Inverse of :func:`cycle_string` for 1-based single-digit or spaced cycles."""
    img = list(range(degree))
    for chunk in text.replace(" ", ",").split(")"):
        chunk = chunk.strip().lstrip("(").strip(",")
        if not chunk:
            continue
        pts = [int(c) - 1 for c in (chunk.split(",") if "," in chunk else chunk)]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if not 0 <= a < degree:
                raise InputError(f"point {a + 1} out of range")
            img[a] = b
    if sorted(img) != list(range(degree)):
        raise InputError(f"{text!r} is not a permutation")
    return tuple(img)


class PermGroup:
    """Finite permutation group with a deterministic stabilizer chain."""

    def __init__(self, degree: int, generators):
        self.degree = degree
        gens = []
        e = identity(degree)
        for g in generators:
            g = tuple(g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise InputError("generator is not a permutation of the right degree")
            if g != e and g not in gens:
                gens.append(g)
        self.generators = gens

    # -- stabilizer chain -------------------------------------------------------
    @staticmethod
    def _orbit_transversal(point, gens):
        trans = {point: None}
        order = [point]
        queue = deque([point])
        n = len(gens[0]) if gens else 0
        trans[point] = identity(n) if n else ()
        while queue:
            x = queue.popleft()
            ux = trans[x]
            for s in gens:
                y = s[x]
                if y not in trans:
                    trans[y] = mul(ux, s)
                    order.append(y)
                    queue.append(y)
        return trans, order

    @cached_property
    def _chain(self):
        # Feed generators one at a time and keep only those not already in
        # the group built so far; right translations of a quandle are
        # typically very redundant.
        chain = self._build_chain([])
        kept: list = []
        for g in self.generators:
            if not self._sift_member(chain, g):
                kept.append(g)
                chain = self._build_chain(kept)
        self._kept = kept
        return chain

    def _sift_member(self, chain, g) -> bool:
        base, _, trans = chain
        for l, b in enumerate(base):
            p = g[b]
            if p not in trans[l]:
                return False
            g = mul(g, inverse(trans[l][p]))
        return g == identity(self.degree)

    def _build_chain(self, generators):
        n = self.degree
        e = identity(n)
        base: list[int] = []

        def first_moved(g):
            return next(i for i in range(n) if g[i] != i)

        for g in generators:
            if all(g[b] == b for b in base):
                base.append(first_moved(g))
        if not base:
            return [], [], []
        # S[l] = strong generators fixing base[:l]
        S = [[g for g in generators if all(g[b] == b for b in base[:l])] for l in range(len(base))]
        trans = []
        orders = []
        for l, b in enumerate(base):
            t, o = self._orbit_transversal(b, S[l])
            trans.append(t)
            orders.append(o)

        def sift(g, start):
            for l in range(start, len(base)):
                p = g[base[l]]
                if p not in trans[l]:
                    return g, l
                g = mul(g, inverse(trans[l][p]))
            return g, len(base)

        i = len(base) - 1
        while i >= 0:
            restart = False
            for p in orders[i]:
                up = trans[i][p]
                for s in S[i]:
                    g = mul(mul(up, s), inverse(trans[i][s[p]]))
                    if g == e:
                        continue
                    h, j = sift(g, i + 1)
                    if h == e:
                        continue
                    if j == len(base):
                        base.append(first_moved(h))
                        S.append([])
                        trans.append(None)
                        orders.append(None)
                    for l in range(i + 1, j + 1):
                        S[l].append(h)
                        trans[l], orders[l] = self._orbit_transversal(base[l], S[l])
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1
        return base, S, trans

    @property
    def base(self) -> list[int]:
        return list(self._chain[0])

    @cached_property
    def order(self) -> int:
        o = 1
        for t in self._chain[2]:
            o *= len(t)
        return o

    def __len__(self):
        return self.order

    def contains(self, g) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        return self._sift_member(self._chain, g)

    __contains__ = contains

    def orbit(self, point: int) -> list[int]:
        if not self.generators:
            return [point]
        return self._orbit_transversal(point, self.generators)[1]

    def closure(self, cap: int = 10_000) -> set:
        """All elements by breadth-first closure; refuses groups larger than ``cap``."""
        e = identity(self.degree)
        seen = {e}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s in self.generators:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise ResourceLimitError(f"group closure exceeds {cap} elements")
                    queue.append(y)
        return seen

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"
