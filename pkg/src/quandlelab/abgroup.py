"""Finitely generated abelian groups in invariant-factor form, and homology."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Callable

from .errors import CompositionError, InputError
from .intmat import IntMatrix, reduce_columns

__all__ = ["AbGroup", "homology_at", "cokernel", "Homology"]


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _normalize(orders) -> tuple[int, tuple[int, ...]]:
    """Invariant factors of a direct sum of cyclic groups Z/n (n = 0 means Z)."""
    free = 0
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        n = abs(int(n))
        if n == 0:
            free += 1
            continue
        for p, e in _factor(n).items():
            by_prime.setdefault(p, []).append(p**e)
    k = max((len(v) for v in by_prime.values()), default=0)
    inv = [1] * k
    for p, powers in by_prime.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            inv[k - 1 - i] *= q
    return free, tuple(inv)


@dataclass(frozen=True, eq=False)
class AbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2.

    ``coordinate_map`` (when present) sends an element of the ambient
    lattice to ``(torsion coordinates, free coordinates)``.
    """

    free_rank: int = 0
    torsion: tuple = ()
    coordinate_map: Callable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0 or any(d < 2 for d in tors):
            raise InputError("torsion factors must be >= 2 and rank >= 0")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise InputError(f"torsion {tors} is not a divisibility chain")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_orders(cls, orders, free_rank: int = 0, coordinate_map=None) -> "AbGroup":
        """Direct sum of cyclic groups of the given orders (0 stands for Z, 1 is dropped)."""
        free, tors = _normalize(orders)
        return cls(free + free_rank, tuple(d for d in tors if d > 1), coordinate_map)

    @classmethod
    def trivial(cls) -> "AbGroup":
        return cls(0, ())

    @classmethod
    def cyclic(cls, n: int) -> "AbGroup":
        return cls.from_orders([n])

    # -- comparisons and arithmetic -------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, AbGroup):
            return NotImplemented
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __add__(self, other: "AbGroup") -> "AbGroup":
        return AbGroup.from_orders(self.torsion + other.torsion, self.free_rank + other.free_rank)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | float:
        return math.prod(self.torsion) if self.free_rank == 0 else math.inf

    def primary_part(self, p: int) -> "AbGroup":
        out = []
        for d in self.torsion:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        return AbGroup.from_orders(out)

    def odd_part(self) -> "AbGroup":
        """Torsion subgroup of odd order."""
        out = []
        for d in self.torsion:
            while d % 2 == 0:
                d //= 2
            out.append(d)
        return AbGroup.from_orders(out)

    def element_order(self, torsion_coords, free_coords=()) -> int | float:
        if any(free_coords):
            return math.inf
        o = 1
        for c, d in zip(torsion_coords, self.torsion):
            o = math.lcm(o, d // math.gcd(c % d, d))
        return o

    # -- text and JSON --------------------------------------------------------
    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"AbGroup({self})"

    @classmethod
    def parse(cls, text: str) -> "AbGroup":
        text = text.strip()
        if text in ("0", ""):
            return cls.trivial()
        free, orders = 0, []
        for term in text.split("+"):
            term = term.strip().replace(" ", "")
            m = re.fullmatch(r"Z(?:\^(\d+))?", term)
            if m:
                free += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z/(\d+)", term)
            if not m:
                raise InputError(f"cannot parse group term {term!r}")
            orders.append(int(m.group(1)))
        return cls.from_orders(orders, free)

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj) -> "AbGroup":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls.from_orders(obj["torsion"], int(obj["rank"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad group JSON: {exc}") from exc


def cokernel(M: IntMatrix, coordinates: bool = False) -> AbGroup:
    """Z^rows / (column span of M)."""
    red = reduce_columns(M, track_u=coordinates)
    cmap = red.coordinates if coordinates else None
    return AbGroup(len(red.free_rows), tuple(red.torsion), cmap)


class Homology:
    """ker(d_out) / im(d_in) together with the data to name classes.

    ``group`` is the AbGroup. ``coordinates(z)`` returns the class of a cycle
    z as (torsion coordinates, free coordinates); ``representative`` goes
    the other way.
    """

    def __init__(self, d_in: IntMatrix, d_out: IntMatrix, check: bool = True, coordinates: bool = True):
        n = d_in.rows
        if d_out.cols != n:
            raise InputError(f"boundary shapes do not compose: {d_out.shape} after {d_in.shape}")
        if check and not (d_out @ d_in).is_zero():
            raise CompositionError("d_out * d_in is nonzero")
        self.n = n
        self.red = red = reduce_columns(d_in, track_u=coordinates, track_uinv=coordinates)
        free_rows = red.free_rows
        # cycles in U-coordinates: only the free rows are constrained
        Uinv = red.Uinv
        self.kred = None
        if d_out.cols and free_rows:
            if coordinates:
                # C = (d_out * Uinv restricted to the free rows)^T, one column per row of d_out
                dcols = d_out.columns()
                ccols = [dict() for _ in range(d_out.rows)]
                for idx, f in enumerate(free_rows):
                    for k, u in Uinv[f].items():
                        for i, v in dcols[k].items():
                            nv = ccols[i].get(idx, 0) + u * v
                            if nv:
                                ccols[i][idx] = nv
                            else:
                                ccols[i].pop(idx, None)
                self.kred = reduce_columns((len(free_rows), ccols), track_u=True, track_uinv=True)
                free_rank = len(self.kred.free_rows)
            else:
                free_rank = n - red.rank - reduce_columns(d_out).rank
        else:
            free_rank = len(free_rows)
        self.free_rows = free_rows
        self.coordinate_enabled = coordinates
        self.group = AbGroup(free_rank, tuple(red.torsion), self.coordinates if coordinates else None)

    def coordinates(self, z) -> tuple[list[int], list[int]]:
        red = self.red
        tors = [red._urow_dot(r, z) % d for r, _, d in red.pivots if d > 1]
        if not self.free_rows:
            return tors, []
        w = [red._urow_dot(r, z) for r in self.free_rows]
        if self.kred is None:
            return tors, w
        # y = U_C^{-T} w, keep the kernel positions
        free = [sum(c * w[k] for k, c in self.kred.Uinv[i].items()) for i in self.kred.free_rows]
        return tors, free

    def representative(self, torsion_coords, free_coords=()) -> dict:
        """A cycle (as ``{index: coeff}``) with the given class coordinates."""
        red = self.red
        z: dict = {}

        def add(col: dict, c: int):
            for k, v in col.items():
                nv = z.get(k, 0) + c * v
                if nv:
                    z[k] = nv
                else:
                    z.pop(k, None)

        tors_rows = [r for r, _, d in red.pivots if d > 1]
        for r, c in zip(tors_rows, torsion_coords):
            if c:
                add(red.Uinv[r], c)
        if free_coords and any(free_coords):
            w = [0] * len(self.free_rows)
            if self.kred is None:
                w = list(free_coords)
            else:
                for i, c in zip(self.kred.free_rows, free_coords):
                    for k, v in self.kred.U[i].items():
                        w[k] += c * v
            for r, c in zip(self.free_rows, w):
                if c:
                    add(red.Uinv[r], c)
        return z


def homology_at(d_in: IntMatrix, d_out: IntMatrix, coordinates: bool = True, check: bool = True) -> AbGroup:
    """ker(d_out)/im(d_in) as an AbGroup carrying a coordinate map for cycles."""
    return Homology(d_in, d_out, check=check, coordinates=coordinates).group
