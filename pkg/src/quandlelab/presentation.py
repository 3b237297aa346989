"""Finitely presented groups.

Words are tuples of nonzero ints: ``g + 1`` stands for generator g and
``-(g + 1)`` for its inverse (the 1-based signed convention of the JSON
format).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .abgroup import AbGroup
from .errors import InputError
from .intmat import IntMatrix, reduce_columns

__all__ = ["Presentation", "free_reduce", "word_inverse", "abelianize_presentation", "Abelianization"]


def free_reduce(word) -> tuple:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def word_inverse(word) -> tuple:
    return tuple(-a for a in reversed(word))


def exponent_vector(word, ngens: int) -> list[int]:
    v = [0] * ngens
    for a in word:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return v


@dataclass(frozen=True)
class Presentation:
    num_generators: int
    relators: tuple
    names: tuple | None = None

    def __post_init__(self):
        rels = []
        for r in self.relators:
            r = free_reduce(int(a) for a in r)
            if any(a == 0 or abs(a) > self.num_generators for a in r):
                raise InputError(f"relator {r} uses a generator out of range")
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    def to_json(self) -> dict:
        return {"gens": self.num_generators, "relators": [list(r) for r in self.relators]}

    @classmethod
    def from_json(cls, obj) -> "Presentation":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(int(obj["gens"]), tuple(tuple(r) for r in obj["relators"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad presentation JSON: {exc}") from exc

    def relation_matrix(self) -> IntMatrix:
        """Exponent sums, one column per relator (rows are generators)."""
        cols = []
        for r in self.relators:
            c: dict = {}
            for a in r:
                g = abs(a) - 1
                c[g] = c.get(g, 0) + (1 if a > 0 else -1)
            cols.append({g: v for g, v in c.items() if v})
        return IntMatrix.from_columns(self.num_generators, cols)


class Abelianization:
    """G_ab for a presentation, with coordinates for words."""

    def __init__(self, P: Presentation, extra_relations=()):
        self.presentation = P
        cols = P.relation_matrix().columns()
        for w in extra_relations:
            v = exponent_vector(w, P.num_generators) if not isinstance(w, dict) else w
            cols.append({i: x for i, x in (enumerate(v) if not isinstance(v, dict) else v.items()) if x})
        self._red = reduce_columns((P.num_generators, cols), track_u=True)
        self.group = AbGroup(len(self._red.free_rows), tuple(self._red.torsion), self.coordinates)

    def coordinates(self, word) -> tuple[list[int], list[int]]:
        v = exponent_vector(word, self.presentation.num_generators)
        return self._red.coordinates(v)

    def vector_coordinates(self, v) -> tuple[list[int], list[int]]:
        return self._red.coordinates(v)


def abelianize_presentation(P: Presentation) -> AbGroup:
    return Abelianization(P).group
