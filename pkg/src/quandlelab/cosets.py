"""Todd-Coxeter coset enumeration (HLT strategy)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import kernels
from .presentation import Presentation

__all__ = ["CosetTable", "coset_enumerate", "DEFAULT_MAX_COSETS"]

DEFAULT_MAX_COSETS = 1_000_000


def _col(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (letter < 0)


@dataclass(frozen=True)
class CosetTable:
    """Completed coset table, cosets numbered in breadth-first order from 0.

    ``table[c][2g]`` is c·g and ``table[c][2g+1]`` is c·g^-1.
    ``schreier_words[c]`` is a word (signed 1-based letters) taking coset 0 to c.
    """

    num_generators: int
    table: tuple
    schreier_words: tuple
    subgroup_generator_words: tuple

    @property
    def num_cosets(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def action(self, g: int, inverse: bool = False) -> tuple:
        c = 2 * g + inverse
        return tuple(row[c] for row in self.table)

    def apply(self, coset: int, word) -> int:
        t = self.table
        for a in word:
            coset = t[coset][_col(a)]
        return coset

    def check_complete(self, relators) -> bool:
        """Every relator traces to the identity at every coset."""
        for c in range(self.num_cosets):
            for r in relators:
                if self.apply(c, r) != c:
                    return False
        return True


def coset_enumerate(P: Presentation, subgroup_words=(), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_words``.

    Raises CosetLimitError when more than ``max_cosets`` cosets get defined,
    which usually means the index is infinite or too large.
    """
    k = P.num_generators
    ncols = 2 * k
    rels = [[_col(a) for a in r] for r in P.relators]
    subs = [[_col(a) for a in w] for w in subgroup_words]
    raw, p = kernels.hlt_enumerate(ncols, rels, subs, max_cosets)
    # renumber the live cosets breadth first
    order = {0: 0}
    words = [()]
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(ncols):
            d = raw[c][x]
            while p[d] != d:
                d = p[d]
            if d not in order:
                order[d] = len(words)
                letter = (x // 2 + 1) * (-1 if x & 1 else 1)
                words.append(words[order[c]] + (letter,))
                queue.append(d)
    table = [None] * len(order)
    for c, i in order.items():
        row = []
        for x in range(ncols):
            d = raw[c][x]
            while p[d] != d:
                d = p[d]
            row.append(order[d])
        table[i] = tuple(row)
    return CosetTable(k, tuple(table), tuple(words), tuple(tuple(w) for w in subgroup_words))
