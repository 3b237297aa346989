"""The associated group As(X) of a finite quandle.

As(X) = < e_x | e_{x◁y} = e_y^-1 e_x e_y > and ε: As(X) -> Z sends every
e_x to 1. For connected X the kernel of ε is finite. We enumerate the cosets
of H = <e_a> (a = 0, the smallest element); every coset Hg contains exactly
one element of Ker ε, namely e_a^-ε(g) g, so cosets and kernel elements are
the same thing. An element g of As(X) is then stored as the pair
(κ, n) with g = κ e_a^n, κ in Ker ε and n = ε(g). The pair determines g,
which is what makes equality decidable.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from math import gcd

from .abgroup import AbGroup
from .cosets import DEFAULT_MAX_COSETS, coset_enumerate
from .errors import ConsistencyError, InputError
from .intmat import IntMatrix, reduce_columns
from .presentation import Abelianization, Presentation, free_reduce
from .quandle import QuandleTable, orbits, type_of

__all__ = [
    "as_presentation",
    "KerEpsGroup",
    "AdjointRep",
    "ker_eps_group",
    "adjoint_rep",
    "extended_quandle",
    "StabilizerData",
    "stabilizer_presentation",
    "h2q_eisermann",
    "clauwens_model",
    "check_daiji",
]


def as_presentation(Q: QuandleTable) -> Presentation:
    """Relators e_{x◁y}^-1 e_y^-1 e_x e_y for all ordered pairs, trivial ones dropped."""
    rels = []
    for x in range(Q.n):
        for y in range(Q.n):
            r = free_reduce((-(Q.op[x][y] + 1), -(y + 1), x + 1, y + 1))
            if r:
                rels.append(r)
    return Presentation(Q.n, tuple(rels), tuple(Q.labels))


class KerEpsGroup:
    """Ker ε realised on the cosets of <e_a>; element 0 is the identity."""

    def __init__(self, Q: QuandleTable, max_cosets: int = DEFAULT_MAX_COSETS):
        od = orbits(Q)
        if not od.connected:
            raise InputError("Ker ε is only built for connected quandles")
        self.quandle = Q
        self.base = a = od.representatives[0]
        self.presentation = P = as_presentation(Q)
        self.cosets = ct = coset_enumerate(P, [(a + 1,)], max_cosets)
        self.size = ct.num_cosets
        self.table = ct.table
        # gen_perm[x]: right multiplication by e_x on cosets
        self.gen_perm = tuple(ct.action(x) for x in range(Q.n))
        self.gen_perm_inv = tuple(ct.action(x, inverse=True) for x in range(Q.n))
        self.eps_word = tuple(sum(1 if l > 0 else -1 for l in w) for w in ct.schreier_words)
        # conjugation κ -> e_a κ e_a^-1 is right multiplication of the coset by e_a^-1
        self.conj = self.gen_perm_inv[a]
        self._pcache: dict = {}

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"KerEpsGroup(order={self.size})"

    # -- elements as permutations of cosets ---------------------------------------
    def _apply_letters(self, c: int, word) -> int:
        t = self.table
        for l in word:
            c = t[c][2 * (l - 1)] if l > 0 else t[c][2 * (-l - 1) + 1]
        return c

    def right_perm(self, k: int) -> tuple:
        """Right multiplication by κ_k as a permutation of the kernel."""
        P = self._pcache.get(k)
        if P is None:
            w = self.cosets.schreier_words[k]
            m = self.eps_word[k]
            a = self.base + 1
            pre = (-a,) * m if m > 0 else (a,) * (-m)
            # κ_k = e_a^-m w
            P = tuple(self._apply_letters(c, pre + w) for c in range(self.size))
            self._pcache[k] = P
        return P

    def mul(self, k1: int, k2: int) -> int:
        return self.right_perm(k2)[k1]

    def inv(self, k: int) -> int:
        return self.right_perm(k).index(0)

    def conj_power(self, k: int, n: int) -> int:
        """e_a^n κ e_a^-n."""
        perm = self.conj if n >= 0 else self.gen_perm[self.base]
        for _ in range(abs(n) % self.conj_order if self.conj_order else 0):
            k = perm[k]
        return k

    @cached_property
    def conj_order(self) -> int:
        from .permgroup import perm_order

        return perm_order(self.conj)

    def element_order(self, k: int) -> int:
        o, x = 1, k
        while x != 0:
            x = self.mul(x, k)
            o += 1
        return o

    @cached_property
    def multiplication_table(self) -> tuple:
        K = self.size
        cols = [self.right_perm(k) for k in range(K)]
        return tuple(tuple(cols[k2][k1] for k2 in range(K)) for k1 in range(K))

    def is_abelian(self) -> bool:
        mt = self.multiplication_table
        return all(mt[i][j] == mt[j][i] for i in range(self.size) for j in range(i))

    def exponent(self) -> int:
        from math import lcm

        e = 1
        for k in range(self.size):
            e = lcm(e, self.element_order(k))
        return e

    def check_regular(self) -> bool:
        """The right action of the kernel on itself is free."""
        for k in range(1, self.size):
            P = self.right_perm(k)
            if any(P[c] == c for c in range(self.size)):
                return False
        return True

    @cached_property
    def orbit_map(self) -> tuple:
        """p(κ) = a·κ in X."""
        Q = self.quandle
        out = []
        for w in self.cosets.schreier_words:
            out.append(Q.act(self.base, [(abs(l) - 1, 1 if l > 0 else -1) for l in w]))
        return tuple(out)


def ker_eps_group(Q: QuandleTable, max_cosets: int = DEFAULT_MAX_COSETS) -> KerEpsGroup:
    return KerEpsGroup(Q, max_cosets)


class AdjointRep:
    """Faithful model of As(X): elements are pairs (κ, n) meaning κ e_a^n."""

    def __init__(self, K: KerEpsGroup):
        self.K = K
        self.quandle = K.quandle
        t0 = K.table[0]
        gp = K.gen_perm_inv[K.base]
        # e_x = (e_x e_a^-1) e_a and e_x e_a^-1 lies in coset (0·e_x)·e_a^-1
        self._gens = tuple((gp[t0[2 * x]], 1) for x in range(self.quandle.n))

    @property
    def identity(self):
        return (0, 0)

    def gen(self, x: int, power: int = 1):
        g = self._gens[x]
        return self.power(g, power)

    def mul(self, g, h):
        k1, n1 = g
        k2, n2 = h
        return (self.K.mul(k1, self.K.conj_power(k2, n1)), n1 + n2)

    def inv(self, g):
        k, n = g
        return (self.K.conj_power(self.K.inv(k), -n), -n)

    def power(self, g, m: int):
        if m < 0:
            g, m = self.inv(g), -m
        r = (0, 0)
        while m:
            if m & 1:
                r = self.mul(r, g)
            g = self.mul(g, g)
            m >>= 1
        return r

    def eps(self, g) -> int:
        return g[1]

    def evaluate(self, word):
        """Word in signed 1-based letters, or ``[(x, ±1), ...]`` pairs."""
        r = (0, 0)
        gi = None
        for l in word:
            if isinstance(l, tuple):
                x, s = l
            else:
                x, s = abs(l) - 1, (1 if l > 0 else -1)
            if s > 0:
                r = self.mul(r, self._gens[x])
            else:
                if gi is None:
                    gi = [self.inv(g) for g in self._gens]
                r = self.mul(r, gi[x])
        return r

    def conjugate(self, g, h):
        """h^-1 g h."""
        return self.mul(self.mul(self.inv(h), g), h)

    def perm(self, g) -> tuple:
        """The permutation of the kernel cosets induced by right multiplication by g."""
        k, n = g
        P = self.K.right_perm(k)
        step = self.K.gen_perm[self.K.base] if n >= 0 else self.K.gen_perm_inv[self.K.base]
        out = list(P)
        for _ in range(abs(n)):
            out = [step[c] for c in out]
        return tuple(out)

    def act(self, x: int, g) -> int:
        """Right action of As(X) on X."""
        Q = self.quandle
        k, n = g
        w = self.K.cosets.schreier_words[k]
        m = self.K.eps_word[k]
        a = self.K.base
        letters = [(a, -1)] * m if m > 0 else [(a, 1)] * (-m)
        letters += [(abs(l) - 1, 1 if l > 0 else -1) for l in w]
        letters += [(a, 1 if n > 0 else -1)] * abs(n)
        return Q.act(x, letters)


def adjoint_rep(Q: QuandleTable, max_cosets: int = DEFAULT_MAX_COSETS) -> AdjointRep:
    return AdjointRep(KerEpsGroup(Q, max_cosets))


def check_daiji(R: AdjointRep, t: int | None = None) -> bool:
    """e_x^t = e_y^t for all x, y, and e_x^t is central."""
    Q = R.quandle
    t = t or type_of(Q)
    powers = [R.gen(x, t) for x in range(Q.n)]
    if any(p != powers[0] for p in powers):
        return False
    z = powers[0]
    return all(R.conjugate(R.gen(y), z) == R.gen(y) for y in range(Q.n))


def extended_quandle(Q: QuandleTable, max_cosets: int = DEFAULT_MAX_COSETS, K: KerEpsGroup | None = None):
    """The extended quandle X~ on Ker ε and its covering map p: X~ -> X.

    κ ◁ λ = e_a^-1 κ λ^-1 e_a λ = e_a^-1 κ e_{p(λ)}, so the row of κ is read off
    the coset table column of e_{p(λ)}.
    """
    K = K or KerEpsGroup(Q, max_cosets)
    p = K.orbit_map
    op = [[K.table[k][2 * p[l]] for l in range(K.size)] for k in range(K.size)]
    Xt = QuandleTable(op, [f"k{k}" for k in range(K.size)], name=f"{Q.name or 'X'}~")
    return Xt, p


# ---------------------------------------------------------------------------
# stabilizers and Eisermann's description of H2Q


class StabilizerData:
    """Reidemeister-Schreier presentation of Stab(x0) in As(X).

    Cosets of Stab(x0) are the points of the orbit of x0. The Schreier
    generator s_{c,y} = w_c e_y w_{c◁y}^-1 has index ``pos[c] * n + y``;
    those lying on the spanning tree are trivial and appear as one-letter
    relators.
    """

    def __init__(self, Q: QuandleTable, x0: int):
        self.quandle = Q
        self.x0 = x0
        n = Q.n
        pos = {x0: 0}
        orbit = [x0]
        words = {x0: ()}
        tree = set()
        queue = deque([x0])
        while queue:
            c = queue.popleft()
            for y in range(n):
                d = Q.op[c][y]
                if d not in pos:
                    pos[d] = len(orbit)
                    orbit.append(d)
                    words[d] = words[c] + (y,)
                    tree.add((c, y))
                    queue.append(d)
        self.orbit = orbit
        self.pos = pos
        self.words = words
        self.tree = tree
        rels = []
        base_rels = as_presentation(Q).relators
        for c in orbit:
            for r in base_rels:
                rels.append(self._rewrite_from(c, r)[0])
        for c, y in sorted(tree):
            rels.append((self.gen_index(c, y) + 1,))
        self.presentation = Presentation(len(orbit) * n, tuple(rels))

    def gen_index(self, c: int, y: int) -> int:
        return self.pos[c] * self.quandle.n + y

    def _rewrite_from(self, c: int, word):
        Q = self.quandle
        out = []
        for l in word:
            y = abs(l) - 1
            if l > 0:
                out.append(self.gen_index(c, y) + 1)
                c = Q.op[c][y]
            else:
                c = Q.inv_op[c][y]
                out.append(-(self.gen_index(c, y) + 1))
        return tuple(out), c

    def rewrite(self, word, start: int | None = None) -> tuple:
        """Rewrite a word of As(X) fixing x0 into the Schreier generators."""
        x0 = self.x0
        if start is None:
            start = x0
        w, end = self._rewrite_from(start, word)
        if end != start:
            raise InputError("word does not stabilize the base point")
        return w

    @cached_property
    def abelianization(self) -> Abelianization:
        return Abelianization(self.presentation)

    @cached_property
    def reduced_abelianization(self) -> Abelianization:
        """Stab(x0)_ab / <[e_{x0}]>."""
        s = self.gen_index(self.x0, self.x0) + 1
        return Abelianization(self.presentation, extra_relations=[(s,)])


def stabilizer_presentation(Q: QuandleTable, x0: int) -> StabilizerData:
    return StabilizerData(Q, x0)


def h2q_eisermann(Q: QuandleTable) -> AbGroup:
    """⊕ over orbits of Stab(x_i)_ab / <[e_{x_i}]>."""
    total = AbGroup.trivial()
    for x in orbits(Q).representatives:
        total = total + StabilizerData(Q, x).reduced_abelianization.group
    return total


def clauwens_model(Q: QuandleTable):
    """Coker(μ) for μ(x⊗y) = x⊗y - Ty⊗x on X⊗X, and the predicted |Ker ε| = |X|·|Coker μ|.

    X = ⊕ Z/m_i, so X⊗X = ⊕ Z/gcd(m_i, m_j) on the basis e_i⊗e_j.
    """
    data = Q.alexander
    if data is None:
        raise InputError("Clauwens' model needs an Alexander quandle")
    if not orbits(Q).connected:
        raise InputError("Clauwens' model needs a connected quandle")
    m, T = data.moduli, data.T
    k = len(m)
    idx = lambda i, j: i * k + j  # noqa: E731
    cols = []
    for i in range(k):
        for j in range(k):
            cols.append({idx(i, j): gcd(m[i], m[j])})
    for a in range(k):
        for b in range(k):
            c: dict = {idx(a, b): 1}
            for i in range(k):
                if T[i][b]:
                    c[idx(i, a)] = c.get(idx(i, a), 0) - T[i][b]
            cols.append({r: v for r, v in c.items() if v})
    red = reduce_columns(IntMatrix.from_columns(k * k, cols))
    G = AbGroup(len(red.free_rows), tuple(red.torsion))
    if G.free_rank:
        raise ConsistencyError("Coker μ of a finite module must be finite")
    return G, Q.n * G.order
