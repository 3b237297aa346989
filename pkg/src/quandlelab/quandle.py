"""Finite quandles as operation tables.

Elements are always the indices 0..n-1; ``op[x][y]`` is x ◁ y. Constructors
for Alexander, symplectic, spherical and conjugation quandles attach
human-readable labels.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import InputError, ResourceLimitError
from .fq import FqContext
from .permgroup import PermGroup, cycle_string, inverse, mul, perm_order

__all__ = [
    "QuandleTable",
    "AlexanderData",
    "AxiomCheck",
    "OrbitData",
    "make_alexander",
    "make_alexander_fq",
    "make_symplectic",
    "make_spherical",
    "make_conjugation",
    "make_trivial",
    "check_axioms",
    "orbits",
    "type_of",
    "inner_group",
    "is_isomorphic",
]


@dataclass(frozen=True)
class AlexanderData:
    """Module data of an Alexander quandle: M = ⊕ Z/moduli[i] with automorphism T.

    ``coords[x]`` is the coordinate vector of element x and T acts on column
    vectors.
    """

    moduli: tuple
    T: tuple
    coords: tuple

    def apply_T(self, v) -> tuple:
        return tuple(sum(t * c for t, c in zip(row, v)) % m for row, m in zip(self.T, self.moduli))


class QuandleTable:
    def __init__(self, op, labels=None, alexander: AlexanderData | None = None, name: str | None = None):
        self.op = tuple(tuple(int(v) for v in row) for row in op)
        self.n = n = len(self.op)
        if any(len(r) != n for r in self.op):
            raise InputError("operation table must be square")
        if any(not 0 <= v < n for r in self.op for v in r):
            raise InputError("table entry out of range")
        self.labels = tuple(str(l) for l in labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise InputError("label count does not match size")
        self.alexander = alexander
        self.name = name

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"QuandleTable({self.name or 'unnamed'}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, QuandleTable) and self.op == other.op

    def __hash__(self):
        return hash(self.op)

    def __call__(self, x: int, y: int) -> int:
        return self.op[x][y]

    @cached_property
    def inv_op(self) -> tuple:
        """``inv_op[x][y]`` is the unique z with z ◁ y = x."""
        n = self.n
        inv = [[-1] * n for _ in range(n)]
        for y in range(n):
            for z in range(n):
                x = self.op[z][y]
                if inv[x][y] != -1:
                    raise InputError(f"column {y} of the table is not a permutation")
                inv[x][y] = z
        return tuple(tuple(r) for r in inv)

    @cached_property
    def column_perms(self) -> tuple:
        """Right translations x -> x ◁ y, one permutation per y."""
        return tuple(tuple(self.op[x][y] for x in range(self.n)) for y in range(self.n))

    def act(self, x: int, word) -> int:
        """Right action of a word ``[(y, ±1), ...]`` in the generators e_y."""
        op, inv = self.op, None
        for y, s in word:
            if s > 0:
                x = op[x][y]
            else:
                if inv is None:
                    inv = self.inv_op
                x = inv[x][y]
        return x

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InputError(f"no element labelled {label!r}") from None

    # -- JSON ------------------------------------------------------------------
    def to_json(self) -> dict:
        out = {"size": self.n, "table": [list(r) for r in self.op], "labels": list(self.labels)}
        if self.name:
            out["name"] = self.name
        if self.alexander is not None:
            a = self.alexander
            out["alexander"] = {"moduli": list(a.moduli), "T": [list(r) for r in a.T],
                                "coords": [list(c) for c in a.coords]}
        return out

    @classmethod
    def from_json(cls, obj, validate: bool = True) -> "QuandleTable":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            table = obj["table"]
            size = int(obj.get("size", len(table)))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"bad quandle JSON: {exc}") from exc
        if size != len(table):
            raise InputError("size does not match table")
        alex = None
        if obj.get("alexander") is not None:
            try:
                a = obj["alexander"]
                alex = AlexanderData(tuple(int(m) for m in a["moduli"]),
                                     tuple(tuple(int(v) for v in r) for r in a["T"]),
                                     tuple(tuple(int(v) for v in c) for c in a["coords"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"bad alexander data: {exc}") from exc
        Q = cls(table, obj.get("labels"), alex, name=obj.get("name"))
        if validate:
            res = check_axioms(Q)
            if not res.ok:
                raise InputError(f"not a quandle: axiom {res.axiom} fails at {res.witness}")
        return Q


# ---------------------------------------------------------------------------
# constructors


def make_trivial(n: int) -> QuandleTable:
    return QuandleTable([[x] * n for x in range(n)], name=f"T{n}")


def make_alexander(moduli, T, name: str | None = None) -> QuandleTable:
    """x ◁ y = y + T(x - y) on ⊕ Z/m_i, T given as a square integer matrix (or a scalar)."""
    moduli = tuple(int(m) for m in moduli)
    k = len(moduli)
    if k == 0 or any(m < 2 for m in moduli):
        raise InputError("moduli must be integers >= 2")
    if isinstance(T, int):
        T = [[T if i == j else 0 for j in range(k)] for i in range(k)]
    T = tuple(tuple(int(v) for v in row) for row in T)
    if len(T) != k or any(len(r) != k for r in T):
        raise InputError("T must be a square matrix matching the moduli")
    for i in range(k):
        for j in range(k):
            if (T[i][j] * moduli[j]) % moduli[i]:
                raise InputError(f"T[{i}][{j}] does not give a well-defined module map")
    T = tuple(tuple(v % moduli[i] for v in row) for i, row in enumerate(T))
    elems = list(product(*(range(m) for m in moduli)))
    idx = {v: i for i, v in enumerate(elems)}
    data = AlexanderData(moduli, T, tuple(elems))
    images = {data.apply_T(v) for v in elems}
    if len(images) != len(elems):
        raise InputError("T is not invertible on the module")
    op = []
    for x in elems:
        row = []
        for y in elems:
            d = data.apply_T(tuple((a - b) % m for a, b, m in zip(x, y, moduli)))
            row.append(idx[tuple((a + b) % m for a, b, m in zip(y, d, moduli))])
        op.append(row)
    labels = [",".join(map(str, v)) if k > 1 else str(v[0]) for v in elems]
    return QuandleTable(op, labels, data, name)


def make_alexander_fq(ctx: FqContext, omega: int, name: str | None = None) -> QuandleTable:
    """Alexander quandle on F_q with T = multiplication by omega, i.e. F_q[T]/(T - omega)."""
    if omega in (0, 1):
        raise InputError("omega must differ from 0 and 1")
    q = ctx.q
    one_minus = ctx.sub(1, omega)
    op = [[ctx.add(ctx.mul(omega, x), ctx.mul(one_minus, y)) for y in range(q)] for x in range(q)]
    # module data in the basis 1, g, ..., g^(d-1)
    cols = [ctx.coeffs(ctx.mul(omega, ctx.pow(ctx.generator or 1, j) if ctx.d > 1 else 1)) for j in range(ctx.d)]
    T = tuple(tuple(cols[j][i] for j in range(ctx.d)) for i in range(ctx.d))
    data = AlexanderData((ctx.p,) * ctx.d, T, tuple(ctx.coeffs(x) for x in range(q)))
    return QuandleTable(op, [ctx.label(x) for x in range(q)], data, name)


def _check_odd(q: int) -> FqContext:
    ctx = FqContext.of_order(q)
    if ctx.p == 2:
        raise InputError("characteristic 2 is not allowed here")
    return ctx


def make_symplectic(q: int, n: int, cap: int = 20_000) -> QuandleTable:
    """x ◁ y = <x, y> y + x on F_q^{2n} minus zero, standard symplectic form."""
    if n < 1:
        raise InputError("n must be >= 1")
    ctx = _check_odd(q)
    size = q ** (2 * n) - 1
    if size > cap:
        raise ResourceLimitError(f"symplectic quandle of order {size} exceeds cap {cap}")
    elems = [v for v in product(range(q), repeat=2 * n) if any(v)]
    idx = {v: i for i, v in enumerate(elems)}
    add, mulf, sub = ctx.add, ctx.mul, ctx.sub

    def form(x, y):
        s = 0
        for i in range(n):
            s = add(s, sub(mulf(x[i], y[n + i]), mulf(x[n + i], y[i])))
        return s

    op = []
    for x in elems:
        row = []
        for y in elems:
            c = form(x, y)
            row.append(idx[tuple(add(mulf(c, b), a) for a, b in zip(x, y))])
        op.append(row)
    labels = ["(" + ",".join(ctx.label(c) for c in v) + ")" for v in elems]
    return QuandleTable(op, labels, name=f"Sp_{q}_{n}")


def make_spherical(q: int, n: int, cap: int = 20_000) -> QuandleTable:
    """x ◁ y = 2<x, y> y - x on the unit sphere of F_q^{n+1}."""
    if n < 1:
        raise InputError("n must be >= 1")
    ctx = _check_odd(q)
    if q ** (n + 1) > 50 * cap:
        raise ResourceLimitError("ambient space too large to enumerate")
    add, mulf, sub = ctx.add, ctx.mul, ctx.sub

    def dot(x, y):
        s = 0
        for a, b in zip(x, y):
            s = add(s, mulf(a, b))
        return s

    elems = [v for v in product(range(q), repeat=n + 1) if dot(v, v) == 1]
    if len(elems) > cap:
        raise ResourceLimitError(f"spherical quandle of order {len(elems)} exceeds cap {cap}")
    idx = {v: i for i, v in enumerate(elems)}
    two = ctx.from_int(2)
    op = []
    for x in elems:
        row = []
        for y in elems:
            c = mulf(two, dot(x, y))
            row.append(idx[tuple(sub(mulf(c, b), a) for a, b in zip(x, y))])
        op.append(row)
    labels = ["(" + ",".join(ctx.label(c) for c in v) + ")" for v in elems]
    return QuandleTable(op, labels, name=f"Sphere_{q}_{n}")


def make_conjugation(generators, seed, cap: int = 10_000, name: str | None = None) -> QuandleTable:
    """Conjugacy class of ``seed`` in the group generated, with x ◁ y = y^-1 x y.

    Permutations are 0-based image tuples composed left to right, so
    ``y^-1 x y`` sends i to y[x[y^-1[i]]]. ``seed`` must lie in the group;
    this is checked by sifting.
    """
    gens = [tuple(g) for g in generators]
    seed = tuple(seed)
    deg = len(seed)
    if any(len(g) != deg for g in gens):
        raise InputError("degree mismatch between seed and generators")
    if gens and not PermGroup(deg, gens).contains(seed):
        raise InputError("seed does not lie in the generated group")
    cls = {seed}
    frontier = [seed]
    ginv = [inverse(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g, gi in zip(gens, ginv):
                y = mul(mul(gi, x), g)
                if y not in cls:
                    cls.add(y)
                    if len(cls) > cap:
                        raise ResourceLimitError(f"conjugacy class exceeds {cap} elements")
                    nxt.append(y)
        frontier = nxt
    elems = sorted(cls)
    idx = {p: i for i, p in enumerate(elems)}
    op = [[idx[mul(mul(inverse(y), x), y)] for y in elems] for x in elems]
    return QuandleTable(op, [cycle_string(p) for p in elems], name=name)


# ---------------------------------------------------------------------------
# structure


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def check_axioms(Q: QuandleTable) -> AxiomCheck:
    """Exhaustive check; the witness is the first failure in lexicographic order."""
    op, n = Q.op, Q.n
    for a in range(n):
        if op[a][a] != a:
            return AxiomCheck(False, "i", (a,))
    for b in range(n):
        seen = {}
        for a in range(n):
            v = op[a][b]
            if v in seen:
                return AxiomCheck(False, "ii", (seen[v], a, b))
            seen[v] = a
    for a in range(n):
        ra = op[a]
        for b in range(n):
            rab = op[ra[b]]
            rb = op[b]
            for c in range(n):
                if rab[c] != op[ra[c]][rb[c]]:
                    return AxiomCheck(False, "iii", (a, b, c))
    return AxiomCheck(True)


@dataclass(frozen=True)
class OrbitData:
    orbit_id: tuple
    representatives: tuple

    @property
    def connected(self) -> bool:
        return len(self.representatives) == 1

    @property
    def count(self) -> int:
        return len(self.representatives)

    def members(self, k: int) -> list[int]:
        return [x for x, o in enumerate(self.orbit_id) if o == k]


def orbits(Q: QuandleTable) -> OrbitData:
    n = Q.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(n):
        for y in range(n):
            a, b = find(x), find(Q.op[x][y])
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(x) for x in range(n)})
    rid = {r: k for k, r in enumerate(roots)}
    # union keeps the smallest index as root, so roots are the representatives
    return OrbitData(tuple(rid[find(x)] for x in range(n)), tuple(roots))


def type_of(Q: QuandleTable) -> int:
    t = 1
    for p in Q.column_perms:
        t = math.lcm(t, perm_order(p))
    return t


def inner_group(Q: QuandleTable) -> PermGroup:
    return PermGroup(Q.n, Q.column_perms)


def is_isomorphic(P: QuandleTable, Q: QuandleTable) -> dict | None:
    """Return an isomorphism P -> Q as a dict, or None."""
    if P.n != Q.n:
        return None
    n = P.n
    # greedy generating set of P
    gens: list[int] = []
    span: set = set()

    def close(s):
        s = set(s)
        frontier = list(s)
        while frontier:
            new = []
            for a in frontier:
                for b in list(s):
                    for c in (P.op[a][b], P.op[b][a], P.inv_op[a][b], P.inv_op[b][a]):
                        if c not in s:
                            s.add(c)
                            new.append(c)
            frontier = new
        return s

    for x in range(n):
        if x not in span:
            gens.append(x)
            span = close(span | {x})
    # signature: (type of column perm, fixed points of column) must match
    def sig(T, x):
        return (perm_order(T.column_perms[x]), sum(1 for z in range(n) if T.op[z][x] == z))

    sq = {}
    for y in range(n):
        sq.setdefault(sig(Q, y), []).append(y)

    def extend(assign):
        f = dict(assign)
        frontier = list(f)
        while frontier:
            new = []
            for a in frontier:
                for b in list(f):
                    for pa, pb in ((a, b), (b, a)):
                        for c, d in ((P.op[pa][pb], Q.op[f[pa]][f[pb]]), (P.inv_op[pa][pb], Q.inv_op[f[pa]][f[pb]])):
                            if c in f:
                                if f[c] != d:
                                    return None
                            else:
                                f[c] = d
                                new.append(c)
            frontier = new
        if len(set(f.values())) != len(f):
            return None
        return f

    def search(i, assign):
        if i == len(gens):
            f = extend(assign)
            if f is None or len(f) != n:
                return None
            if all(Q.op[f[a]][f[b]] == f[P.op[a][b]] for a in range(n) for b in range(n)):
                return f
            return None
        for y in sq.get(sig(P, gens[i]), []):
            if y in assign.values():
                continue
            assign[gens[i]] = y
            if extend(assign) is not None:
                r = search(i + 1, assign)
                if r is not None:
                    return r
            del assign[gens[i]]
        return None

    return search(0, {})
