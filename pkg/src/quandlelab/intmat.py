"""Exact integer matrices and Smith normal form.

Everything is arbitrary precision (Python ints). Large sparse matrices, such
as the boundary maps of rack complexes, are reduced by a Markowitz-style
elimination on unit pivots followed by a dense Smith reduction of whatever
core is left over.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field

from .errors import InputError, ResourceLimitError

__all__ = [
    "IntMatrix",
    "Reduction",
    "SNFResult",
    "reduce_columns",
    "smith_normal_form",
    "invariant_factors",
    "rank",
]

SPARSE_MIN_ENTRIES = 10_000
SPARSE_MAX_DENSITY = 0.05
DEFAULT_FILL_CAP = 50_000_000


def choose_storage(rows: int, cols: int, nnz: int) -> str:
    size = rows * cols
    if size >= SPARSE_MIN_ENTRIES and nnz < SPARSE_MAX_DENSITY * size:
        return "sparse"
    return "dense"


class IntMatrix:
    """An immutable integer matrix.

    Storage is picked by density: a list of rows when dense, a dict of
    ``(i, j) -> v`` triplets when sparse. Both forms compare equal when they
    hold the same entries.
    """

    __slots__ = ("rows", "cols", "_dense", "_sparse")

    def __init__(self, rows: int, cols: int, dense=None, sparse=None):
        self.rows = rows
        self.cols = cols
        self._dense = dense
        self._sparse = sparse

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, data, storage: str | None = None) -> "IntMatrix":
        data = [list(map(int, r)) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise InputError("ragged matrix")
        nnz = sum(1 for r in data for v in r if v)
        storage = storage or choose_storage(rows, cols, nnz)
        if storage == "dense":
            return cls(rows, cols, dense=data)
        trip = {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v}
        return cls(rows, cols, sparse=trip)

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets, storage: str | None = None) -> "IntMatrix":
        trip: dict = {}
        for i, j, v in triplets:
            if not (0 <= i < rows and 0 <= j < cols):
                raise InputError(f"entry ({i}, {j}) out of range")
            nv = trip.get((i, j), 0) + int(v)
            if nv:
                trip[(i, j)] = nv
            else:
                trip.pop((i, j), None)
        storage = storage or choose_storage(rows, cols, len(trip))
        if storage == "sparse":
            return cls(rows, cols, sparse=trip)
        dense = [[0] * cols for _ in range(rows)]
        for (i, j), v in trip.items():
            dense[i][j] = v
        return cls(rows, cols, dense=dense)

    @classmethod
    def from_columns(cls, rows: int, columns, storage: str | None = None) -> "IntMatrix":
        """Build from a list of ``{row: value}`` dicts, one per column."""
        return cls.from_triplets(
            rows, len(columns), ((i, j, v) for j, c in enumerate(columns) for i, v in c.items()), storage
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_triplets(rows, cols, ())

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_triplets(n, n, ((i, i, 1) for i in range(n)))

    # -- access -------------------------------------------------------------
    @property
    def storage(self) -> str:
        return "dense" if self._dense is not None else "sparse"

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> int:
        i, j = ij
        if self._dense is not None:
            return self._dense[i][j]
        return self._sparse.get((i, j), 0)

    def items(self):
        """Nonzero entries as ``((i, j), v)`` in row-major order."""
        if self._dense is not None:
            for i, r in enumerate(self._dense):
                for j, v in enumerate(r):
                    if v:
                        yield (i, j), v
        else:
            yield from sorted(self._sparse.items())

    @property
    def nnz(self) -> int:
        if self._dense is not None:
            return sum(1 for r in self._dense for v in r if v)
        return len(self._sparse)

    def to_dense(self) -> list[list[int]]:
        if self._dense is not None:
            return [list(r) for r in self._dense]
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._sparse.items():
            out[i][j] = v
        return out

    def to_sparse(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, sparse=dict(self.items()))

    def as_dense(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, dense=self.to_dense())

    def columns(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.items():
            out[j][i] = v
        return out

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.items():
            out[i][j] = v
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_triplets(self.cols, self.rows, ((j, i, v) for (i, j), v in self.items()))

    def is_zero(self) -> bool:
        return self.nnz == 0

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and dict(self.items()) == dict(other.items())

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.items())))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.storage}, nnz={self.nnz})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.row_dicts()
        acc: dict = {}
        for (i, k), a in self.items():
            for j, b in orows[k].items():
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return IntMatrix.from_triplets(self.rows, other.cols, ((i, j, v) for (i, j), v in acc.items() if v))

    def apply(self, vec) -> list[int]:
        """Matrix times a column vector given as a list or ``{index: value}``."""
        if isinstance(vec, dict):
            get = vec.get
        else:
            vec = list(vec)
            if len(vec) != self.cols:
                raise InputError("vector length mismatch")
            get = lambda j, _d=0: vec[j]  # noqa: E731
        out = [0] * self.rows
        for (i, j), v in self.items():
            x = get(j, 0)
            if x:
                out[i] += v * x
        return out

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_dense()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    # -- serialisation --------------------------------------------------------
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "triplets": [[i, j, v] for (i, j), v in self.items()]}

    @classmethod
    def from_json(cls, obj) -> "IntMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls.from_triplets(int(obj["rows"]), int(obj["cols"]), obj["triplets"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad matrix JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# elimination engine


@dataclass
class Reduction:
    """Result of reducing the columns of an m x n matrix A.

    There are unimodular U and V with U A V diagonal up to a permutation:
    ``pivots[k] = (row, col, d)`` says that entry is d and the rest of that
    row and column of U A V vanish. ``invariant_factors`` lists the d's in
    order and forms a divisibility chain. ``free_rows`` are the rows of U A V
    that are identically zero.
    """

    nrows: int
    ncols: int
    pivots: list
    free_rows: list
    U: list | None = None  # U[i] = {j: coeff}, row i of U
    Uinv: list | None = None  # Uinv[i] = {j: coeff}, column i of U^-1
    V: list | None = None  # V[j] = {i: coeff}, column j of V
    stats: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for _, _, d in self.pivots]

    @property
    def torsion(self) -> list[int]:
        return [d for _, _, d in self.pivots if d > 1]

    def _urow_dot(self, i, vec) -> int:
        if self.U is None:
            raise ValueError("reduction was computed without tracking U")
        get = vec.get if isinstance(vec, dict) else (lambda j, _d=0: vec[j])
        return sum(c * get(j, 0) for j, c in self.U[i].items())

    def coordinates(self, vec) -> tuple[list[int], list[int]]:
        """Coordinates of a vector in coker(A) = Z^m / im(A).

        Returns (torsion part reduced modulo each d > 1, free part).
        """
        tors = [self._urow_dot(r, vec) % d for r, _, d in self.pivots if d > 1]
        free = [self._urow_dot(r, vec) for r in self.free_rows]
        return tors, free


def _dense_core(A, on_row_add=None, on_row_neg=None, on_row_swap=None, on_col_add=None, on_col_neg=None, on_col_swap=None):
    """In-place Smith reduction of a dense list-of-rows matrix.

    Returns the diagonal (nonzero entries only). Row and column operations
    are reported to the callbacks so that transforms can be accumulated.
    Pivot choice: smallest |entry|, then smallest fill, then lowest (row, col).
    """
    nr = len(A)
    nc = len(A[0]) if nr else 0
    diag = []

    def row_add(src, dst, c):
        if not c:
            return
        rs, rd = A[src], A[dst]
        for j in range(nc):
            if rs[j]:
                rd[j] += c * rs[j]
        if on_row_add:
            on_row_add(src, dst, c)

    def col_add(src, dst, c):
        if not c:
            return
        for r in A:
            if r[src]:
                r[dst] += c * r[src]
        if on_col_add:
            on_col_add(src, dst, c)

    def row_swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if on_row_swap:
                on_row_swap(i, j)

    def col_swap(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            if on_col_swap:
                on_col_swap(i, j)

    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            r = A[i]
            for j in range(t, nc):
                v = r[j]
                if v:
                    a = abs(v)
                    if best is None or a < best[0]:
                        best = (a, i, j)
        if best is None:
            break
        amin = best[0]
        cands = [(i, j) for i in range(t, nr) for j in range(t, nc) if abs(A[i][j]) == amin]
        if len(cands) > 1:
            rowfill = {i: sum(1 for j in range(t, nc) if A[i][j]) for i in {i for i, _ in cands}}
            colfill = {j: sum(1 for i in range(t, nr) if A[i][j]) for j in {j for _, j in cands}}
            cands.sort(key=lambda ij: (rowfill[ij[0]] + colfill[ij[1]], ij))
        pi, pj = cands[0]
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    row_add(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    col_add(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover of row/column t onto the diagonal
                best = (abs(p), t, t)
                for i in range(t + 1, nr):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, nc):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                row_swap(t, best[1])
                col_swap(t, best[2])
                continue
            bad = None
            for i in range(t + 1, nr):
                r = A[i]
                for j in range(t + 1, nc):
                    if r[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(bad, t, 1)
        if A[t][t] < 0:
            for j in range(nc):
                A[t][j] = -A[t][j]
            if on_row_neg:
                on_row_neg(t)
        diag.append(A[t][t])
    return diag


def reduce_columns(
    M,
    *,
    track_u: bool = False,
    track_uinv: bool = False,
    track_v: bool = False,
    fill_cap: int | None = DEFAULT_FILL_CAP,
) -> Reduction:
    """Reduce M (an IntMatrix, or ``(nrows, list_of_column_dicts)``) to Smith form.

    The elimination is deterministic: unit pivots are taken column by column
    in order of increasing column length (ties by index), choosing the
    shortest row (ties by index). Whatever is left is handed to the dense
    reducer.
    """
    if isinstance(M, IntMatrix):
        nrows, columns = M.rows, M.columns()
    else:
        nrows, columns = M
        columns = [dict(c) for c in columns]
    ncols = len(columns)

    cols: dict = {}
    rows = [set() for _ in range(nrows)]
    nnz = 0
    for j, c in enumerate(columns):
        c = {i: v for i, v in c.items() if v}
        if c:
            cols[j] = c
            for i in c:
                rows[i].add(j)
            nnz += len(c)

    U = [{i: 1} for i in range(nrows)] if track_u else None
    Uinv = [{i: 1} for i in range(nrows)] if track_uinv else None
    V = [{j: 1} for j in range(ncols)] if track_v else None

    def vec_axpy(dst: dict, src: dict, c: int):
        for k, v in src.items():
            nv = dst.get(k, 0) + c * v
            if nv:
                dst[k] = nv
            else:
                del dst[k]

    pivots = []
    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    deferred: set = set()
    peak = nnz

    while heap:
        L, j = heapq.heappop(heap)
        colj = cols.get(j)
        if colj is None or len(colj) != L:
            continue
        bi = None
        bkey = None
        for i, v in colj.items():
            if v == 1 or v == -1:
                key = (len(rows[i]), i)
                if bkey is None or key < bkey:
                    bkey, bi = key, i
        if bi is None:
            deferred.add(j)
            continue
        deferred.discard(j)
        a = colj[bi]
        del cols[j]
        for l in sorted(rows[bi]):
            if l == j:
                continue
            coll = cols[l]
            c = coll[bi] * a
            for k, v in colj.items():
                nv = coll.get(k, 0) - c * v
                if nv:
                    if k not in coll:
                        rows[k].add(l)
                        nnz += 1
                    coll[k] = nv
                else:
                    if k in coll:
                        del coll[k]
                        rows[k].discard(l)
                        nnz -= 1
            if V is not None:
                vec_axpy(V[l], V[j], -c)
            if coll:
                heapq.heappush(heap, (len(coll), l))
                deferred.discard(l)
            else:
                del cols[l]
        for k, v in colj.items():
            rows[k].discard(j)
            nnz -= 1
            if k != bi:
                c = v * a
                if U is not None:
                    vec_axpy(U[k], U[bi], -c)
                if Uinv is not None:
                    vec_axpy(Uinv[bi], Uinv[k], c)
        if a == -1:
            if U is not None:
                U[bi] = {k: -v for k, v in U[bi].items()}
            if Uinv is not None:
                Uinv[bi] = {k: -v for k, v in Uinv[bi].items()}
        pivots.append((bi, j, 1))
        if nnz > peak:
            peak = nnz
            if fill_cap is not None and nnz > fill_cap:
                raise ResourceLimitError(f"sparse elimination fill-in exceeded {fill_cap} entries")

    # dense core
    core_cols = sorted(cols)
    core_rows = sorted({i for j in core_cols for i in cols[j]})
    stats = {"unit_pivots": len(pivots), "core": (len(core_rows), len(core_cols)), "peak_nnz": peak}
    if core_cols:
        if fill_cap is not None and len(core_rows) * len(core_cols) > fill_cap:
            raise ResourceLimitError(f"dense core {len(core_rows)}x{len(core_cols)} exceeds cap")
        rpos = {r: p for p, r in enumerate(core_rows)}
        A = [[0] * len(core_cols) for _ in core_rows]
        for q, j in enumerate(core_cols):
            for i, v in cols[j].items():
                A[rpos[i]][q] = v
        rlab = list(core_rows)
        clab = list(core_cols)

        def on_row_add(src, dst, c):
            # row_dst += c row_src
            if U is not None:
                vec_axpy(U[rlab[dst]], U[rlab[src]], c)
            if Uinv is not None:
                vec_axpy(Uinv[rlab[src]], Uinv[rlab[dst]], -c)

        def on_row_neg(i):
            if U is not None:
                U[rlab[i]] = {k: -v for k, v in U[rlab[i]].items()}
            if Uinv is not None:
                Uinv[rlab[i]] = {k: -v for k, v in Uinv[rlab[i]].items()}

        def on_row_swap(i, j):
            rlab[i], rlab[j] = rlab[j], rlab[i]

        def on_col_add(src, dst, c):
            if V is not None:
                vec_axpy(V[clab[dst]], V[clab[src]], c)

        def on_col_swap(i, j):
            clab[i], clab[j] = clab[j], clab[i]

        diag = _dense_core(
            A,
            on_row_add=on_row_add,
            on_row_neg=on_row_neg,
            on_row_swap=on_row_swap,
            on_col_add=on_col_add,
            on_col_swap=on_col_swap,
        )
        for t, d in enumerate(diag):
            pivots.append((rlab[t], clab[t], d))

    pivot_rows = {r for r, _, _ in pivots}
    free_rows = [i for i in range(nrows) if i not in pivot_rows]
    return Reduction(nrows, ncols, pivots, free_rows, U, Uinv, V, stats)


@dataclass
class SNFResult:
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.shape))]

    def __iter__(self):
        return iter((self.S, self.U, self.V))


def smith_normal_form(M: IntMatrix, fill_cap: int | None = DEFAULT_FILL_CAP) -> SNFResult:
    """Return (S, U, V) with S = U M V diagonal, d_1 | d_2 | ..., U, V unimodular."""
    red = reduce_columns(M, track_u=True, track_v=True, fill_cap=fill_cap)
    m, n = M.shape
    row_order = [r for r, _, _ in red.pivots] + red.free_rows
    pivot_cols = [c for _, c, _ in red.pivots]
    pc = set(pivot_cols)
    col_order = pivot_cols + [j for j in range(n) if j not in pc]
    U = IntMatrix.from_triplets(m, m, ((p, j, v) for p, r in enumerate(row_order) for j, v in red.U[r].items()))
    V = IntMatrix.from_triplets(n, n, ((i, p, v) for p, c in enumerate(col_order) for i, v in red.V[c].items()))
    S = IntMatrix.from_triplets(m, n, ((t, t, d) for t, (_, _, d) in enumerate(red.pivots)))
    return SNFResult(S, U, V)


def invariant_factors(M, fill_cap: int | None = DEFAULT_FILL_CAP) -> list[int]:
    """Nonzero Smith invariants d_1 | d_2 | ... | d_r (ones included)."""
    return reduce_columns(M, fill_cap=fill_cap).invariant_factors


def rank(M, fill_cap: int | None = DEFAULT_FILL_CAP) -> int:
    return reduce_columns(M, fill_cap=fill_cap).rank
