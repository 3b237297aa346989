"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Both implementations must give identical results; ``kernels.py`` picks one
at import time.
"""

from __future__ import annotations

from .errors import CosetLimitError


def hlt_enumerate(ncols: int, relators, subgroup, max_cosets: int):
    """HLT coset enumeration with immediate coincidence processing.

    ``relators`` and ``subgroup`` are lists of words over column indices,
    where column ``c ^ 1`` is the inverse of column ``c``. Returns the raw
    table (list of rows, dead cosets included) and the forwarding array
    ``p`` (``p[c] == c`` for live cosets).
    """
    table = [[-1] * ncols]
    p = [0]

    def rep(c):
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def merge(k, l, queue):
        k, l = rep(k), rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        p[l] = k
        queue.append(l)

    def coincidence(a, b):
        queue: list = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(ncols):
                f = row[x]
                if f < 0:
                    continue
                xi = x ^ 1
                table[f][xi] = -1
                e1, f1 = rep(e), rep(f)
                if table[e1][x] >= 0:
                    merge(f1, table[e1][x], queue)
                elif table[f1][xi] >= 0:
                    merge(e1, table[f1][xi], queue)
                else:
                    table[e1][x] = f1
                    table[f1][xi] = e1

    def define(c, x):
        if len(table) >= max_cosets:
            raise CosetLimitError(f"coset enumeration exceeded {max_cosets} cosets")
        d = len(table)
        table.append([-1] * ncols)
        p.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def scan_and_fill(a, w):
        f = b = a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    coincidence(f, a)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    for w in subgroup:
        if w:
            scan_and_fill(0, w)
    a = 0
    while a < len(table):
        if p[a] == a:
            for r in relators:
                if p[a] != a:
                    break
                scan_and_fill(a, r)
            if p[a] == a:
                row = table[a]
                for x in range(ncols):
                    if row[x] < 0:
                        define(a, x)
        a += 1
    return table, p


def rack_boundary_triplets(op, basis_index, basis, n: int, offset: int):
    """Triplets (row, col, value) of the rack boundary C_n -> C_{n-1}.

    ``basis`` lists the degree-n tuples (column order) and ``basis_index``
    maps degree-(n-1) tuples to row indices; tuples missing from it are
    degenerate and dropped. ``offset`` is 1 when tuples carry a leading
    coefficient y in Y = X and 0 for Y = pt.
    """
    out = []
    for col, t in enumerate(basis):
        acc: dict = {}
        for i in range(n):
            xi = t[offset + i]
            sign = -1 if i % 2 == 0 else 1  # (-1)^(i+1) for the 1-based position i+1
            pos = offset + i
            a = tuple(op[x][xi] for x in t[:pos]) + t[pos + 1 :]
            b = t[:pos] + t[pos + 1 :]
            ra = basis_index.get(a)
            if ra is not None:
                acc[ra] = acc.get(ra, 0) + sign
            rb = basis_index.get(b)
            if rb is not None:
                acc[rb] = acc.get(rb, 0) - sign
        for r, v in acc.items():
            if v:
                out.append((r, col, v))
    return out
