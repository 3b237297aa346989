# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_fallback.py``.

Same inputs, same outputs; see the fallback module for the algorithms.
"""

from libc.stdlib cimport malloc, realloc, free

from .errors import CosetLimitError


cdef class _Table:
    cdef int *t
    cdef int *p
    cdef int ncols
    cdef int n
    cdef int cap
    cdef int maxc
    cdef int *queue
    cdef int qcap

    def __cinit__(self, int ncols, int max_cosets):
        self.ncols = ncols
        self.cap = 1024
        self.maxc = max_cosets
        self.t = <int *> malloc(self.cap * ncols * sizeof(int))
        self.p = <int *> malloc(self.cap * sizeof(int))
        self.qcap = 1024
        self.queue = <int *> malloc(self.qcap * sizeof(int))
        if self.t == NULL or self.p == NULL or self.queue == NULL:
            raise MemoryError()
        self.n = 1
        for x in range(ncols):
            self.t[x] = -1
        self.p[0] = 0

    def __dealloc__(self):
        free(self.t)
        free(self.p)
        free(self.queue)

    cdef int rep(self, int c):
        cdef int r = c, nxt
        while self.p[r] != r:
            r = self.p[r]
        while self.p[c] != r:
            nxt = self.p[c]
            self.p[c] = r
            c = nxt
        return r

    cdef void push(self, int l, int *qlen) except *:
        if qlen[0] >= self.qcap:
            self.qcap *= 2
            self.queue = <int *> realloc(self.queue, self.qcap * sizeof(int))
            if self.queue == NULL:
                raise MemoryError()
        self.queue[qlen[0]] = l
        qlen[0] += 1

    cdef void merge(self, int k, int l, int *qlen) except *:
        k = self.rep(k)
        l = self.rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.p[l] = k
        self.push(l, qlen)

    cdef void coincidence(self, int a, int b) except *:
        cdef int qlen = 0, i = 0, e, x, f, xi, e1, f1, nc = self.ncols
        cdef int *t
        self.merge(a, b, &qlen)
        while i < qlen:
            e = self.queue[i]
            i += 1
            for x in range(nc):
                t = self.t
                f = t[e * nc + x]
                if f < 0:
                    continue
                xi = x ^ 1
                t[f * nc + xi] = -1
                e1 = self.rep(e)
                f1 = self.rep(f)
                if t[e1 * nc + x] >= 0:
                    self.merge(f1, t[e1 * nc + x], &qlen)
                elif t[f1 * nc + xi] >= 0:
                    self.merge(e1, t[f1 * nc + xi], &qlen)
                else:
                    t[e1 * nc + x] = f1
                    t[f1 * nc + xi] = e1

    cdef void define(self, int c, int x) except *:
        cdef int d, y, nc = self.ncols
        if self.n >= self.maxc:
            raise CosetLimitError(f"coset enumeration exceeded {self.maxc} cosets")
        if self.n >= self.cap:
            self.cap *= 2
            self.t = <int *> realloc(self.t, self.cap * nc * sizeof(int))
            self.p = <int *> realloc(self.p, self.cap * sizeof(int))
            if self.t == NULL or self.p == NULL:
                raise MemoryError()
        d = self.n
        self.n += 1
        for y in range(nc):
            self.t[d * nc + y] = -1
        self.p[d] = d
        self.t[c * nc + x] = d
        self.t[d * nc + (x ^ 1)] = c

    cdef void scan_and_fill(self, int a, int *w, int length) except *:
        cdef int f = a, b = a, i = 0, j = length - 1, nc = self.ncols
        while True:
            while i <= j and self.t[f * nc + w[i]] >= 0:
                f = self.t[f * nc + w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and self.t[b * nc + (w[j] ^ 1)] >= 0:
                b = self.t[b * nc + (w[j] ^ 1)]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.t[f * nc + w[i]] = b
                self.t[b * nc + (w[i] ^ 1)] = f
                return
            self.define(f, w[i])


cdef int *_pack(list words, int **offsets):
    cdef int total = 0, k = 0, i
    for w in words:
        total += len(w)
    cdef int *buf = <int *> malloc((total + 1) * sizeof(int))
    cdef int *off = <int *> malloc((len(words) + 1) * sizeof(int))
    off[0] = 0
    i = 0
    for w in words:
        for a in w:
            buf[k] = a
            k += 1
        i += 1
        off[i] = k
    offsets[0] = off
    return buf


def hlt_enumerate(int ncols, relators, subgroup, int max_cosets):
    cdef _Table T = _Table(ncols, max_cosets)
    cdef list rels = [list(r) for r in relators if len(r)]
    cdef list subs = [list(w) for w in subgroup if len(w)]
    cdef int *roff
    cdef int *soff
    cdef int *rbuf = _pack(rels, &roff)
    cdef int *sbuf = _pack(subs, &soff)
    cdef int nr = len(rels), ns = len(subs), a, ri, x, nc = ncols
    try:
        for ri in range(ns):
            T.scan_and_fill(0, sbuf + soff[ri], soff[ri + 1] - soff[ri])
        a = 0
        while a < T.n:
            if T.p[a] == a:
                for ri in range(nr):
                    if T.p[a] != a:
                        break
                    T.scan_and_fill(a, rbuf + roff[ri], roff[ri + 1] - roff[ri])
                if T.p[a] == a:
                    for x in range(nc):
                        if T.t[a * nc + x] < 0:
                            T.define(a, x)
            a += 1
        table = [[T.t[c * nc + x] for x in range(nc)] for c in range(T.n)]
        p = [T.p[c] for c in range(T.n)]
    finally:
        free(rbuf)
        free(roff)
        free(sbuf)
        free(soff)
    return table, p


def rack_boundary_triplets(op, basis_index, basis, int n, int offset):
    cdef list out = []
    cdef int col = 0, i, sign, pos
    cdef dict acc
    cdef list opl = [list(r) for r in op]
    for t in basis:
        acc = {}
        for i in range(n):
            xi = t[offset + i]
            sign = -1 if i % 2 == 0 else 1
            pos = offset + i
            a = tuple([opl[x][xi] for x in t[:pos]]) + t[pos + 1:]
            b = t[:pos] + t[pos + 1:]
            ra = basis_index.get(a)
            if ra is not None:
                acc[ra] = acc.get(ra, 0) + sign
            rb = basis_index.get(b)
            if rb is not None:
                acc[rb] = acc.get(rb, 0) - sign
        for r, v in acc.items():
            if v:
                out.append((r, col, v))
        col += 1
    return out
