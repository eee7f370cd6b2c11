# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: truncated products and the colength row reduction.

Polynomials are dense (N, N) int64 arrays; only entries with i + j < N are
meaningful and all entries are residues in [0, p).
"""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt; t = nt; nt = tmp
        tmp = r - q * nr; r = nr; nr = tmp
    if t < 0:
        t += p
    return t


def mul_trunc(const int64_t[:, ::1] a, const int64_t[:, ::1] b, int N, int64_t p):
    cdef cnp.ndarray[int64_t, ndim=2] out = np.zeros((N, N), dtype=np.int64)
    cdef int64_t[:, ::1] c = out
    cdef uint64_t *acc = <uint64_t *> calloc(N * N, sizeof(uint64_t))
    cdef uint64_t pp = <uint64_t> p
    cdef uint64_t lim = ((<uint64_t> 0xFFFFFFFFFFFFFFFF) - pp) // ((pp - 1) * (pp - 1) + 1)
    cdef int i1, j1, i2, j2, room, k
    cdef int64_t av
    cdef uint64_t cnt = 0
    with nogil:
        for i1 in range(N):
            for j1 in range(N - i1):
                av = a[i1, j1]
                if av == 0:
                    continue
                room = N - i1 - j1
                for i2 in range(room):
                    for j2 in range(room - i2):
                        if b[i2, j2] != 0:
                            acc[(i1 + i2) * N + j1 + j2] += <uint64_t> av * <uint64_t> b[i2, j2]
                cnt += 1
                if cnt >= lim:
                    for k in range(N * N):
                        acc[k] %= pp
                    cnt = 0
        for i1 in range(N):
            for j1 in range(N - i1):
                c[i1, j1] = <int64_t> (acc[i1 * N + j1] % pp)
    free(acc)
    return out


cdef inline int _col(int i, int j) nogil:
    cdef int d = i + j
    return d * (d + 1) // 2 + j


def span_profile(list gens, int N, int64_t p):
    """Rank of span{x^a y^b g mod m^N} and the number of pivots of degree N-1.

    Columns run by ascending degree and each row is pivoted on its lowest
    column, so pivots in the last N columns span exactly the degree N-1
    monomials contained in the span.

    A row x^a y^b g that reduces to zero makes x^(a+1) y^b g and
    x^a y^(b+1) g redundant too (they are x and y times a combination of
    rows), so those shifts are skipped.  Pivot rows are stored from their
    pivot column on.
    """
    cdef int M = N * (N + 1) // 2
    cdef int64_t **piv = <int64_t **> calloc(M, sizeof(int64_t *))
    cdef uint64_t *row = <uint64_t *> malloc(M * sizeof(uint64_t))
    cdef char *dead = NULL
    cdef uint64_t pp = <uint64_t> p
    cdef uint64_t lim = ((<uint64_t> 0xFFFFFFFFFFFFFFFF) - pp) // ((pp - 1) * (pp - 1) + 1)
    cdef int rank = 0, top = 0, c, k, i, j, a, b, s, o, nt, t, gi, ng, zero
    cdef uint64_t f, cnt
    cdef int64_t inv
    cdef int64_t *prow
    # nonzero term lists, one per generator
    terms = []
    orders = []
    for G in gens:
        arr = np.ascontiguousarray(G, dtype=np.int64)
        ii, jj = np.nonzero(arr[:N, :N])
        keep = (ii + jj) < N
        ii = ii[keep].astype(np.int32); jj = jj[keep].astype(np.int32)
        if ii.size == 0:
            continue
        vv = arr[ii, jj].astype(np.int64) % p
        terms.append((np.ascontiguousarray(ii), np.ascontiguousarray(jj), np.ascontiguousarray(vv)))
        orders.append(int((ii + jj).min()))
    ng = len(terms)
    cdef int[::1] vi
    cdef int[::1] vj
    cdef int64_t[::1] vv2
    # dead[gi * N * N + a * N + b]: shift (a, b) of generator gi is redundant
    dead = <char *> calloc(<size_t> max(ng, 1) * N * N, 1)
    try:
        for s in range(N):
            for gi in range(ng):
                o = orders[gi]
                if o + s >= N:
                    continue
                vi, vj, vv2 = terms[gi]
                nt = vi.shape[0]
                for a in range(s + 1):
                    if rank == M:
                        break
                    b = s - a
                    k = gi * N * N + a * N + b
                    if (a > 0 and dead[k - N]) or (b > 0 and dead[k - 1]):
                        dead[k] = 1
                        continue
                    with nogil:
                        memset(row, 0, M * sizeof(uint64_t))
                        c = M
                        for t in range(nt):
                            i = vi[t] + a
                            j = vj[t] + b
                            if i + j < N:
                                k = _col(i, j)
                                row[k] = <uint64_t> vv2[t]
                                if k < c:
                                    c = k
                        cnt = 0
                        zero = 1
                        while c < M:
                            row[c] %= pp
                            if row[c] == 0:
                                c += 1
                                continue
                            prow = piv[c]
                            if prow != NULL:
                                f = pp - row[c]
                                for k in range(1, M - c):
                                    if prow[k] != 0:
                                        row[c + k] += f * <uint64_t> prow[k]
                                row[c] = 0
                                cnt += 1
                                if cnt >= lim:
                                    for k in range(c, M):
                                        row[k] %= pp
                                    cnt = 0
                                c += 1
                            else:
                                inv = _inv(<int64_t> row[c], p)
                                prow = <int64_t *> malloc(<size_t> (M - c) * sizeof(int64_t))
                                for k in range(M - c):
                                    prow[k] = <int64_t> ((row[c + k] % pp) * <uint64_t> inv % pp)
                                piv[c] = prow
                                rank += 1
                                if c >= M - N:
                                    top += 1
                                zero = 0
                                break
                    if zero:
                        dead[gi * N * N + a * N + b] = 1
    finally:
        for k in range(M):
            if piv[k] != NULL:
                free(piv[k])
        free(piv); free(row); free(dead)
    return rank, top
