"""Pure numpy versions of the compiled kernels, same signatures and results."""
from __future__ import annotations

import numpy as np


def mul_trunc(a: np.ndarray, b: np.ndarray, N: int, p: int) -> np.ndarray:
    out = np.zeros((N, N), dtype=np.int64)
    # scatter the sparser operand over shifted copies of the other
    if np.count_nonzero(a) > np.count_nonzero(b):
        a, b = b, a
    for i, j in zip(*np.nonzero(a)):
        if i + j >= N:
            continue
        out[i:, j:] += int(a[i, j]) * b[:N - i, :N - j] % p
        out[i:, j:] %= p
    ii, jj = np.indices((N, N))
    out[ii + jj >= N] = 0
    return out


def _columns(N: int):
    idx = np.full((N, N), -1, dtype=np.int64)
    for d in range(N):
        for j in range(d + 1):
            idx[d - j, j] = d * (d + 1) // 2 + j
    return idx


def span_profile(gens, N: int, p: int):
    M = N * (N + 1) // 2
    col = _columns(N)
    rows = []
    for G in gens:
        G = np.asarray(G, dtype=np.int64)[:N, :N] % p
        ii, jj = np.nonzero(G)
        keep = ii + jj < N
        ii, jj = ii[keep], jj[keep]
        if ii.size == 0:
            continue
        vals = G[ii, jj]
        o = int((ii + jj).min())
        for s in range(N - o):
            for a in range(s + 1):
                si, sj = ii + a, jj + s - a
                ok = si + sj < N
                r = np.zeros(M, dtype=np.int64)
                r[col[si[ok], sj[ok]]] = vals[ok]
                rows.append(r)
    if not rows:
        return 0, 0
    A = np.array(rows, dtype=np.int64)
    rank = top = 0
    active = np.ones(A.shape[0], dtype=bool)
    for c in range(M):
        cand = np.nonzero(active & (A[:, c] != 0))[0]
        if cand.size == 0:
            continue
        r = cand[0]
        A[r, c:] = A[r, c:] * pow(int(A[r, c]), -1, p) % p
        active[r] = False
        others = cand[1:]
        if others.size:
            A[others, c:] = (A[others, c:] - A[others, c:c + 1] * A[r, c:]) % p
        rank += 1
        if c >= M - N:
            top += 1
    return rank, top
