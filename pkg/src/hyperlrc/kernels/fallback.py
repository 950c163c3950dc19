"""Pure-Python versions of the compiled kernels (same signatures, same results)."""
from __future__ import annotations

import numpy as np


def support_branch(H, add, mul, inv, neg, first: int, maxw: int, shared):
    H = np.asarray(H, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    inv = np.asarray(inv, dtype=np.int64)
    neg = np.asarray(neg, dtype=np.int64)
    m, n = H.shape
    best = [maxw + 1, None]

    def in_span(A, piv, j):
        return not np.any(A[~piv, j])

    def push(A, piv, j):
        free_rows = np.nonzero(~piv & (A[:, j] != 0))[0]
        rho = int(free_rows[0])
        piv2 = piv.copy()
        piv2[rho] = True
        B = A.copy()
        f = neg[mul[A[:, j], inv[A[rho, j]]]]
        upd = ~piv2 & (A[:, j] != 0)
        if upd.any():
            B[upd, j + 1:] = add[A[upd, j + 1:], mul[f[upd][:, None], A[rho, j + 1:][None, :]]]
        return B, piv2

    def dfs(A, piv, cols, last):
        depth = len(cols)
        bound = min(best[0] - 1, int(shared[0]))
        if depth + 1 > bound:
            return
        for j in range(last + 1, n):
            if in_span(A, piv, j):
                if depth + 1 < best[0]:
                    best[0], best[1] = depth + 1, cols + [j]
                    if best[0] < shared[0]:
                        shared[0] = best[0]
                return
        if depth + 2 > bound:
            return
        for j in range(last + 1, n):
            if best[0] - 1 < depth + 2 or shared[0] < depth + 2:
                return
            if in_span(A, piv, j):
                continue
            B, piv2 = push(A, piv, j)
            dfs(B, piv2, cols + [j], j)

    piv0 = np.zeros(m, dtype=bool)
    if in_span(H, piv0, first):
        best[:] = [1, [first]]
    elif maxw >= 2:
        B, piv1 = push(H, piv0, first)
        dfs(B, piv1, [first], first)
    if best[0] <= maxw:
        if best[0] < shared[0]:
            shared[0] = best[0]
        return best[0], best[1]
    return maxw + 1, None


def gray_scan(start, V, p: int, add, stop_at: int, shared):
    start = np.asarray(start, dtype=np.int64)
    n = len(start)
    V = np.asarray(V, dtype=np.int64).reshape(-1, n)
    add = np.asarray(add, dtype=np.int64)
    N = V.shape[0]
    cur = start.copy()
    w = int(np.count_nonzero(cur))
    best, best_step = w, 0
    dig = [0] * N
    step = 0
    while best > stop_at:
        j = 0
        while j < N and dig[j] == p - 1:
            dig[j] = 0
            j += 1
        if j == N:
            break
        dig[j] += 1
        step += 1
        cur = add[cur, V[j]]
        w = int(np.count_nonzero(cur))
        if w < best:
            best, best_step = w, step
            if best < shared[0]:
                shared[0] = best
        if step % 4096 == 0 and shared[0] <= stop_at:
            break
    return best, best_step
