# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled distance-search kernels over small fields (q <= 1024).

Field elements are int32 codes; arithmetic goes through full q x q addition
and multiplication tables supplied by the caller.
"""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef cnp.int32_t i32


cdef struct Ctx:
    const i32* add
    const i32* mul
    const i32* inv
    const i32* neg
    int q
    int m          # rows of H
    int n          # columns of H
    i32* stack     # (maxdepth + 1) * m * n scratch
    int* piv       # (maxdepth + 1) * m pivot flags
    int* cols      # current set
    int* wit       # best set found in this branch
    int best       # best dependency size found in this branch (maxw + 1 if none)
    i32* shared    # global bound hint (racy reads are fine: only used for pruning)


cdef inline bint _in_span(Ctx* c, int depth, int j) noexcept nogil:
    cdef const i32* A = c.stack + <long>depth * c.m * c.n
    cdef const int* pv = c.piv + depth * c.m
    cdef int i
    for i in range(c.m):
        if not pv[i] and A[<long>i * c.n + j] != 0:
            return False
    return True


cdef void _push(Ctx* c, int depth, int j) noexcept nogil:
    """Level depth+1 = level depth with column j pivoted (non-pivot rows only)."""
    cdef const i32* A = c.stack + <long>depth * c.m * c.n
    cdef i32* B = c.stack + <long>(depth + 1) * c.m * c.n
    cdef const int* pv = c.piv + depth * c.m
    cdef int* pw = c.piv + (depth + 1) * c.m
    cdef int i, col, rho = -1, n = c.n, q = c.q
    cdef i32 f, a
    for i in range(c.m):
        pw[i] = pv[i]
        if rho < 0 and not pv[i] and A[<long>i * n + j] != 0:
            rho = i
    pw[rho] = 1
    cdef i32 pinv = c.inv[A[<long>rho * n + j]]
    for i in range(c.m):
        if pw[i]:
            continue
        a = A[<long>i * n + j]
        if a == 0:
            memcpy(B + <long>i * n + j + 1, A + <long>i * n + j + 1, (n - j - 1) * sizeof(i32))
            continue
        f = c.neg[c.mul[a * q + pinv]]
        for col in range(j + 1, n):
            B[<long>i * n + col] = c.add[A[<long>i * n + col] * q + c.mul[f * q + A[<long>rho * n + col]]]


cdef void _dfs(Ctx* c, int depth, int last) noexcept nogil:
    # depth = |S|; S = cols[0..depth-1], all independent
    cdef int j, bound, k
    bound = c.best - 1 if c.best - 1 < c.shared[0] else c.shared[0]
    # a dependency of size depth + 1 is wanted only if it does not exceed the bound
    if depth + 1 > bound:
        return
    for j in range(last + 1, c.n):
        if _in_span(c, depth, j):
            if depth + 1 < c.best:
                c.best = depth + 1
                for k in range(depth):
                    c.wit[k] = c.cols[k]
                c.wit[depth] = j
                if c.best < c.shared[0]:
                    c.shared[0] = c.best
            return  # later sets at this size are lexicographically larger
    if depth + 2 > bound:
        return
    for j in range(last + 1, c.n):
        if c.best - 1 < depth + 2 or c.shared[0] < depth + 2:
            return
        if _in_span(c, depth, j):
            continue
        c.cols[depth] = j
        _push(c, depth, j)
        _dfs(c, depth + 1, j)


def support_branch(H, add, mul, inv, neg, int first, int maxw, shared):
    """Smallest dependent column set of H containing `first` as its smallest member.

    Sizes above min(maxw, shared[0]) are not explored.  Returns
    (size, columns) or (maxw + 1, None).  Releases the GIL.
    """
    cdef const i32[:, ::1] Hv = np.ascontiguousarray(H, dtype=np.int32)
    cdef const i32[:, ::1] addv = np.ascontiguousarray(add, dtype=np.int32)
    cdef const i32[:, ::1] mulv = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const i32[::1] invv = np.ascontiguousarray(inv, dtype=np.int32)
    cdef const i32[::1] negv = np.ascontiguousarray(neg, dtype=np.int32)
    cdef i32[::1] sh = shared
    cdef int m = Hv.shape[0], n = Hv.shape[1]
    cdef int depthmax = maxw + 1
    cdef Ctx c
    c.add = &addv[0, 0]
    c.mul = &mulv[0, 0]
    c.inv = &invv[0]
    c.neg = &negv[0]
    c.q = addv.shape[0]
    c.m = m
    c.n = n
    c.best = maxw + 1
    c.shared = &sh[0]
    c.stack = <i32*>malloc(sizeof(i32) * (depthmax + 1) * m * n)
    c.piv = <int*>malloc(sizeof(int) * (depthmax + 1) * (m if m > 0 else 1))
    c.cols = <int*>malloc(sizeof(int) * (depthmax + 1))
    c.wit = <int*>malloc(sizeof(int) * (depthmax + 1))
    cdef int i
    try:
        with nogil:
            if m > 0:
                memcpy(c.stack, &Hv[0, 0], sizeof(i32) * m * n)
            for i in range(m):
                c.piv[i] = 0
            if _in_span(&c, 0, first):
                c.best = 1
                c.wit[0] = first
            elif maxw >= 2:
                c.cols[0] = first
                _push(&c, 0, first)
                _dfs(&c, 1, first)
        if c.best <= maxw:
            if c.best < sh[0]:
                sh[0] = c.best
            return c.best, [c.wit[i] for i in range(c.best)]
        return maxw + 1, None
    finally:
        free(c.stack)
        free(c.piv)
        free(c.cols)
        free(c.wit)


def gray_scan(start, V, int p, add, int stop_at, shared):
    """Minimum weight over start + (modular p-ary Gray code combinations of V's rows).

    Step s adds row v_p(s) of V (the lowest nonzero base-p digit position of s);
    all p**N combinations are visited.  Returns (min weight, step index).
    Stops early when the weight drops to stop_at or shared[0] <= stop_at.
    """
    cdef const i32[::1] st = np.ascontiguousarray(start, dtype=np.int32)
    cdef const i32[:, ::1] Vv = np.ascontiguousarray(V, dtype=np.int32).reshape(-1, len(start))
    cdef const i32[:, ::1] addv = np.ascontiguousarray(add, dtype=np.int32)
    cdef i32[::1] sh = shared
    cdef int n = st.shape[0], N = Vv.shape[0] if len(V) else 0, q = addv.shape[0]
    cdef i32* cur = <i32*>malloc(sizeof(i32) * (n if n > 0 else 1))
    cdef int* dig = <int*>malloc(sizeof(int) * (N + 1))
    cdef int i, j, w = 0, best, old, new
    cdef long long step = 0, best_step = 0
    cdef const i32* row
    cdef const i32* A = &addv[0, 0]
    try:
        with nogil:
            for i in range(n):
                cur[i] = st[i]
                if cur[i] != 0:
                    w += 1
            for i in range(N + 1):
                dig[i] = 0
            best = w
            while best > stop_at:
                # next counter value: find the digit that changes
                j = 0
                while j < N and dig[j] == p - 1:
                    dig[j] = 0
                    j += 1
                if j == N:
                    break
                dig[j] += 1
                step += 1
                row = &Vv[j, 0]
                for i in range(n):
                    if row[i] != 0:
                        old = cur[i]
                        new = A[old * q + row[i]]
                        cur[i] = new
                        w += (new != 0) - (old != 0)
                if w < best:
                    best = w
                    best_step = step
                    if best < sh[0]:
                        sh[0] = best
                if (step & 0xFFFF) == 0 and sh[0] <= stop_at:
                    break
        return best, best_step
    finally:
        free(cur)
        free(dig)
