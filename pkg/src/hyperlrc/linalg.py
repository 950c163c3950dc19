"""Dense linear algebra over F_q on int64 numpy arrays.

Matrices hold element codes.  Elimination is row-vectorised: each pivot step
updates the whole trailing block with one broadcast multiply-add.
"""
from __future__ import annotations

import functools

import numpy as np

from .errors import SingularSubmatrix
from .finite_field import FieldCtx


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    return A


def rref(F: FieldCtx, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = as_matrix(A).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = F.vmul(R[r], F.inv(piv))
        col = R[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            R[mask] = F.vsub(R[mask], F.vmul(col[mask, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: FieldCtx, A) -> int:
    A = as_matrix(A)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: FieldCtx, A, ncols: int | None = None) -> np.ndarray:
    """Basis of {x : A x = 0} as rows; each row has a 1 in its own free column."""
    A = as_matrix(A)
    n = A.shape[1] if ncols is None else ncols
    if A.size == 0 or A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, fc in enumerate(free):
        out[i, fc] = 1
        for r, pc in enumerate(piv):
            if R[r, fc]:
                out[i, pc] = F.neg(int(R[r, fc]))
    return out


class _Packed:
    """Field elements as digit-packed integers.

    Each base-p digit gets its own bit field, so a sum of products is a plain
    integer sum; digits are reduced mod p only every `chunk` terms.
    """

    def __init__(self, F: FieldCtx):
        p, m, q = F.p, F.m, F.q
        self.p, self.m = p, m
        self.bits = 63 // m
        self.mask = (1 << self.bits) - 1
        self.chunk = self.mask // (p - 1)
        codes = np.arange(q, dtype=np.int64)
        self.packed = np.zeros(q, dtype=np.int64)
        for i in range(m):
            self.packed |= ((codes // p ** i) % p) << (self.bits * i)
        q1 = q - 1
        # log of zero is a sentinel past every sum of two real logs
        self.logz = np.where(codes == 0, 2 * q, F.log_np)
        self.table = np.zeros(4 * q + 1, dtype=np.int64)
        self.table[:2 * q1] = self.packed[F.exp_np[:2 * q1]]

    def unpack(self, acc: np.ndarray) -> np.ndarray:
        out = np.zeros(acc.shape, dtype=np.int64)
        for i in range(self.m):
            out += (((acc >> (self.bits * i)) & self.mask) % self.p) * self.p ** i
        return out


@functools.lru_cache(maxsize=None)
def _packed(F: FieldCtx) -> _Packed:
    return _Packed(F)


def matmul(F: FieldCtx, A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    K = A.shape[1]
    if F.m == 1 and K * (F.p - 1) ** 2 < 2 ** 62:
        return (A @ B) % F.p
    pk = _packed(F)
    LA, LB = pk.logz[A], pk.logz[B]
    acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(K):
        acc += pk.table[LA[:, k, None] + LB[k][None, :]]
        if (k + 1) % pk.chunk == 0:
            acc = pk.packed[pk.unpack(acc)]
    return pk.unpack(acc)


def matvec(F: FieldCtx, A, x) -> np.ndarray:
    return matmul(F, A, np.asarray(x, dtype=np.int64).reshape(-1, 1))[:, 0]


def solve(F: FieldCtx, A, b) -> np.ndarray | None:
    """One solution of A x = b, or None if inconsistent."""
    A = as_matrix(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref(F, np.hstack([A, b]))
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = R[r, n]
    return x


def inverse(F: FieldCtx, A) -> np.ndarray:
    A = as_matrix(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise SingularSubmatrix("matrix is singular")
    return R[:, n:]


def is_invertible(F: FieldCtx, A) -> bool:
    A = as_matrix(A)
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def parity_check(F: FieldCtx, G) -> np.ndarray:
    """H with G H^T = 0 and rank H = n - rank G."""
    return nullspace(F, G)


def row_space_basis(F: FieldCtx, A) -> np.ndarray:
    R, piv = rref(F, A)
    return R[: len(piv)]
