import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlrc import linalg as L

from conftest import field

FIELDS = [(3, 1), (5, 2), (3, 4), (13, 2), (5, 6)]


def naive_matmul(F, A, B):
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            acc = 0
            for k in range(A.shape[1]):
                acc = F.add(acc, F.mul(int(A[i, k]), int(B[k, j])))
            out[i, j] = acc
    return out


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 5), st.integers(1, 40), st.integers(1, 5),
       st.integers(0, 2**32 - 1))
def test_matmul_matches_scalar_loop(pm, r, k, c, seed):
    F = field(*pm)
    rng = np.random.default_rng(seed)
    A = rng.integers(0, F.q, (r, k)) * (rng.random((r, k)) < 0.8)
    B = rng.integers(0, F.q, (k, c))
    assert np.array_equal(L.matmul(F, A, B), naive_matmul(F, A, B))


def test_long_sums_wrap_the_packed_accumulator():
    # more terms than one packed chunk holds before digits are reduced
    F = field(3, 4)
    A = np.full((2, 20000), F.q - 1, dtype=np.int64)
    B = np.full((20000, 2), F.q - 1, dtype=np.int64)
    sq = F.mul(F.q - 1, F.q - 1)
    want = 0
    for _ in range(20000 % F.p):
        want = F.add(want, sq)
    assert np.all(L.matmul(F, A, B) == want)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 6), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_rank_nullspace_and_inverse(pm, r, c, seed):
    F = field(*pm)
    A = np.random.default_rng(seed).integers(0, F.q, (r, c))
    N = L.nullspace(F, A)
    assert L.rank(F, A) + N.shape[0] == c
    if N.shape[0]:
        assert not L.matmul(F, A, N.T).any()
    if r == c and L.rank(F, A) == r:
        assert np.array_equal(L.matmul(F, A, L.inverse(F, A)), np.eye(r, dtype=np.int64))
