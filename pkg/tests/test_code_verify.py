import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlrc import kernels
from hyperlrc import linalg as L
from hyperlrc.automorphisms import catalog_group, group_generate
from hyperlrc.errors import Infeasible, SingularSubmatrix
from hyperlrc.lrc import build_code_odd, odd_plan
from hyperlrc.verify import (choose_strategy, classify, locality_from_generator, min_distance,
                             repair_sim, repair_vector, sampled_weight_check, singleton_bound,
                             verify_code)

from conftest import curve, field


def brute_distance(F, G):
    """Minimum nonzero weight over every message."""
    G = np.asarray(G, dtype=np.int64)
    best = None
    for msg in itertools.product(range(F.q), repeat=G.shape[0]):
        if not any(msg):
            continue
        w = int(np.count_nonzero(L.matvec(F, G.T, np.array(msg, dtype=np.int64))))
        if w and (best is None or w < best):
            best = w
    return best


def weight(word):
    return sum(1 for v in word if v)


@pytest.fixture(scope="module")
def code9():
    c = curve(3, 2, "x5+x3+2x")
    _, full = catalog_group(c)
    return build_code_odd(odd_plan(c, group_generate(c, [full.generators[0]])), 4, 4)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(3, 1), (5, 1), (3, 2)]), st.integers(1, 3), st.integers(2, 7),
       st.integers(0, 2**32 - 1))
def test_both_strategies_match_brute_force(pm, k, extra, seed):
    F = field(*pm)
    n = k + extra
    G = np.random.default_rng(seed).integers(0, F.q, (k, n))
    want = brute_distance(F, G)
    for strategy in ("support", "exhaustive"):
        res = min_distance(F, G, strategy, threads=1)
        assert res.d == want
        if want is not None:
            # the witness is a nonzero codeword of weight d
            assert weight(res.witness) == want
            assert L.rank(F, np.vstack([G, [res.witness]])) == L.rank(F, G)


@pytest.mark.skipif("cython" not in kernels.backends(), reason="extension not built")
def test_compiled_and_pure_kernels_agree(monkeypatch, code9):
    F = code9.field
    rng = np.random.default_rng(5)
    small = [rng.integers(0, F.q, (3, 9)) for _ in range(4)]
    got = {}
    for name, mod in kernels.backends().items():
        monkeypatch.setattr(kernels, "support_branch", mod.support_branch)
        monkeypatch.setattr(kernels, "gray_scan", mod.gray_scan)
        got[name] = ([min_distance(F, G, s, threads=2).d
                      for G in small for s in ("support", "exhaustive")],
                     min_distance(F, code9.G, "support", code9.r, threads=2).d)
    assert got["python"] == got["cython"]
    assert got["python"][1] == 4


def test_worked_code_is_optimal(code9):
    rep = verify_code(code9, "support", trials=20)
    assert (rep.n, rep.k, rep.d_exact) == (16, 10, 4)
    assert rep.defect == 0 and rep.verdict == "optimal"
    assert rep.locality_ok and rep.local_matrices_ok
    assert rep.repair_trials["mismatches"] == 0
    assert rep.singleton_bound == singleton_bound(16, 10, 3) == 4
    assert sampled_weight_check(code9, 300) >= code9.d_lower


def test_verdicts_on_small_codes():
    F = field(3, 1)
    groups = [[0, 1, 2], [3, 4, 5]]
    almost = [[1, 1, 2, 2, 2, 1], [2, 2, 1, 0, 0, 0], [0, 0, 0, 2, 1, 0]]
    rep = classify(F, almost, groups, 2)
    assert (rep.d_exact, rep.singleton_bound, rep.verdict) == (2, 3, "almost-optimal")
    poor = [[1, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 1]]
    rep = classify(F, poor, groups, 2)
    assert rep.defect == 3 and rep.verdict == "rejected"


def test_fake_groups_fail_locality():
    F = field(5, 2)
    G = np.random.default_rng(11).integers(0, F.q, (10, 16))
    groups = [list(range(i, i + 4)) for i in range(0, 16, 4)]
    assert not locality_from_generator(F, G, groups)
    rep = classify(F, G, groups, 3, strategy=None)
    assert not rep.locality_ok and rep.verdict == "rejected"


def test_zero_padded_generator_is_rejected(code9):
    F = code9.field
    padded = np.vstack([code9.G, np.zeros((2, code9.n), dtype=np.int64)])
    rep = classify(F, padded, [g.cols for g in code9.groups], code9.r,
                   strategy=None, k_expected=padded.shape[0])
    assert rep.k == code9.k and rep.verdict == "rejected"
    # a duplicated row also drops the rank below the row count
    dup = np.vstack([code9.G, code9.G[:1]])
    assert classify(F, dup, [g.cols for g in code9.groups], code9.r, strategy=None,
                    k_expected=dup.shape[0]).verdict == "rejected"


def test_large_field_is_bound_only():
    F = field(5, 6)
    G = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.int64)
    with pytest.raises(Infeasible):
        min_distance(F, G, "support")
    rep = classify(F, G, [[0, 1, 2]], 2, d_lower=2)
    assert rep.verdict == "bound-only" and rep.d_exact is None
    assert any("defect <= 0" in s for s in rep.notes)


def test_strategy_choice():
    assert choose_strategy(9, 16, 10, 4) == "support"
    assert choose_strategy(3, 200, 8, 150) == "exhaustive"
    with pytest.raises(Infeasible):
        choose_strategy(729, 400, 30, 300)


def test_repair_vector_and_simulation(code9):
    F = code9.field
    for g in code9.groups:
        w = repair_vector(F, g.M)
        assert np.all(w != 0)
        assert not L.matmul(F, w[None, :], g.M).any()
    with pytest.raises(SingularSubmatrix):
        repair_vector(F, np.array([[1, 0], [0, 1], [0, 0]]))
    res = repair_sim(code9, trials=100, seed=3)
    assert res["mismatches"] == 0
    assert res["attempts"] == 100 * code9.n and res["tail_attempts"] == 100 * 4
