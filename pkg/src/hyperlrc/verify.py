"""Independent verification: rank, exact minimum distance, locality, repair, verdict."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import kernels
from . import linalg as L
from .errors import Infeasible, SingularSubmatrix
from .finite_field import FieldCtx
from .lrc import LocalCode, local_matrix_ok

SUPPORT_BUDGET = 10**8
EXHAUSTIVE_BUDGET = 10**9
KERNEL_MAX_Q = 1024


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("HYPERLRC_THREADS", "0")) or os.cpu_count() or 1)
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# bounds

def singleton_bound(n: int, k: int, r: int) -> int:
    """n - k - ceil(k/r) + 2."""
    return n - k - math.ceil(k / r) + 2


def rank_and_parity(F: FieldCtx, G) -> tuple[int, np.ndarray]:
    G = L.as_matrix(G)
    if G.size == 0 or not G.any():
        return 0, np.eye(G.shape[1], dtype=np.int64)
    return L.rank(F, G), L.parity_check(F, G)


# ---------------------------------------------------------------------------
# minimum distance

class _Tables:
    def __init__(self, F: FieldCtx):
        if F.q > KERNEL_MAX_Q:
            raise Infeasible(f"distance kernels need q <= {KERNEL_MAX_Q}, got {F.q}")
        a = np.arange(F.q, dtype=np.int64)
        self.add = F.add_table().astype(np.int32)
        self.mul = F.vmul(a[:, None], a[None, :]).astype(np.int32)
        inv = np.zeros(F.q, dtype=np.int64)
        inv[1:] = F.vinv(a[1:])
        self.inv = inv.astype(np.int32)
        self.neg = F.vneg(a).astype(np.int32)


def support_cost(n: int, w: int) -> int:
    """Upper bound on search nodes: independent sets of size < w."""
    return sum(math.comb(n, s) for s in range(max(w, 0)))


def exhaustive_cost(q: int, k: int) -> int:
    return (q ** k - 1) // (q - 1) if k > 0 else 0


def choose_strategy(q: int, n: int, k: int, w: int,
                    support_budget: int = SUPPORT_BUDGET,
                    exhaustive_budget: int = EXHAUSTIVE_BUDGET) -> str:
    """Cheaper of the two strategies among those within budget."""
    cs, ce = support_cost(n, w), exhaustive_cost(q, k)
    ok_s, ok_e = cs <= support_budget, ce <= exhaustive_budget
    if ok_s and (not ok_e or cs <= ce):
        return "support"
    if ok_e:
        return "exhaustive"
    raise Infeasible(f"support search ~{cs:.3g} nodes and exhaustive search ~{ce:.3g} messages both exceed budget")


def _support(F: FieldCtx, G: np.ndarray, maxw: int, threads: int):
    T = _Tables(F)
    _, H = rank_and_parity(F, G)
    n = G.shape[1]
    H32 = np.ascontiguousarray(H, dtype=np.int32).reshape(-1, n)
    shared = np.array([maxw], dtype=np.int32)

    def branch(first):
        return kernels.support_branch(H32, T.add, T.mul, T.inv, T.neg, first, maxw, shared)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(branch, range(n)))
    else:
        results = [branch(f) for f in range(n)]
    found = [(w, cols) for w, cols in results if cols is not None]
    if not found:
        return None, None
    w, cols = min(found)
    # the dependency's coefficients give the witness codeword
    ns = L.nullspace(F, H[:, cols]) if H.shape[0] else np.ones((1, len(cols)), dtype=np.int64)
    word = np.zeros(n, dtype=np.int64)
    word[cols] = ns[0]
    return w, word


def _gray_message_digits(step: int, p: int, N: int) -> list[int]:
    b = [(step // p ** j) % p for j in range(N + 1)]
    return [(b[j] - b[j + 1]) % p for j in range(N)]


def _exhaustive(F: FieldCtx, G: np.ndarray, stop_at: int, threads: int):
    T = _Tables(F)
    k, n = G.shape
    p, m = F.p, F.m
    basis = [F.pow(F.u, e) if m > 1 else 1 for e in range(m)]
    shared = np.array([n + 1], dtype=np.int32)
    jobs = []
    for lead in range(k):
        rows = G[lead + 1:]
        V = np.array([F.vmul(row, b) for row in rows for b in basis], dtype=np.int64).reshape(-1, n)
        N = V.shape[0]
        s = 0
        while s < N and p ** s < 16 * threads:
            s += 1
        s = min(s, N)
        low = N - s
        for pref in range(p ** s):
            digs = [(pref // p ** i) % p for i in range(s)]
            start = G[lead].copy()
            for i, d in enumerate(digs):
                if d:
                    start = F.vadd(start, F.vmul(V[low + i], F.from_int(d)))
            jobs.append((lead, pref, digs, low, V, start))

    def run(job):
        lead, pref, digs, low, V, start = job
        if shared[0] <= stop_at:
            return None
        return kernels.gray_scan(start.astype(np.int32), V[:low].astype(np.int32), p, T.add, stop_at, shared)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    best = None
    for job, res in zip(jobs, results):
        if res is None:
            continue
        if best is None or res[0] < best[0][0]:
            best = (res, job)
    (w, step), (lead, pref, digs, low, V, start) = best
    digits = _gray_message_digits(step, p, low) + digs
    msg = np.zeros(k, dtype=np.int64)
    msg[lead] = 1
    for r in range(k - lead - 1):
        msg[lead + 1 + r] = F.from_coeffs(digits[r * m:(r + 1) * m])
    word = L.matvec(F, G.T, msg)
    return w, word


@dataclass
class DistanceResult:
    d: int | None
    method: str
    witness: list | None


def min_distance(F: FieldCtx, G, strategy: str = "auto", r: int | None = None,
                 d_lower: int | None = None, threads: int | None = None,
                 support_budget: int = SUPPORT_BUDGET,
                 exhaustive_budget: int = EXHAUSTIVE_BUDGET) -> DistanceResult:
    """Exact minimum distance of the row space of G.

    support: smallest set of dependent parity-check columns (sizes up to the
    locality Singleton bound when r is given, else n - k + 1).
    exhaustive: all messages up to scalars via a p-ary Gray code, stopping
    once weight d_lower is seen (d_lower must be a proven lower bound).
    """
    G = L.as_matrix(G)
    threads = threads or thread_count()
    k, n = G.shape
    rk = L.rank(F, G) if G.any() else 0
    if rk == 0:
        return DistanceResult(None, "empty", None)
    if rk < k:
        G = L.row_space_basis(F, G)
        k = rk
    maxw = singleton_bound(n, k, r) if r else n - k + 1
    maxw = max(1, min(maxw, n - k + 1))
    if strategy == "auto":
        strategy = choose_strategy(F.q, n, k, maxw, support_budget, exhaustive_budget)
    if strategy == "support":
        if support_cost(n, maxw) > support_budget:
            raise Infeasible("support search exceeds budget")
        d, word = _support(F, G, maxw, threads)
        if d is None:
            # no dependency within the Singleton bound: only possible without locality
            d, word = _support(F, G, n - k + 1, threads)
    elif strategy == "exhaustive":
        if exhaustive_cost(F.q, k) > exhaustive_budget:
            raise Infeasible("exhaustive search exceeds budget")
        d, word = _exhaustive(F, G, d_lower or 0, threads)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return DistanceResult(d, strategy, [int(v) for v in word])


# ---------------------------------------------------------------------------
# locality

def locality_from_generator(F: FieldCtx, G, groups) -> bool:
    """Each coordinate of each group is a linear function of the others in the group.

    Coordinate i is recoverable iff some column dependency of G restricted to
    the group has a nonzero i-th entry.
    """
    G = L.as_matrix(G)
    for cols in groups:
        dep = L.nullspace(F, G[:, list(cols)])
        if dep.shape[0] == 0 or not np.all(np.any(dep != 0, axis=0)):
            return False
    return True


def repair_vector(F: FieldCtx, M: np.ndarray) -> np.ndarray:
    """w with w . M = 0 and no zero entry, so c_m = -(1/w_m) sum_{i != m} w_i c_i."""
    ker = L.nullspace(F, L.as_matrix(M).T)
    if ker.shape[0] != 1 or not np.all(ker[0] != 0):
        raise SingularSubmatrix("local matrix admits no full-support repair relation")
    return ker[0]


def repair_coefficients(F: FieldCtx, M: np.ndarray, erased: int) -> np.ndarray:
    """lambda with c_erased = lambda . (c_other) for every word c = M beta."""
    keep = [i for i in range(M.shape[0]) if i != erased]
    Ainv = L.inverse(F, M[keep])
    return L.matmul(F, M[erased:erased + 1], Ainv)[0]


def repair_sim(code: LocalCode, trials: int = 100, seed: int = 0) -> dict:
    """Erase each coordinate of `trials` random codewords and recover it locally."""
    F = code.field
    rng = np.random.default_rng(seed)
    msgs = rng.integers(0, F.q, size=(trials, code.k), dtype=np.int64)
    words = L.matmul(F, msgs, code.G)
    attempts = mismatches = 0
    tail_attempts = 0
    for g in code.groups:
        cols = list(g.cols)
        s = len(cols)
        w = repair_vector(F, g.M)
        terms = F.vmul(words[:, cols], w[None, :])
        # sum of w_i c_i over i != m from prefix and suffix sums; c_m is never read
        pre = np.zeros((trials, s + 1), dtype=np.int64)
        suf = np.zeros((trials, s + 1), dtype=np.int64)
        for i in range(s):
            pre[:, i + 1] = F.vadd(pre[:, i], terms[:, i])
            suf[:, s - 1 - i] = F.vadd(suf[:, s - i], terms[:, s - 1 - i])
        rest = F.vadd(pre[:, :s], suf[:, 1:])
        rec = F.vmul(F.vneg(rest), F.vinv(w)[None, :])
        attempts += trials * s
        tail_attempts += trials * s if g.tail else 0
        mismatches += int(np.count_nonzero(rec != words[:, cols]))
    return {"trials": trials, "seed": seed, "attempts": attempts,
            "tail_attempts": tail_attempts, "mismatches": mismatches}


def sampled_weight_check(code: LocalCode, samples: int = 1000, seed: int = 0) -> int:
    """Minimum weight over random nonzero codewords (must be >= d_lower)."""
    F = code.field
    rng = np.random.default_rng(seed)
    msgs = rng.integers(0, F.q, size=(samples, code.k), dtype=np.int64)
    msgs = msgs[np.any(msgs != 0, axis=1)]
    words = L.matmul(F, msgs, code.G)
    return int(np.count_nonzero(words, axis=1).min()) if len(words) else code.n


# ---------------------------------------------------------------------------
# report

@dataclass
class VerifyReport:
    n: int
    k: int
    r: int
    d_lower: int | None
    d_exact: int | None
    method: str | None
    locality_ok: bool
    local_matrices_ok: bool | None
    repair_trials: dict
    singleton_bound: int
    defect: int | None
    verdict: str
    witness: list | None = None
    claimed: dict | None = None
    schema: int = 1
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    def row(self) -> str:
        d = self.d_exact if self.d_exact is not None else f">={self.d_lower}"
        return (f"[{self.n}, {self.k}, {d}] r={self.r} bound={self.singleton_bound} "
                f"defect={self.defect} verdict={self.verdict}")


def classify(F: FieldCtx, G, groups, r: int, d_lower: int | None = None,
             strategy: str | None = "auto", local_mats=None, repair: dict | None = None,
             threads: int | None = None, k_expected: int | None = None,
             support_budget: int = SUPPORT_BUDGET,
             exhaustive_budget: int = EXHAUSTIVE_BUDGET) -> VerifyReport:
    G = L.as_matrix(G)
    n = G.shape[1]
    k = L.rank(F, G) if G.size and G.any() else 0
    notes = []
    bound = singleton_bound(n, k, r) if k else n
    loc = locality_from_generator(F, G, groups) and all(len(g) <= r + 1 for g in groups) \
        and sorted(c for g in groups for c in g) == list(range(n))
    mats_ok = None
    if local_mats is not None:
        mats_ok = all(local_matrix_ok(F, M) for M in local_mats)
    rejected = False
    if k_expected is not None and k != k_expected:
        notes.append(f"rank {k} differs from the claimed dimension {k_expected}")
        rejected = True
    if not loc:
        notes.append("some coordinate is not recoverable from its group")
        rejected = True
    d = method = witness = None
    if strategy and k:
        try:
            res = min_distance(F, G, strategy, r if loc else None, d_lower, threads,
                               support_budget, exhaustive_budget)
            d, method, witness = res.d, res.method, res.witness
        except Infeasible as e:
            notes.append(f"exact distance skipped: {e}")
    defect = bound - d if d is not None else None
    if rejected or (defect is not None and defect > 1) or mats_ok is False:
        verdict = "rejected"
    elif d is None:
        verdict = "bound-only"
    else:
        verdict = "optimal" if defect == 0 else "almost-optimal"
    if d is None and d_lower is not None:
        defect_bound = bound - d_lower
        notes.append(f"defect <= {defect_bound} from the designed distance")
    return VerifyReport(n, k, r, d_lower, d, method, loc, mats_ok, repair or {}, bound,
                        defect, verdict, witness, notes=notes)


def verify_code(code: LocalCode, strategy: str | None = "auto", trials: int = 100,
                seed: int = 0, threads: int | None = None, **budgets) -> VerifyReport:
    rep = repair_sim(code, trials, seed) if trials else {}
    report = classify(code.field, code.G, [g.cols for g in code.groups], code.r,
                      code.d_lower, strategy, [g.M for g in code.groups], rep, threads,
                      k_expected=code.k, **budgets)
    if rep and rep["mismatches"]:
        report.verdict = "rejected"
        report.notes.append("repair simulation mismatches")
    return report
