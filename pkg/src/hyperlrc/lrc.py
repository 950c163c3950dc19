"""Code constructions.

Odd locality: a subgroup G of even order r+1 containing -I, an invariant z
whose pole divisor is one full orbit (the base fiber), and a basis e_1..e_r of
L(P + P_1 + ... + P_r).  Codewords are evaluations of
sum_j a_{1,j} z^{j-1} e_1 + sum_{i>=2} sum_{j<t} a_{i,j} z^{j-1} e_i.

Even locality: a cyclic group <H> of order r+1 in {3, 5}, an invariant z with
pole only at infinity, and the monomials z^j x^i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg as L
from . import poly as P
from .automorphisms import (AutGroup, Mat, act_on_func, act_on_place, aut_catalog,
                            group_generate, mat_mul, minus_identity, orbit_analysis)
from .curve import Curve, Place, conjugate
from .errors import (BudgetInvalid, ConditionNotMet, FiberShortage, InvarianceFailed,
                     NoBasePoint, PatternNotFound, PoleDegreeMismatch, RankDeficient,
                     SingularSubmatrix)
from .functions import Divisor, Func, evaluate, principal_divisor, rr_space, valuation


# ---------------------------------------------------------------------------
# shared pieces

@dataclass
class RepairGroup:
    cols: list            # coordinate indices, length r+1
    M: np.ndarray         # (r+1) x r local matrix
    tail: bool = False    # True for the rescaled base-fiber block


@dataclass
class LocalCode:
    field: object
    G: np.ndarray
    r: int
    groups: list
    places: list
    d_lower: int | None = None
    plan: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.G.shape[1])

    @property
    def k(self) -> int:
        return int(self.G.shape[0])

    def encode(self, msg) -> np.ndarray:
        return L.matvec(self.field, self.G.T, np.asarray(msg, dtype=np.int64))

    def group_of(self, pos: int) -> RepairGroup:
        for g in self.groups:
            if pos in g.cols:
                return g
        raise KeyError(f"coordinate {pos} is in no repair group")


def values_at(c: Curve, h: Func, places: Sequence[Place]) -> np.ndarray:
    """Values of h at the places (vectorised on affine places off the poles of w)."""
    F = c.field
    out = np.zeros(len(places), dtype=np.int64)
    aff = [i for i, pl in enumerate(places) if pl.is_affine]
    slow = [i for i, pl in enumerate(places) if not pl.is_affine]
    if aff:
        xs = np.array([places[i].a for i in aff], dtype=np.int64)
        ys = np.array([places[i].b for i in aff], dtype=np.int64)
        den = P.evaluate_many(F, h.w, xs)
        ok = den != 0
        if ok.any():
            idx = np.array(aff)[ok]
            out[idx] = h.eval_affine_many(xs[ok], ys[ok])
        slow += [aff[i] for i in np.nonzero(~ok)[0]]
    for i in slow:
        out[i] = evaluate(c, h, places[i])
    return out


def local_matrix_ok(F, M: np.ndarray) -> bool:
    """Every r x r submatrix of the (r+1) x r matrix M is invertible.

    Equivalent test: M has rank r and the one-dimensional left kernel is
    spanned by a vector with no zero entry.
    """
    M = L.as_matrix(M)
    rows, r = M.shape
    if rows != r + 1:
        return False
    ker = L.nullspace(F, M.T)
    if ker.shape[0] != 1:
        return False
    return bool(np.all(ker[0] != 0))


def local_matrix_ok_bruteforce(F, M: np.ndarray) -> bool:
    M = L.as_matrix(M)
    return all(L.is_invertible(F, np.delete(M, i, axis=0)) for i in range(M.shape[0]))


def _indices(available: list, chosen: list) -> list[int]:
    return [available.index(orb) for orb in chosen]


def spread_order(c: Curve, fibers: Sequence[list]) -> list[list]:
    """Fibers whose conjugate fiber is not yet listed come first, then the rest
    (each group keeps the smallest-member order).  Fibers closed under the
    hyperelliptic involution are unaffected."""
    first, rest, blocked = [], [], set()
    for orb in fibers:
        if frozenset(orb) in blocked:
            rest.append(orb)
            continue
        first.append(orb)
        blocked.add(frozenset(conjugate(c, pl) for pl in orb))
    return first + rest


def _pick_fibers(available: list, count: int, chosen) -> list:
    if chosen is None:
        return available[:count]
    chosen = list(chosen)
    if len(chosen) != count or len(set(chosen)) != count:
        raise FiberShortage(f"need {count} distinct fiber indices, got {chosen}")
    if any(i < 0 or i >= len(available) for i in chosen):
        raise FiberShortage(f"fiber index out of range 0..{len(available) - 1}")
    return [available[i] for i in chosen]


def _full_rank_or_raise(F, G: np.ndarray, k: int) -> None:
    rk = L.rank(F, G)
    if rk != k:
        raise RankDeficient(f"generator matrix has rank {rk}, expected {k}")


# ---------------------------------------------------------------------------
# odd locality

@dataclass
class OddPlan:
    curve: Curve
    group: AutGroup
    reps: list            # sigma_1 .. sigma_{r+1}
    base: Place           # P_{a,b}
    aux: Place            # P
    z: Func
    base_fiber: list      # P_1 .. P_{r+1}
    e_basis: list
    fibers: list          # available plain fibers (full orbits off the base fiber)
    report: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.group.order - 1

    def to_json(self) -> dict:
        F = self.curve.field
        return {
            "kind": "odd",
            "r": self.r,
            "subgroup_generators": [list(g) for g in self.group.generators],
            "base": self.base.to_json(),
            "aux": self.aux.to_json(),
            "z": self.z.to_json(),
            "base_fiber": [pl.to_json() for pl in self.base_fiber],
            "e_basis": [e.to_json() for e in self.e_basis],
            "z_str": self.z.to_str(),
            "e_str": [e.to_str() for e in self.e_basis],
            "available_fibers": len(self.fibers),
            "field_q": F.q,
        }


def coset_reps(grp: AutGroup) -> list[Mat]:
    """sigma_1 = identity, ..., with sigma_{2i} = sigma_{2i-1} * (-I)."""
    F = grp.field
    mi = minus_identity(F)
    out = []
    for key, idx in grp.x_actions().items():
        s = grp.elements[idx]
        out.append(s)
        out.append(mat_mul(F, s, mi))
    return out


def _check_odd_group(grp: AutGroup) -> None:
    n = grp.order
    if n % 2 or n < 4:
        raise ConditionNotMet(f"subgroup order {n} must be even and at least 4")
    if grp.minus_identity_index() is None:
        raise ConditionNotMet("subgroup does not contain -I")
    if grp.distinct_x_count() != n // 2:
        raise ConditionNotMet("subgroup x-actions are not pairwise distinct modulo -I")


def product_sigma_x_minus_a(F, reps_x: Sequence[Mat], a: int) -> tuple[tuple, tuple, int]:
    """prod (sigma(x) - a) as reduced num/den and the summed per-factor numerator degree."""
    num, den = P.ONE, P.ONE
    expected = 0
    for (al, be, ga, de) in reps_x:
        lin = P.trim((F.sub(be, F.mul(a, de)), F.sub(al, F.mul(a, ga))))
        if not lin:
            raise PoleDegreeMismatch("sigma(x) - a vanishes identically")
        expected += P.deg(lin)
        num = P.mul(F, num, lin)
        den = P.mul(F, den, P.trim((de, ga)))
    g = P.gcd(F, num, den)
    if P.deg(g) > 0:
        num, den = P.exact_div(F, num, g), P.exact_div(F, den, g)
    return num, den, expected


def find_base_point(c: Curve, grp: AutGroup) -> tuple[Place, dict]:
    """First affine place (enumeration order) with a full orbit passing the degree test."""
    _check_odd_group(grp)
    F = c.field
    orbits = orbit_analysis(grp, c)
    full = {pl for orb in orbits["fibers"] for pl in orb}
    reps_x = coset_reps(grp)[0::2]
    tried = []
    for pl in c.places:
        if not pl.is_affine or pl not in full:
            continue
        num, den, expected = product_sigma_x_minus_a(F, reps_x, pl.a)
        ok = P.deg(num) == expected
        tried.append({"place": pl.to_json(), "numerator_degree": P.deg(num), "expected": expected})
        if ok:
            return pl, {"orbit_size": grp.order, "degree_test": tried[-1], "rejected": tried[:-1]}
    raise NoBasePoint("no full orbit satisfies the numerator-degree condition")


def build_z_odd(c: Curve, grp: AutGroup, a: int) -> Func:
    """z = prod over x-action representatives of 1/(sigma(x) - a), checked."""
    F = c.field
    reps_x = coset_reps(grp)[0::2]
    num, den, expected = product_sigma_x_minus_a(F, reps_x, a)
    if P.deg(num) != expected:
        raise PoleDegreeMismatch("numerator degree drops: poles and zeros collide")
    z = Func(c, P.monic(F, den), (), P.monic(F, num))   # scalar normalisation
    for g in grp.generators or grp.elements:
        if act_on_func(c, g, z) != z:
            raise InvarianceFailed("z is not fixed by the subgroup")
    poles = principal_divisor(c, z).negative_part()
    if poles.degree != grp.order or any(v != 1 for v in poles.values()):
        raise PoleDegreeMismatch(f"pole divisor of z has degree {poles.degree}, expected {grp.order}")
    return z


def choose_aux_place(c: Curve, grp: AutGroup, avoid: Sequence[Place]) -> Place:
    if c.degree == 5:
        return c.infinite_places()[0]
    avoid = set(avoid)
    for orb in orbit_analysis(grp, c)["ramified"]:
        for pl in orb:
            if pl not in avoid:
                return pl
    raise ConditionNotMet("no ramified rational place available for P")


def _greedy_nonzero(F, W: np.ndarray) -> np.ndarray:
    """Coefficients mu (first admissible value in element order, row by row) with
    every entry of mu @ W nonzero.  W: dim x npos functional values."""
    dim, npos = W.shape
    acc = np.zeros(npos, dtype=np.int64)
    seen = np.zeros(npos, dtype=bool)
    mu = np.zeros(dim, dtype=np.int64)
    for k in range(dim):
        row = W[k]
        seen |= row != 0
        for cand in range(F.q):
            trial = F.vadd(acc, F.vmul(row, cand))
            if np.all(trial[seen] != 0):
                mu[k] = cand
                acc = trial
                break
        else:
            raise PatternNotFound("no coefficient keeps the pole pattern")
    if not np.all(acc != 0):
        raise PatternNotFound("some required pole is missing from the space")
    return mu


def build_e_basis(c: Curve, base_fiber: Sequence[Place], aux: Place) -> list[Func]:
    """e_1 = 1, e_2 = 1/(x - a), e_i with simple poles exactly at P_1..P_i (i >= 3)."""
    F = c.field
    r = len(base_fiber) - 1
    a = base_fiber[0].a
    e = [Func.const(c, 1), Func(c, (1,), (), P.linear(F, a))]
    if r <= 2:
        return e[:r]
    D = Divisor({aux: 1})
    for pl in base_fiber[:r]:
        D[pl] = D.get(pl, 0) + 1
    S = rr_space(c, D)
    if S.dim != r:
        raise PatternNotFound(f"L(P + P_1 + ... + P_r) has dimension {S.dim}, expected {r}")
    # numerator values at P_1..P_r: the pole at P_j is present iff nonzero
    xs = np.array([pl.a for pl in base_fiber[:r]], dtype=np.int64)
    ys = np.array([pl.b for pl in base_fiber[:r]], dtype=np.int64)
    E = S.numerator_values(xs, ys)                       # r x ncoef
    C = L.matmul(F, S.basis, E.T)                        # dim x r
    # lams[i] spans the coefficient vectors of L(P + P_1 + ... + P_i): walk the
    # flag downward, cutting one hyperplane (no pole at P_{i+1}) per step
    lams = {r: np.eye(S.dim, dtype=np.int64)}
    B = lams[r]
    for i in range(r - 1, 2, -1):
        v = L.matvec(F, B, C[:, i])
        nz = np.nonzero(v)[0]
        if len(nz):
            p = int(nz[0])
            f = F.vneg(F.vmul(v, int(F.inv(int(v[p])))))
            B = F.vadd(B, F.vmul(f[:, None], B[p][None, :]))
            B = np.delete(B, p, axis=0)
        lams[i] = B
    for i in range(3, r + 1):
        lam = lams[i]
        if lam.shape[0] != i:
            raise PatternNotFound(f"L(P + P_1 + ... + P_{i}) has dimension {lam.shape[0]}, expected {i}")
        W = L.matmul(F, lam, C[:, :i])
        mu = _greedy_nonzero(F, W)
        coeffs = L.matvec(F, S.basis.T, L.matvec(F, lam.T, mu))
        e.append(S.element(coeffs))
    return e


def check_e_pattern(c: Curve, plan: OddPlan) -> bool:
    """Valuation pattern: v_{P_j}(e_i) = -1 for j <= i, v_P(e_i) >= -1, else >= 0."""
    bf = plan.base_fiber
    for i, e in enumerate(plan.e_basis, start=1):
        if i == 1:
            continue
        for j, pl in enumerate(bf, start=1):
            v = valuation(c, e, pl)
            if (j <= i and v != -1) or (j > i and v < 0):
                return False
        if valuation(c, e, plan.aux) < -1:
            return False
    return True


def odd_plan(c: Curve, grp: AutGroup) -> OddPlan:
    base, report = find_base_point(c, grp)
    z = build_z_odd(c, grp, base.a)
    reps = coset_reps(grp)
    base_fiber = [act_on_place(c, s, base) for s in reps]
    if len(set(base_fiber)) != len(base_fiber):
        raise ConditionNotMet("base orbit is not full")
    aux = choose_aux_place(c, grp, base_fiber)
    e_basis = build_e_basis(c, base_fiber, aux)
    bset = set(base_fiber)
    fibers = [orb for orb in orbit_analysis(grp, c)["fibers"]
              if not (set(orb) & bset) and aux not in orb]
    report["rough_ell_estimate"] = max(0, (len(c.places) - 2 * grp.order - 2) // grp.order)
    report["available_fibers"] = len(fibers)
    return OddPlan(c, grp, reps, base, aux, z, base_fiber, e_basis, fibers, report)


def odd_d_lower(n: int, r: int, t: int) -> int:
    return n - (t - 1) * (r + 1) - 1


def build_code_odd(plan: OddPlan, ell: int, t: int, extended: bool | None = None,
                   fibers: Sequence[int] | None = None) -> LocalCode:
    """Evaluation code on ell blocks; `fibers` optionally picks plain fibers by index."""
    c, F, r = plan.curve, plan.curve.field, plan.r
    if t < 1 or t > ell:
        raise BudgetInvalid(f"need 1 <= t <= ell, got t={t}, ell={ell}")
    avail = len(plan.fibers)
    if extended is None:
        extended = ell > avail
    plain = ell - 1 if extended else ell
    if plain > avail or plain < 0:
        raise FiberShortage(f"{plain} plain fibers requested, {avail} available")
    fibers = _pick_fibers(plan.fibers, plain, fibers)
    places = [pl for orb in fibers for pl in orb]
    e = plan.e_basis
    vz = values_at(c, plan.z, places) if places else np.zeros(0, dtype=np.int64)
    ve = [values_at(c, h, places) for h in e] if places else [np.zeros(0, dtype=np.int64)] * r
    # rows: z^{j-1} e_1 (j = 1..t), then z^{j-1} e_i (j = 1..t-1), i = 2..r
    spec = [(0, j) for j in range(t)] + [(i, j) for i in range(1, r) for j in range(t - 1)]
    k = len(spec)
    n = len(places) + (r + 1 if extended else 0)
    G = np.zeros((k, n), dtype=np.int64)
    zp = [np.ones_like(vz)]
    for _ in range(1, t):
        zp.append(F.vmul(zp[-1], vz))
    for row, (i, j) in enumerate(spec):
        G[row, :len(places)] = F.vmul(zp[j], ve[i])
    groups = []
    for f_idx in range(plain):
        cols = list(range(f_idx * (r + 1), (f_idx + 1) * (r + 1)))
        M = np.stack([v[cols] for v in ve], axis=1)
        groups.append(RepairGroup(cols, M))
    if extended:
        # (1/z)^{t-1} z^{j-1} e_i at P_m is nonzero only for (1, t) and (i >= 2, t - 1)
        Mz = np.zeros((r + 1, r), dtype=np.int64)
        Mz[:, 0] = 1
        inv_z = plan.z.inverse()
        for i in range(1, r):
            Mz[:, i] = values_at(c, e[i] * inv_z, plan.base_fiber)
        off = len(places)
        for row, (i, j) in enumerate(spec):
            if (i == 0 and j == t - 1) or (i > 0 and j == t - 2):
                G[row, off:] = Mz[:, i]
        groups.append(RepairGroup(list(range(off, n)), Mz, tail=True))
        places = places + list(plan.base_fiber)
    _full_rank_or_raise(F, G, k)
    for g in groups:
        if not local_matrix_ok(F, g.M):
            raise SingularSubmatrix("a local matrix has a singular r x r submatrix")
    rec = plan.to_json()
    rec.update({"ell": ell, "t": t, "extended": bool(extended),
                "fiber_indices": _indices(plan.fibers, fibers),
                "fibers": [[pl.to_json() for pl in orb] for orb in fibers]})
    return LocalCode(F, G, r, groups, places, odd_d_lower(n, r, t), rec)


# ---------------------------------------------------------------------------
# even locality

VARIANTS = {"4t+1": 4, "4t+2": 4, "2t+1": 2}


@dataclass
class EvenPlan:
    curve: Curve
    group: AutGroup       # <H>, order r+1
    z: Func
    fibers: list
    variant: str
    report: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.group.order - 1

    def to_json(self) -> dict:
        return {"kind": "even", "r": self.r, "variant": self.variant,
                "H": list(self.group.generators[0]), "z": self.z.to_json(),
                "z_str": self.z.to_str(), "available_fibers": len(self.fibers)}


def default_even_setup(c: Curve, r: int) -> tuple[Mat, Func]:
    """(H, z) for the cataloged families: r = 4 on x^5 + x (p = 5) or x^5 + 1,
    r = 2 on x^6 + x^3 + t."""
    F = c.field
    label, gens = aut_catalog(c)[0]
    if r == 4 and label == "S5~":
        U, V = gens[0], gens[1]
        UV = mat_mul(F, U, V)
        return mat_mul(F, UV, UV), Func.y(c)
    if r == 4 and label == "C10":
        return gens[1], Func.y(c)
    if r == 2 and label == "D12":
        U = gens[0]
        z = Func.y(c) - Func(c, P.monomial(c.c_inf, 3))
        return mat_mul(F, U, U), z
    raise ConditionNotMet(f"no default locality-{r} setup for the {label} family")


def monomial_spec(variant: str, t: int) -> list[tuple[int, int]]:
    """(i, j) pairs for the monomials z^j x^i."""
    if variant == "4t+1":
        return [(0, j) for j in range(t + 1)] + [(i, j) for i in (1, 2, 3) for j in range(t)]
    if variant == "4t+2":
        return ([(0, j) for j in range(t + 1)] + [(1, j) for j in range(t + 1)]
                + [(i, j) for i in (2, 3) for j in range(t)])
    if variant == "2t+1":
        return [(0, j) for j in range(t + 1)] + [(1, j) for j in range(t)]
    raise ConditionNotMet(f"unknown variant {variant!r}")


def even_plan(c: Curve, variant: str, H: Mat | None = None, z: Func | None = None) -> EvenPlan:
    if variant not in VARIANTS:
        raise ConditionNotMet(f"unknown variant {variant!r}")
    r = VARIANTS[variant]
    if H is None or z is None:
        H0, z0 = default_even_setup(c, r)
        H = H0 if H is None else H
        z = z0 if z is None else z
    grp = group_generate(c, [H])
    if grp.order != r + 1:
        raise ConditionNotMet(f"<H> has order {grp.order}, expected {r + 1}")
    if act_on_func(c, H, z) != z:
        raise InvarianceFailed("z is not fixed by H")
    pd = principal_divisor(c, z)
    poles = pd.negative_part()
    if any(pl.is_affine for pl in poles):
        raise PoleDegreeMismatch("z has an affine pole")
    if poles.degree != r + 1:
        raise PoleDegreeMismatch(f"z has pole degree {poles.degree}, expected {r + 1}")
    orbits = orbit_analysis(grp, c)
    fibers = spread_order(c, [orb for orb in orbits["fibers"] if all(pl.is_affine for pl in orb)])
    for orb in fibers:
        if len({pl.a for pl in orb}) != len(orb):
            raise ConditionNotMet("a fiber has repeated x-coordinates")
    return EvenPlan(c, grp, z, fibers, variant, {"ramified": [[p.to_json() for p in o] for o in orbits["ramified"]]})


def monomial_pole_orders(plan: EvenPlan, t: int) -> dict:
    """Pole orders of z^j x^i at each infinite place."""
    c = plan.curve
    out = {}
    for pl in c.infinite_places():
        vz, vx = valuation(c, plan.z, pl), valuation(c, Func.x(c), pl)
        out[pl] = [-(j * vz + i * vx) for i, j in monomial_spec(plan.variant, t)]
    return out


def even_d_lower(plan: EvenPlan, n: int, t: int) -> int:
    orders = monomial_pole_orders(plan, t)
    return n - sum(max([0] + v) for v in orders.values())


def build_code_even(plan: EvenPlan, ell: int, t: int,
                    fibers: Sequence[int] | None = None) -> LocalCode:
    c, F, r = plan.curve, plan.curve.field, plan.r
    if t < 0 or t > ell or ell < 1:
        raise BudgetInvalid(f"need 0 <= t <= ell and ell >= 1, got t={t}, ell={ell}")
    if ell > len(plan.fibers):
        raise FiberShortage(f"{ell} fibers requested, {len(plan.fibers)} available")
    fibers = _pick_fibers(plan.fibers, ell, fibers)
    places = [pl for orb in fibers for pl in orb]
    xs = np.array([pl.a for pl in places], dtype=np.int64)
    vz = values_at(c, plan.z, places)
    spec = monomial_spec(plan.variant, t)
    jmax = max(j for _, j in spec)
    zp = [np.ones_like(vz)]
    for _ in range(jmax):
        zp.append(F.vmul(zp[-1], vz))
    xp = [np.ones_like(xs)]
    for _ in range(r - 1):
        xp.append(F.vmul(xp[-1], xs))
    G = np.stack([F.vmul(zp[j], xp[i]) for i, j in spec])
    groups = []
    for f_idx in range(ell):
        cols = list(range(f_idx * (r + 1), (f_idx + 1) * (r + 1)))
        M = np.stack([x[cols] for x in xp], axis=1)   # Vandermonde in x
        groups.append(RepairGroup(cols, M))
    _full_rank_or_raise(F, G, len(spec))
    for g in groups:
        if not local_matrix_ok(F, g.M):
            raise SingularSubmatrix("a local matrix has a singular r x r submatrix")
    n = len(places)
    rec = plan.to_json()
    rec.update({"ell": ell, "t": t, "fiber_indices": _indices(plan.fibers, fibers),
                "fibers": [[pl.to_json() for pl in orb] for orb in fibers]})
    return LocalCode(F, G, r, groups, places, even_d_lower(plan, n, t), rec)


# ---------------------------------------------------------------------------
# repair

def repair(code: LocalCode, word, erased: int) -> int:
    """Recover coordinate `erased` from the other r symbols of its group."""
    F = code.field
    g = code.group_of(erased)
    m = g.cols.index(erased)
    keep = [i for i in range(len(g.cols)) if i != m]
    A = g.M[keep]
    rhs = np.asarray([int(word[g.cols[i]]) for i in keep], dtype=np.int64)
    beta = L.matvec(F, L.inverse(F, A), rhs)
    return int(L.matvec(F, g.M[m:m + 1], beta)[0])
