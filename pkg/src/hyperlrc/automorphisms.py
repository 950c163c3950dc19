"""Automorphisms given by 2x2 matrices acting as
x -> (a x + b)/(c x + d),  y -> (ad - bc) y / (c x + d)^3,
the five cataloged families, group generation, orbits and subgroups.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import poly as P
from .curve import INF, INF_MINUS, INF_PLUS, Curve, Place, affine
from .errors import ConditionNotMet, GroupTooLarge, NotAnAutomorphism
from .finite_field import FieldCtx
from .functions import Func

Mat = tuple  # (a, b, c, d)

GROUP_CAP = 480


# ---------------------------------------------------------------------------
# matrices

def mat_mul(F: FieldCtx, A: Mat, B: Mat) -> Mat:
    a, b, c, d = A
    e, f, g, h = B
    m, s = F.mul, F.add
    return (s(m(a, e), m(b, g)), s(m(a, f), m(b, h)),
            s(m(c, e), m(d, g)), s(m(c, f), m(d, h)))


def mat_det(F: FieldCtx, A: Mat) -> int:
    a, b, c, d = A
    return F.sub(F.mul(a, d), F.mul(b, c))


def mat_scale(F: FieldCtx, A: Mat, s: int) -> Mat:
    return tuple(F.mul(x, s) for x in A)


def mat_inv(F: FieldCtx, A: Mat) -> Mat:
    a, b, c, d = A
    di = F.inv(mat_det(F, A))
    return (F.mul(d, di), F.mul(F.neg(b), di), F.mul(F.neg(c), di), F.mul(a, di))


def identity() -> Mat:
    return (1, 0, 0, 1)


def minus_identity(F: FieldCtx) -> Mat:
    m1 = F.neg(1)
    return (m1, 0, 0, m1)


def x_action_key(F: FieldCtx, A: Mat) -> Mat:
    """Projective normal form: the Moebius map x -> (ax+b)/(cx+d) up to scalars."""
    a, b, c, d = A
    s = F.inv(c) if c else F.inv(d)
    return tuple(F.mul(x, s) for x in A)


def mat_to_str(F: FieldCtx, A: Mat) -> str:
    return "[[" + ", ".join(F.to_str(x) for x in A[:2]) + "], [" + ", ".join(F.to_str(x) for x in A[2:]) + "]]"


# ---------------------------------------------------------------------------
# action on functions and places

def act_on_x(c: Curve, A: Mat) -> Func:
    a, b, cc, d = A
    return Func(c, (b, a), (), (d, cc))


def act_on_func(c: Curve, A: Mat, h: Func) -> Func:
    """h composed with the automorphism: x -> (ax+b)/(cx+d), y -> det y/(cx+d)^3."""
    F = c.field
    if h.is_zero():
        return h
    det = mat_det(F, A)
    du, dw = P.deg(h.u), P.deg(h.w)
    dv = P.deg(h.v) + 3 if h.v else -1
    D = max(du, dv, dw)
    u = P.mobius_compose(F, h.u, A, D) if h.u else ()
    v = P.scale(F, P.mobius_compose(F, h.v, A, D - 3), det) if h.v else ()
    w = P.mobius_compose(F, h.w, A, D)
    return Func(c, u, v, w)


def verify_automorphism(c: Curve, A: Mat) -> bool:
    """Semantic check: y'^2 - f(x') vanishes identically on the curve."""
    F = c.field
    if mat_det(F, A) == 0:
        return False
    y2 = act_on_func(c, A, Func.y(c)) ** 2
    fx = act_on_func(c, A, Func(c, c.f))
    return (y2 - fx).is_zero()


def act_on_place(c: Curve, A: Mat, pl: Place) -> Place:
    """Image of a rational place under the point map of A."""
    F = c.field
    a_, b_, c_, d_ = A
    det = mat_det(F, A)
    if pl.kind == "aff":
        a, b = pl.a, pl.b
        den = F.add(F.mul(c_, a), d_)
        if den:
            x2 = F.div(F.add(F.mul(a_, a), b_), den)
            y2 = F.div(F.mul(det, b), F.pow(den, 3))
            return affine(x2, y2)
        if c.degree == 5:
            return INF
        ratio = F.div(F.mul(det, b), F.pow(F.add(F.mul(a_, a), b_), 3))
        return _inf_by_ratio(c, ratio)
    if pl.kind == "inf":
        if c_ == 0:
            return INF
        return affine(F.div(a_, c_), 0)
    sgn_c = c.c_inf if pl.kind == "inf+" else F.neg(c.c_inf)
    if c_:
        return affine(F.div(a_, c_), F.div(F.mul(sgn_c, det), F.pow(c_, 3)))
    return _inf_by_ratio(c, F.div(F.mul(sgn_c, det), F.pow(a_, 3)))


def _inf_by_ratio(c: Curve, ratio: int) -> Place:
    if ratio == c.c_inf:
        return INF_PLUS
    if ratio == c.field.neg(c.c_inf):
        return INF_MINUS
    raise NotAnAutomorphism("image at infinity is not a rational place")


def place_permutation(c: Curve, A: Mat) -> np.ndarray:
    """perm[i] = index of the image of place i (vectorised over affine places)."""
    F = c.field
    q = F.q
    places = c.places
    xs, ys = c.affine_arrays
    n_aff = len(xs)
    codes = xs * q + ys
    a_, b_, c_, d_ = A
    det = mat_det(F, A)
    den = F.vadd(F.vmul(xs, c_), d_)
    perm = np.full(len(places), -1, dtype=np.int64)
    ok = den != 0
    if ok.any():
        dinv = F.vinv(den[ok])
        x2 = F.vmul(F.vadd(F.vmul(xs[ok], a_), b_), dinv)
        y2 = F.vmul(F.vmul(ys[ok], det), F.vpow(dinv, 3))
        tgt = x2 * q + y2
        pos = np.searchsorted(codes, tgt)
        pos = np.minimum(pos, n_aff - 1)
        if np.any(codes[pos] != tgt):
            raise NotAnAutomorphism("point map leaves the curve")
        perm[np.nonzero(ok)[0]] = pos
    idx = c.place_index
    for i in np.nonzero(~ok)[0]:
        perm[i] = idx[act_on_place(c, A, places[i])]
    for i in range(n_aff, len(places)):
        img = act_on_place(c, A, places[i])
        if img not in idx:
            raise NotAnAutomorphism(f"{places[i]} maps outside the rational places")
        perm[i] = idx[img]
    if len(set(perm.tolist())) != len(places):
        raise NotAnAutomorphism("point map is not a bijection")
    return perm


# ---------------------------------------------------------------------------
# catalog

def _coeff_pattern(f, pattern: dict[int, int | None]) -> int | None | bool:
    """Match f against {degree: coefficient or None (free)}; returns the free value."""
    free = None
    if len(f) - 1 != max(pattern):
        return False
    for i in range(len(f)):
        want = pattern.get(i, 0)
        if want is None:
            free = f[i]
        elif f[i] != want:
            return False
    return free if free is not None else True


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ConditionNotMet(what)


def _root(F: FieldCtx, roots, name: str, default, check) -> int:
    """A root chosen by the caller (validated) or the default choice."""
    if roots and name in roots:
        v = F.parse(roots[name])
        if not check(v):
            raise ConditionNotMet(f"supplied {name} = {F.to_str(v)} does not satisfy its equation")
        return v
    return default


def aut_catalog(c: Curve, roots: dict | None = None) -> list[tuple[str, list[Mat]]]:
    """Generator matrices for the cataloged family the curve belongs to.

    Roots of unity and radicals default to the first admissible element in
    enumeration order; `roots` may override them by name ("t4", "i", "t6",
    "alpha", "omega", "sqrt2", "zeta").
    """
    F = c.field
    f = c.f
    p, q = F.p, F.q
    one = 1
    m1 = F.neg(1)

    t = _coeff_pattern(f, {5: 1, 3: 1, 1: None})
    if t is not False and t is not True and t:
        _require((q - 1) % 4 == 0, "4 | q-1")
        t4 = F.nth_root(t, 4)
        _require(t4 is not None, "t^(1/4) in F_q")
        t4 = _root(F, roots, "t4", t4, lambda v: F.pow(v, 4) == t)
        excluded = {0}
        excluded.add(F.inv(F.from_int(4)))
        if F.from_int(100):
            excluded.add(F.div(F.from_int(9), F.from_int(100)))
        _require(t not in excluded, "t not in {0, 1/4, 9/100}")
        i = _root(F, roots, "i", F.sqrt(m1), lambda v: F.mul(v, v) == m1)
        U = (F.neg(i), 0, 0, i)
        V = (0, t4, F.inv(t4), 0)
        return [("D8", [U, V])]

    t = _coeff_pattern(f, {6: 1, 3: 1, 0: None})
    if t is not False and t is not True and t:
        _require(p != 3, "characteristic is not 3")
        _require((q - 1) % 3 == 0, "3 | q-1")
        t6 = F.nth_root(t, 6)
        _require(t6 is not None, "t^(1/6) in F_q")
        t6 = _root(F, roots, "t6", t6, lambda v: F.pow(v, 6) == t)
        excluded = {0, F.inv(F.from_int(4))}
        if F.from_int(50):
            excluded.add(F.neg(F.inv(F.from_int(50))))
        _require(t not in excluded, "t not in {0, 1/4, -1/50}")
        al = _root(F, roots, "alpha", F.element_of_order(3), lambda v: F.order(v) == 3)
        U = (F.neg(F.mul(al, al)), 0, 0, F.neg(al))
        V = (0, t6, F.inv(t6), 0)
        return [("D12", [U, V])]

    if _coeff_pattern(f, {5: 1, 1: 1}) is True:
        _require((q - 1) % 8 == 0, "8 | q-1")
        s2 = F.sqrt(F.from_int(2))
        _require(s2 is not None, "2^(1/2) in F_q")
        s2 = _root(F, roots, "sqrt2", s2, lambda v: F.mul(v, v) == F.from_int(2))
        _require(p != 3, "characteristic is not 3")
        # (-1)^(1/4), a primitive 8th root of unity
        w = _root(F, roots, "omega", F.nth_root(m1, 4), lambda v: F.pow(v, 4) == m1)
        i = F.mul(w, w)
        if p != 5:
            lam = F.inv(s2)
            U = mat_scale(F, (one, F.neg(w), F.pow(w, 3), m1), lam)
            V = mat_scale(F, (F.sub(i, 1), 0, 0, F.add(i, 1)), lam)
            return [("S4~", [U, V])]
        two = F.from_int(2)
        a = F.neg(F.mul(F.inv(w), two))
        b = F.neg(F.mul(w, two))
        U = (0, a, b, 0)
        V = (0, a, b, one)
        W = (s2, 0, 0, F.mul(s2, two))
        return [("S5~", [U, V, W])]

    if _coeff_pattern(f, {5: 1, 0: 1}) is True:
        _require(p != 5, "characteristic is not 5")
        _require((q - 1) % 5 == 0, "5 | q-1")
        z = _root(F, roots, "zeta", F.element_of_order(5), lambda v: F.order(v) == 5)
        return [("C10", [minus_identity(F), (F.mul(z, z), 0, 0, z)])]

    raise ConditionNotMet("curve is not one of the cataloged families "
                          "(x^5+x^3+tx, x^6+x^3+t, x^5+x, x^5+1)")


CATALOG_ORDERS = {"D8": 8, "D12": 12, "S4~": 48, "S5~": 240, "C10": 10}


# ---------------------------------------------------------------------------
# groups

@dataclass
class AutGroup:
    curve: Curve
    elements: list  # matrices, identity first, BFS order
    generators: list = field(default_factory=list)

    def __post_init__(self):
        self.index = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, A) -> bool:
        return tuple(A) in self.index

    @property
    def field(self) -> FieldCtx:
        return self.curve.field

    @cached_property
    def mult_table(self) -> np.ndarray:
        """table[i, j] = index of elements[i] * elements[j]."""
        F = self.field
        q = F.q
        E = np.array(self.elements, dtype=np.int64)
        a, b, c, d = (E[:, k] for k in range(4))
        pa = F.vadd(F.vmul(a[:, None], a[None, :]), F.vmul(b[:, None], c[None, :]))
        pb = F.vadd(F.vmul(a[:, None], b[None, :]), F.vmul(b[:, None], d[None, :]))
        pc = F.vadd(F.vmul(c[:, None], a[None, :]), F.vmul(d[:, None], c[None, :]))
        pd = F.vadd(F.vmul(c[:, None], b[None, :]), F.vmul(d[:, None], d[None, :]))
        key = ((pa * q + pb) * q + pc) * q + pd
        keys = ((a * q + b) * q + c) * q + d
        order = np.argsort(keys)
        pos = np.searchsorted(keys[order], key)
        pos = np.minimum(pos, len(keys) - 1)
        if np.any(keys[order][pos] != key):
            raise NotAnAutomorphism("element set is not closed under products")
        return order[pos]

    @cached_property
    def inverse_index(self) -> np.ndarray:
        T = self.mult_table
        return np.argmax(T == 0, axis=1)

    def minus_identity_index(self) -> int | None:
        return self.index.get(minus_identity(self.field))

    def x_actions(self) -> dict:
        """Distinct Moebius maps -> first element index realising each."""
        out: dict = {}
        for i, g in enumerate(self.elements):
            out.setdefault(x_action_key(self.field, g), i)
        return out

    def distinct_x_count(self) -> int:
        return len(self.x_actions())

    def subgroup(self, indices) -> "AutGroup":
        idx = sorted(set(int(i) for i in indices))
        if 0 not in idx:
            raise ValueError("subgroup must contain the identity")
        T = self.mult_table
        s = set(idx)
        for i in idx:
            for j in idx:
                if int(T[i, j]) not in s:
                    raise ValueError("index set is not closed under products")
        elems = [self.elements[i] for i in idx]
        return AutGroup(self.curve, elems, generators=_small_generating_set(self, idx))

    def generated_by(self, gen_indices: Sequence[int]) -> list[int]:
        return sorted(_closure(self.mult_table, list(gen_indices)))

    def to_json(self) -> dict:
        return {"order": self.order, "generators": [list(g) for g in self.generators]}


def _closure(T: np.ndarray, gens: list[int]) -> set[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for e in frontier:
            row = T[e]
            for g in gens:
                h = int(row[g])
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def _small_generating_set(grp: AutGroup, idx: list[int]) -> list[Mat]:
    T = grp.mult_table
    gens: list[int] = []
    cur = {0}
    for i in idx:
        if i not in cur:
            gens.append(i)
            cur = _closure(T, gens)
            if len(cur) == len(idx):
                break
    return [grp.elements[i] for i in gens]


def group_generate(c: Curve, gens: Sequence[Mat], cap: int = GROUP_CAP,
                   verify: bool = True) -> AutGroup:
    """Closure of the generators by breadth-first right multiplication."""
    F = c.field
    gens = [tuple(int(x) for x in g) for g in gens]
    if verify:
        for g in gens:
            if not verify_automorphism(c, g):
                raise NotAnAutomorphism(f"{mat_to_str(F, g)} is not an automorphism of {c}")
    elems = [identity()]
    seen = {identity()}
    i = 0
    while i < len(elems):
        e = elems[i]
        for g in gens:
            h = mat_mul(F, e, g)
            if h not in seen:
                if len(elems) >= cap:
                    raise GroupTooLarge(f"group exceeds {cap} elements")
                seen.add(h)
                elems.append(h)
        i += 1
    return AutGroup(c, elems, generators=list(gens))


def catalog_group(c: Curve, roots: dict | None = None) -> tuple[str, AutGroup]:
    label, gens = aut_catalog(c, roots)[0]
    return label, group_generate(c, gens)


# ---------------------------------------------------------------------------
# orbits

def orbit_analysis(grp: AutGroup, c: Curve | None = None) -> dict:
    """Partition the rational places into orbits (via generator permutations).

    Returns {"fibers": full-size orbits, "ramified": smaller orbits,
    "distinct_x_count": number of distinct x-actions}; orbits are lists of
    places sorted in place order, and orbit lists are sorted by first member.
    """
    c = c or grp.curve
    places = c.places
    gens = grp.generators or grp.elements[1:]
    perms = [place_permutation(c, g) for g in gens]
    n = len(places)
    label = np.full(n, -1, dtype=np.int64)
    orbits: list[list[int]] = []
    for start in range(n):
        if label[start] >= 0:
            continue
        k = len(orbits)
        label[start] = k
        orb = [start]
        j = 0
        while j < len(orb):
            i = orb[j]
            for pm in perms:
                t = int(pm[i])
                if label[t] < 0:
                    label[t] = k
                    orb.append(t)
            j += 1
        orbits.append(sorted(orb))
    full = [[places[i] for i in o] for o in orbits if len(o) == grp.order]
    small = [[places[i] for i in o] for o in orbits if len(o) != grp.order]
    return {"fibers": full, "ramified": small, "distinct_x_count": grp.distinct_x_count()}


# ---------------------------------------------------------------------------
# subgroups

def enumerate_subgroups(grp: AutGroup, require_minus_identity: bool = True,
                        orders: set[int] | None = None) -> list[list[int]]:
    """All subgroups (as sorted index lists), optionally only those containing -I.

    Built as joins of cyclic subgroups, which reaches every subgroup.
    Sorted by order, then lexicographically by index list.
    """
    T = grp.mult_table
    n = grp.order
    mi = grp.minus_identity_index()
    base_gens = [mi] if (require_minus_identity and mi is not None) else []
    if require_minus_identity and mi is None:
        return []

    def mask(s):
        m = 0
        for i in s:
            m |= 1 << i
        return m

    cyc: dict[int, list[int]] = {}
    for g in range(n):
        s = _closure(T, base_gens + [g])
        cyc.setdefault(mask(s), base_gens + [g])
    found: dict[int, list[int]] = dict(cyc)
    frontier = list(cyc.items())
    cyc_items = list(cyc.items())
    while frontier:
        nxt = []
        for hm, hg in frontier:
            for cm, cg in cyc_items:
                if cm & ~hm == 0:
                    continue
                gens = hg + [cg[-1]]
                s = _closure(T, gens)
                m = mask(s)
                if m not in found:
                    found[m] = gens
                    nxt.append((m, gens))
        frontier = nxt
    out = []
    for m in found:
        idx = [i for i in range(n) if m >> i & 1]
        if orders is None or len(idx) in orders:
            out.append(idx)
    out.sort(key=lambda s: (len(s), s))
    return out
