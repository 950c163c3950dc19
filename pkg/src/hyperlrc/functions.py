"""Functions (u + v*y)/w on a genus-2 curve: arithmetic, valuations,
divisors, evaluation and Riemann-Roch spaces.

Local conventions:
  * affine place (a, b) with b != 0: uniformizer x - a, y expanded as a
    power series in x - a;
  * Weierstrass place (a, 0): uniformizer y, so v(x - a) = 2;
  * degree-5 infinity: v(x) = -2, v(y) = -5;
  * degree-6 infinities: v(x) = -1, v(y) = -3, with y expanded in w = 1/x.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import linalg as L
from . import poly as P
from .curve import INF, INF_MINUS, INF_PLUS, Curve, Place, affine
from .errors import (DivisionByZero, IrrationalSupport, PoleAtPlace,
                     ZeroFunction)

INFINITY = math.inf


# ---------------------------------------------------------------------------
# power series helpers (lists of coefficients, truncated)

def _smul(F, a, b, prec):
    out = [0] * prec
    for i, x in enumerate(a[:prec]):
        if x:
            for j, y in enumerate(b[: prec - i]):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _pad(a, prec):
    a = list(a[:prec])
    return a + [0] * (prec - len(a))


def _first_nonzero(s) -> int | None:
    for i, c in enumerate(s):
        if c:
            return i
    return None


def y_series(c: Curve, a: int, b: int, prec: int) -> list[int]:
    """Coefficients of y in t = x - a at the non-Weierstrass place (a, b)."""
    F = c.field
    key = ("aff", a, b)
    ys = c._series.get(key)
    if ys is not None and len(ys) >= prec:
        return ys[:prec]
    g = P.taylor(F, c.f, a, prec)
    ys = list(ys) if ys else [b]
    inv2b = F.inv(F.add(b, b))
    for k in range(len(ys), prec):
        acc = g[k]
        for i in range(1, k):
            acc = F.sub(acc, F.mul(ys[i], ys[k - i]))
        ys.append(F.mul(acc, inv2b))
    c._series[key] = ys
    return ys[:prec]


def inf_series(c: Curve, prec: int) -> list[int]:
    """S(w) with S(0) = 1 and y = +-c w^-3 S(w) at the degree-6 infinities."""
    F = c.field
    ss = c._series.get("inf")
    if ss is not None and len(ss) >= prec:
        return ss[:prec]
    inv_lc = F.inv(c.lc)
    g = [F.mul(x, inv_lc) for x in reversed(_pad(c.f, 7))]
    g = _pad(g, prec)
    ss = list(ss) if ss else [1]
    inv2 = F.inv(2 % F.p)
    for k in range(len(ss), prec):
        acc = g[k]
        for i in range(1, k):
            acc = F.sub(acc, F.mul(ss[i], ss[k - i]))
        ss.append(F.mul(acc, inv2))
    c._series["inf"] = ss
    return ss[:prec]


def _reverse(a, n):
    """Coefficients of w^n * a(1/w) (requires deg a <= n)."""
    if n < 0:
        return []
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        out[n - i] = x
    return out


# ---------------------------------------------------------------------------
# Func

class Func:
    """(u(x) + v(x) y) / w(x), kept with w monic and gcd(u, v, w) = 1."""

    __slots__ = ("curve", "u", "v", "w")

    def __init__(self, curve: Curve, u=(), v=(), w=(1,), normalize: bool = True):
        F = curve.field
        u, v, w = P.trim(u), P.trim(v), P.trim(w)
        if not w:
            raise DivisionByZero("zero denominator")
        self.curve = curve
        if not u and not v:
            self.u, self.v, self.w = (), (), (1,)
            return
        if normalize and len(w) > 1:
            g = P.gcd(F, P.gcd(F, u, v), w)
            if len(g) > 1:
                u, v, w = P.exact_div(F, u, g), P.exact_div(F, v, g), P.exact_div(F, w, g)
        if w[-1] != 1:
            s = F.inv(w[-1])
            u, v, w = P.scale(F, u, s), P.scale(F, v, s), P.scale(F, w, s)
        self.u, self.v, self.w = u, v, w

    # constructors
    @classmethod
    def const(cls, curve: Curve, a: int) -> "Func":
        return cls(curve, (a,))

    @classmethod
    def x(cls, curve: Curve) -> "Func":
        return cls(curve, P.X)

    @classmethod
    def y(cls, curve: Curve) -> "Func":
        return cls(curve, (), P.ONE)

    @classmethod
    def from_poly(cls, curve: Curve, a) -> "Func":
        return cls(curve, a)

    def _coerce(self, other) -> "Func":
        if isinstance(other, Func):
            if other.curve is not self.curve and (other.curve.f != self.curve.f
                                                  or other.curve.field != self.curve.field):
                raise ValueError("functions live on different curves")
            return other
        if isinstance(other, (int, np.integer)):
            return Func(self.curve, (int(other),))
        return NotImplemented

    # predicates
    def is_zero(self) -> bool:
        return not self.u and not self.v

    def is_const(self) -> bool:
        return not self.v and len(self.u) <= 1 and self.w == (1,)

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.curve.field
        if self.w == o.w:
            return Func(self.curve, P.add(F, self.u, o.u), P.add(F, self.v, o.v), self.w)
        u = P.add(F, P.mul(F, self.u, o.w), P.mul(F, o.u, self.w))
        v = P.add(F, P.mul(F, self.v, o.w), P.mul(F, o.v, self.w))
        return Func(self.curve, u, v, P.mul(F, self.w, o.w))

    __radd__ = __add__

    def __neg__(self):
        F = self.curve.field
        return Func(self.curve, P.neg(F, self.u), P.neg(F, self.v), self.w, normalize=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.curve.field
        u = P.add(F, P.mul(F, self.u, o.u), P.mul(F, P.mul(F, self.v, o.v), self.curve.f))
        v = P.add(F, P.mul(F, self.u, o.v), P.mul(F, self.v, o.u))
        return Func(self.curve, u, v, P.mul(F, self.w, o.w))

    __rmul__ = __mul__

    def scale(self, a: int) -> "Func":
        F = self.curve.field
        if a == 0:
            return Func(self.curve)
        return Func(self.curve, P.scale(F, self.u, a), P.scale(F, self.v, a), self.w, normalize=False)

    def norm(self) -> tuple:
        """u^2 - v^2 f, the norm of the numerator down to F_q(x)."""
        F = self.curve.field
        return P.sub(F, P.mul(F, self.u, self.u), P.mul(F, P.mul(F, self.v, self.v), self.curve.f))

    def inverse(self) -> "Func":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero function")
        F = self.curve.field
        n = self.norm()
        return Func(self.curve, P.mul(F, self.w, self.u), P.neg(F, P.mul(F, self.w, self.v)), n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = Func(self.curve, P.ONE)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def conj(self) -> "Func":
        """Image under y -> -y."""
        F = self.curve.field
        return Func(self.curve, self.u, P.neg(F, self.v), self.w, normalize=False)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = Func(self.curve, (int(other),))
        if not isinstance(other, Func):
            return NotImplemented
        return (self.u, self.v, self.w) == (other.u, other.v, other.w) and self.curve.f == other.curve.f

    def __hash__(self):
        return hash((self.u, self.v, self.w))

    # serialization / display
    def to_json(self) -> dict:
        return {"u": list(self.u), "v": list(self.v), "w": list(self.w)}

    @classmethod
    def from_json(cls, curve: Curve, obj: Mapping) -> "Func":
        return cls(curve, obj.get("u", ()), obj.get("v", ()), obj.get("w", (1,)))

    def to_str(self) -> str:
        F = self.curve.field
        parts = []
        if self.u:
            parts.append(P.to_str(F, self.u))
        if self.v:
            vs = P.to_str(F, self.v)
            parts.append("y" if self.v == P.ONE else f"({vs})*y")
        num = " + ".join(parts) if parts else "0"
        if self.w == P.ONE:
            return num
        return f"({num})/({P.to_str(F, self.w)})"

    def __repr__(self) -> str:
        return f"Func({self.to_str()})"

    # evaluation on many affine points at once
    def eval_affine_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Values at affine points where w does not vanish (vectorised)."""
        F = self.curve.field
        den = P.evaluate_many(F, self.w, xs)
        if np.any(den == 0):
            raise PoleAtPlace("denominator vanishes at an evaluation point")
        num = P.evaluate_many(F, self.u, xs)
        if self.v:
            num = F.vadd(num, F.vmul(P.evaluate_many(F, self.v, xs), ys))
        return F.vmul(num, F.vinv(den))


# ---------------------------------------------------------------------------
# valuations

def _ord_poly(F, a, r) -> float:
    return INFINITY if not a else P.ord_at(F, a, r)


def _affine_numerator_series(c: Curve, u, v, a: int, b: int, prec: int) -> list[int]:
    F = c.field
    s = _pad(P.taylor(F, u, a, prec), prec) if u else [0] * prec
    if v:
        tv = P.taylor(F, v, a, prec)
        s2 = _smul(F, tv, y_series(c, a, b, prec), prec)
        s = [F.add(x, y) for x, y in zip(s, s2)]
    return s


def _affine_numerator_val(c: Curve, h: Func, a: int, b: int) -> float:
    F = c.field
    if not h.v:
        return _ord_poly(F, h.u, a)
    if not h.u:
        return _ord_poly(F, h.v, a)  # y is a unit here
    prec = 8
    bound = None
    while True:
        s = _affine_numerator_series(c, h.u, h.v, a, b, prec)
        k = _first_nonzero(s)
        if k is not None:
            return k
        if bound is None:
            bound = P.ord_at(F, h.norm(), a) + 1
        if prec >= bound:
            raise AssertionError("series expansion exceeded the norm bound")
        prec = min(2 * prec, bound)


def _inf_numerator_val(c: Curve, h: Func, sign: int) -> int:
    du = P.deg(h.u)
    dv = P.deg(h.v) + 3 if h.v else -1
    B = max(du, dv)
    if du != dv:
        return -B
    # leading terms may cancel at one of the two places
    n = h.norm()
    prec = 2 * B - P.deg(n) + 1
    return -B + _inf_series_order(c, h.u, h.v, B, sign, prec)


def _inf_numerator_series(c: Curve, u, v, B: int, sign: int, prec: int) -> list[int]:
    F = c.field
    U = _pad(_reverse(u, B), prec) if u else [0] * prec
    if v:
        V = _reverse(v, B - 3)
        cc = c.c_inf if sign > 0 else F.neg(c.c_inf)
        VS = _smul(F, V, inf_series(c, prec), prec)
        U = [F.add(x, F.mul(cc, y)) for x, y in zip(U, VS)]
    return U


def _inf_series_order(c, u, v, B, sign, prec) -> int:
    s = _inf_numerator_series(c, u, v, B, sign, prec)
    k = _first_nonzero(s)
    if k is None:
        raise AssertionError("series expansion at infinity exceeded the norm bound")
    return k


def valuation(c: Curve, h: Func, pl: Place) -> int:
    """Discrete valuation of h at a rational place."""
    if h.is_zero():
        raise ZeroFunction("valuation of the zero function")
    F = c.field
    if pl.kind == "aff":
        a, b = pl.a, pl.b
        if b == 0:
            num = min(2 * _ord_poly(F, h.u, a), 2 * _ord_poly(F, h.v, a) + 1)
            return int(num - 2 * _ord_poly(F, h.w, a))
        return int(_affine_numerator_val(c, h, a, b) - _ord_poly(F, h.w, a))
    dw = P.deg(h.w)
    if pl.kind == "inf":
        num = min(-2 * P.deg(h.u) if h.u else INFINITY,
                  -2 * P.deg(h.v) - 5 if h.v else INFINITY)
        return int(num + 2 * dw)
    if c.c_inf is None:
        raise IrrationalSupport("no rational place at infinity on this model")
    sign = 1 if pl.kind == "inf+" else -1
    return _inf_numerator_val(c, h, sign) + dw


def evaluate(c: Curve, h: Func, pl: Place) -> int:
    """Residue class of h at a rational place (h must be regular there)."""
    F = c.field
    if h.is_zero():
        return 0
    if pl.kind == "aff":
        a, b = pl.a, pl.b
        wa = P.evaluate(F, h.w, a)
        if wa:
            num = F.add(P.evaluate(F, h.u, a), F.mul(P.evaluate(F, h.v, a), b))
            return F.div(num, wa)
        k = P.ord_at(F, h.w, a)
        if b == 0:
            # regular iff (x-a)^k divides both u and v
            if _ord_poly(F, h.u, a) < k or _ord_poly(F, h.v, a) < k:
                raise PoleAtPlace(f"pole at {pl}")
            lin = P.power(F, P.linear(F, a), k)
            u1 = P.exact_div(F, h.u, lin) if h.u else ()
            w1 = P.exact_div(F, h.w, lin)
            return F.div(P.evaluate(F, u1, a), P.evaluate(F, w1, a))
        s = _affine_numerator_series(c, h.u, h.v, a, b, k + 1)
        if any(s[:k]):
            raise PoleAtPlace(f"pole at {pl}")
        tw = P.taylor(F, h.w, a, k + 1)
        return F.div(s[k], tw[k])
    dw = P.deg(h.w)
    if pl.kind == "inf":
        if valuation(c, h, pl) < 0:
            raise PoleAtPlace("pole at infinity")
        cu = h.u[dw] if len(h.u) > dw else 0
        return cu  # w is monic
    if c.c_inf is None:
        raise IrrationalSupport("no rational place at infinity on this model")
    sign = 1 if pl.kind == "inf+" else -1
    du = P.deg(h.u)
    dv = P.deg(h.v) + 3 if h.v else -1
    B = max(du, dv)
    idx = B - dw
    if idx < 0:
        return 0
    s = _inf_numerator_series(c, h.u, h.v, B, sign, idx + 1)
    if any(s[:idx]):
        raise PoleAtPlace(f"pole at {pl}")
    return s[idx]


# ---------------------------------------------------------------------------
# divisors

class Divisor(dict):
    """Finite formal sum of rational places; zero coefficients are dropped."""

    def __init__(self, data: Mapping[Place, int] | Iterable | None = None):
        super().__init__()
        if data is None:
            return
        items = data.items() if isinstance(data, Mapping) else data
        for pl, n in items:
            self[pl] = self.get(pl, 0) + int(n)
        for pl in [p for p, n in self.items() if n == 0]:
            del self[pl]

    @property
    def degree(self) -> int:
        return sum(self.values())

    def __add__(self, other: Mapping) -> "Divisor":
        return Divisor(list(self.items()) + list(other.items()))

    def __neg__(self) -> "Divisor":
        return Divisor({p: -n for p, n in self.items()})

    def __sub__(self, other: Mapping) -> "Divisor":
        return self + (-Divisor(other))

    def __mul__(self, k: int) -> "Divisor":
        return Divisor({p: k * n for p, n in self.items()})

    __rmul__ = __mul__

    def is_effective(self) -> bool:
        return all(n > 0 for n in self.values())

    def __le__(self, other: Mapping) -> bool:
        return (Divisor(other) - self).is_effective()

    def positive_part(self) -> "Divisor":
        return Divisor({p: n for p, n in self.items() if n > 0})

    def negative_part(self) -> "Divisor":
        return Divisor({p: -n for p, n in self.items() if n < 0})

    def support(self) -> list[Place]:
        return sorted(self)

    def to_json(self) -> list:
        return [[p.to_json(), n] for p, n in sorted(self.items())]

    @classmethod
    def from_json(cls, obj) -> "Divisor":
        return cls((Place.from_json(p), n) for p, n in obj)


def principal_divisor(c: Curve, h: Func) -> Divisor:
    """(h) = zeros - poles.  Raises IrrationalSupport if it meets a non-rational place."""
    if h.is_zero():
        raise ZeroFunction("divisor of the zero function")
    F = c.field
    n = h.norm()
    prod = P.mul(F, n, h.w) if len(h.w) > 1 else n
    roots, residual = P.split_roots(F, prod)
    if residual:
        raise IrrationalSupport(f"zeros or poles over {residual} non-rational x-values")
    out: dict[Place, int] = {}
    for a, _ in roots:
        fa = c.f_at(a)
        if fa == 0:
            pls = [affine(a, 0)]
        else:
            b = F.sqrt(fa)
            if b is None:
                if P.ord_at(F, n, a) != 2 * _ord_poly(F, h.w, a):
                    raise IrrationalSupport(f"zero or pole over x = {F.to_str(a)} is not rational")
                continue
            nb = F.neg(b)
            pls = [affine(a, min(b, nb)), affine(a, max(b, nb))]
        for pl in pls:
            k = valuation(c, h, pl)
            if k:
                out[pl] = k
    if c.degree == 5:
        k = valuation(c, h, INF)
        if k:
            out[INF] = k
    elif c.c_inf is None:
        if P.deg(n) != 2 * P.deg(h.w):
            raise IrrationalSupport("zero or pole at the non-rational place at infinity")
    else:
        for pl in (INF_PLUS, INF_MINUS):
            k = valuation(c, h, pl)
            if k:
                out[pl] = k
    return Divisor(out)


# ---------------------------------------------------------------------------
# Riemann-Roch spaces

@dataclass
class RRSpace:
    """L(D) as {(u + v y)/m}: coefficient rows over the monomials
    x^0..x^du_max, then y*x^0..y*x^dv_max."""

    curve: Curve
    divisor: Divisor
    m: tuple
    du_max: int
    dv_max: int
    basis: np.ndarray  # dim x (du_max + dv_max + 2)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def ncoef(self) -> int:
        return max(self.du_max + 1, 0) + max(self.dv_max + 1, 0)

    def split(self, vec) -> tuple[tuple, tuple]:
        nu = max(self.du_max + 1, 0)
        vec = [int(x) for x in vec]
        return P.trim(vec[:nu]), P.trim(vec[nu:])

    def element(self, vec, normalize: bool = True) -> Func:
        u, v = self.split(vec)
        return Func(self.curve, u, v, self.m, normalize=normalize)

    def funcs(self) -> list[Func]:
        return [self.element(row) for row in self.basis]

    def numerator_values(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Matrix E with E[j, col] = monomial col at point j (for E @ coeffs)."""
        F = self.curve.field
        nu, nv = max(self.du_max + 1, 0), max(self.dv_max + 1, 0)
        cols = max(nu, nv)
        pw = np.ones((len(xs), max(cols, 1)), dtype=np.int64)
        for k in range(1, cols):
            pw[:, k] = F.vmul(pw[:, k - 1], xs)
        E = np.zeros((len(xs), nu + nv), dtype=np.int64)
        E[:, :nu] = pw[:, :nu]
        if nv:
            E[:, nu:] = F.vmul(pw[:, :nv], ys[:, None])
        return E


def _binom_row(F, k: int, a: int, prec: int) -> list[int]:
    """Taylor coefficients of x^k at a: C(k, j) a^(k-j), j < prec."""
    out = []
    for j in range(prec):
        if j > k:
            out.append(0)
            continue
        cb = math.comb(k, j) % F.p
        out.append(F.mul(F.from_int(cb), F.pow(a, k - j)) if cb else 0)
    return out


def rr_space(c: Curve, d: Mapping[Place, int]) -> RRSpace:
    """Compute L(d) by a bounded ansatz (u + v y)/m(x) plus linear conditions."""
    F = c.field
    d = Divisor(d)
    by_x: dict[int, list[Place]] = {}
    inf_n = {INF: 0, INF_PLUS: 0, INF_MINUS: 0}
    for pl, n in d.items():
        if pl.kind == "aff":
            if not c.on_curve(pl.a, pl.b):
                raise IrrationalSupport(f"{pl} is not a point of the curve")
            by_x.setdefault(pl.a, []).append(pl)
        else:
            if pl.kind == "inf" and c.degree != 5 or pl.kind != "inf" and c.c_inf is None:
                raise IrrationalSupport(f"{pl} is not a rational place of this model")
            inf_n[pl] = n
    # denominator
    m: tuple = P.ONE
    kmap: dict[int, int] = {}
    for a, pls in by_x.items():
        e = 2 if c.f_at(a) == 0 else 1
        k = max(0, max(-(-d[pl] // e) for pl in pls))
        kmap[a] = k
        if k:
            m = P.mul(F, m, P.power(F, P.linear(F, a), k))
    dm = P.deg(m)
    # degree bounds from the infinite places
    cond_inf: list[tuple[int, int]] = []  # (sign, order needed)
    if c.degree == 5:
        n = inf_n[INF]
        du_max = dm + math.floor(n / 2)
        dv_max = math.floor((2 * dm + n - 5) / 2)
    elif c.c_inf is None:
        du_max, dv_max = dm, dm - 3
    else:
        np_, nm = inf_n[INF_PLUS], inf_n[INF_MINUS]
        top = max(np_, nm)
        du_max, dv_max = dm + top, dm + top - 3
        if np_ < top:
            cond_inf.append((1, top - np_))
        if nm < top:
            cond_inf.append((-1, top - nm))
    nu, nv = max(du_max + 1, 0), max(dv_max + 1, 0)
    ncoef = nu + nv
    if ncoef == 0:
        return RRSpace(c, d, m, du_max, dv_max, np.zeros((0, 0), dtype=np.int64))
    rows: list[list[int]] = []
    # affine conditions
    for a, pls in by_x.items():
        k = kmap[a]
        fa = c.f_at(a)
        if fa == 0:
            R = 2 * k - d.get(affine(a, 0), 0)
            if R <= 0:
                continue
            ru, rv = -(-R // 2), -(-(R - 1) // 2)
            for j in range(ru):
                rows.append([_binom_row(F, i, a, j + 1)[j] for i in range(nu)] + [0] * nv)
            for j in range(rv):
                rows.append([0] * nu + [_binom_row(F, i, a, j + 1)[j] for i in range(nv)])
            continue
        b = F.sqrt(fa)
        for bb in sorted({b, F.neg(b)}):
            pl = affine(a, bb)
            R = k - d.get(pl, 0)
            if R <= 0:
                continue
            ys = y_series(c, a, bb, R)
            ucols = [_binom_row(F, i, a, R) for i in range(nu)]
            vcols = [_smul(F, _binom_row(F, i, a, R), ys, R) for i in range(nv)]
            for j in range(R):
                rows.append([col[j] for col in ucols] + [col[j] for col in vcols])
    # conditions at a degree-6 infinity with the smaller allowance
    B = du_max
    for sign, need in cond_inf:
        S = inf_series(c, need)
        cc = c.c_inf if sign > 0 else F.neg(c.c_inf)
        ucols = []
        for i in range(nu):
            col = [0] * need
            if 0 <= B - i < need:
                col[B - i] = 1
            ucols.append(col)
        vcols = []
        for i in range(nv):
            col = [0] * need
            sh = B - 3 - i
            for j in range(need):
                if j - sh >= 0:
                    col[j] = F.mul(cc, S[j - sh])
            vcols.append(col)
        for j in range(need):
            rows.append([col[j] for col in ucols] + [col[j] for col in vcols])
    if rows:
        basis = L.nullspace(F, np.array(rows, dtype=np.int64), ncoef)
        # reduced echelon form of the solution space
        basis = L.row_space_basis(F, basis) if basis.shape[0] else basis
    else:
        basis = np.eye(ncoef, dtype=np.int64)
    return RRSpace(c, d, m, du_max, dv_max, basis)


def riemann_roch_basis(c: Curve, d: Mapping[Place, int]) -> list[Func]:
    """A basis of L(d) = {h : (h) + d >= 0} u {0}."""
    return rr_space(c, d).funcs()


def in_space(c: Curve, h: Func, d: Mapping[Place, int]) -> bool:
    """Membership test h in L(d) via valuations."""
    if h.is_zero():
        return True
    d = Divisor(d)
    div = principal_divisor(c, h)
    pls = set(div) | set(d)
    return all(div.get(pl, 0) + d.get(pl, 0) >= 0 for pl in pls)
