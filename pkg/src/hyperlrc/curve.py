"""Genus-2 hyperelliptic models y^2 = f(x) and their rational places."""
from __future__ import annotations

import math
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from . import poly as P
from .errors import BadDegree, SingularModel
from .finite_field import FieldCtx


class Place(NamedTuple):
    """A rational place.

    ``kind`` is ``"aff"`` (with coordinates a, b), ``"inf"`` (the unique
    place at infinity of a degree-5 model) or ``"inf+"``/``"inf-"`` (the two
    places at infinity of a degree-6 model, where y/x^3 tends to +c / -c for
    the enumeration-first square root c of the leading coefficient).
    Tuple order is the canonical place order.
    """

    kind: str
    a: int = -1
    b: int = -1

    @property
    def is_affine(self) -> bool:
        return self.kind == "aff"

    def to_json(self):
        return {"aff": [self.a, self.b]} if self.kind == "aff" else self.kind

    @classmethod
    def from_json(cls, obj) -> "Place":
        if isinstance(obj, str):
            if obj not in ("inf", "inf+", "inf-"):
                raise ValueError(f"bad place {obj!r}")
            return cls(obj)
        a, b = obj["aff"]
        return cls("aff", int(a), int(b))


INF = Place("inf")
INF_PLUS = Place("inf+")
INF_MINUS = Place("inf-")


def affine(a: int, b: int) -> Place:
    return Place("aff", a, b)


class Curve:
    """y^2 = f(x) over F_q with deg f in {5, 6} and f squarefree."""

    genus = 2

    def __init__(self, field: FieldCtx, f: Sequence[int]):
        f = P.trim(list(f))
        if P.deg(f) not in (5, 6):
            raise BadDegree(f"deg f must be 5 or 6, got {P.deg(f)}")
        if P.deg(P.gcd(field, f, P.derivative(field, f))) > 0:
            raise SingularModel("f has a repeated root")
        self.field = field
        self.f = f
        self.degree = P.deg(f)
        self.lc = f[-1]
        # y/x^3 -> +c at inf+, -c at inf-
        self.c_inf = field.sqrt(self.lc) if self.degree == 6 else None
        self._series: dict = {}  # local expansions of y, filled lazily

    @property
    def has_rational_infinity(self) -> bool:
        return self.degree == 5 or self.c_inf is not None

    def infinite_places(self) -> list[Place]:
        if self.degree == 5:
            return [INF]
        return [INF_PLUS, INF_MINUS] if self.c_inf is not None else []

    def d_infinity(self) -> dict[Place, int]:
        """The degree-2 divisor D_inf as a place -> coefficient map."""
        if self.degree == 5:
            return {INF: 2}
        if self.c_inf is None:
            raise SingularModel("no rational places at infinity (leading coefficient is a non-square)")
        return {INF_PLUS: 1, INF_MINUS: 1}

    def f_at(self, a: int) -> int:
        return P.evaluate(self.field, self.f, a)

    def on_curve(self, a: int, b: int) -> bool:
        F = self.field
        return F.mul(b, b) == self.f_at(a)

    @cached_property
    def places(self) -> tuple[Place, ...]:
        return tuple(enumerate_places(self))

    @cached_property
    def place_index(self) -> dict[Place, int]:
        return {pl: i for i, pl in enumerate(self.places)}

    @cached_property
    def affine_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(xs, ys) of the affine places, in place order."""
        aff = [pl for pl in self.places if pl.is_affine]
        return (np.array([pl.a for pl in aff], dtype=np.int64),
                np.array([pl.b for pl in aff], dtype=np.int64))

    def weierstrass_roots(self) -> list[int]:
        return [r for r, _ in P.split_roots(self.field, self.f)[0]]

    def describe(self) -> dict:
        return {"f": list(self.f)}

    def __repr__(self) -> str:
        return f"Curve(y^2 = {P.to_str(self.field, self.f)} over F_{self.field.q})"


def curve_make(field: FieldCtx, f: Sequence[int] | str) -> Curve:
    if isinstance(f, str):
        f = P.parse(field, f)
    return Curve(field, f)


def enumerate_places(c: Curve) -> list[Place]:
    """All rational places: affine by (a, b) in enumeration order, then infinity."""
    F = c.field
    xs = np.arange(F.q, dtype=np.int64)
    fx = P.evaluate_many(F, c.f, xs)
    sq = F.vsquare_mask(fx)
    roots = F.vsqrt(fx)
    out: list[Place] = []
    for a in np.nonzero(sq)[0]:
        a = int(a)
        r = int(roots[a])
        if r == 0:
            out.append(affine(a, 0))
        else:
            nr = F.neg(r)
            out.append(affine(a, min(r, nr)))
            out.append(affine(a, max(r, nr)))
    out.extend(c.infinite_places())
    return out


def hasse_weil_check(c: Curve) -> dict:
    q = c.field.q
    n = len(c.places)
    slack = math.isqrt(16 * q)  # floor(4 sqrt q)
    root = math.isqrt(q)
    return {
        "count": n,
        "bound_ok": abs(n - (q + 1)) <= slack,
        "maximal": root * root == q and n == q + 1 + slack,
    }


def conjugate(c: Curve | None, pl: Place) -> Place:
    """Image under the hyperelliptic involution (x, y) -> (x, -y)."""
    if pl.kind == "aff":
        F = c.field
        return affine(pl.a, F.neg(pl.b))
    if pl.kind == "inf+":
        return INF_MINUS
    if pl.kind == "inf-":
        return INF_PLUS
    return pl
