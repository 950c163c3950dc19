"""Dense univariate polynomials over a FieldCtx.

A polynomial is a tuple of field elements, low degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DivisionByZero
from .finite_field import FieldCtx

Poly = tuple

ZERO: Poly = ()


def trim(a: Sequence[int]) -> Poly:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(int(c) for c in a[:n])


def deg(a: Poly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def const(F: FieldCtx, c: int) -> Poly:
    return (c,) if c else ()


def monomial(c: int, n: int) -> Poly:
    return tuple([0] * n + [c]) if c else ()


X: Poly = (0, 1)
ONE: Poly = (1,)


def add(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        if c:
            out[i] = F.add(out[i], c)
    return trim(out)


def neg(F: FieldCtx, a: Poly) -> Poly:
    return tuple(F.neg(c) for c in a)


def sub(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    return add(F, a, neg(F, b))


def scale(F: FieldCtx, a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    if c == 1:
        return a
    return tuple(F.mul(x, c) for x in a)


def mul(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return scale(F, a, b[0])
    if len(b) > 24:
        return _mul_np(F, a, b)
    out = [0] * (len(a) + len(b) - 1)
    fmul, fadd = F.mul, F.add
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                if x:
                    out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(out)


def _mul_np(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    av = np.array(a, dtype=np.int64)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for j, y in enumerate(b):
        if y:
            out[j:j + len(a)] = F.vadd(out[j:j + len(a)], F.vmul(av, y))
    return trim(out.tolist())


def power(F: FieldCtx, a: Poly, e: int) -> Poly:
    r: Poly = ONE
    while e:
        if e & 1:
            r = mul(F, r, a)
        a = mul(F, a, a)
        e >>= 1
    return r


def divmod_(F: FieldCtx, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    qt = [0] * (len(a) - db)
    fmul, fsub = F.mul, F.sub
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = fmul(c, inv_lead)
        qt[k - db] = c
        for i in range(db + 1):
            if b[i]:
                r[k - db + i] = fsub(r[k - db + i], fmul(c, b[i]))
    return trim(qt), trim(r[:db])


def mod(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    return divmod_(F, a, b)[1]


def exact_div(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    qt, r = divmod_(F, a, b)
    if r:
        raise ValueError("polynomial division is not exact")
    return qt


def monic(F: FieldCtx, a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    return scale(F, a, F.inv(a[-1]))


def gcd(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def evaluate(F: FieldCtx, a: Poly, x: int) -> int:
    r = 0
    fmul, fadd = F.mul, F.add
    for c in reversed(a):
        r = fadd(fmul(r, x), c)
    return r


def evaluate_many(F: FieldCtx, a: Poly, xs: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64)
    r = np.zeros_like(xs)
    for c in reversed(a):
        r = F.vadd(F.vmul(r, xs), c)
    return r


def derivative(F: FieldCtx, a: Poly) -> Poly:
    return trim([F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def from_roots(F: FieldCtx, roots: Sequence[int]) -> Poly:
    r: Poly = ONE
    for a in roots:
        r = mul(F, r, (F.neg(a), 1))
    return r


def linear(F: FieldCtx, a: int) -> Poly:
    """x - a."""
    return (F.neg(a), 1)


def ord_at(F: FieldCtx, a: Poly, r: int) -> int:
    """Multiplicity of r as a root of a (a must be nonzero)."""
    if not a:
        raise ValueError("order of the zero polynomial")
    k = 0
    lin = linear(F, r)
    while evaluate(F, a, r) == 0:
        a = exact_div(F, a, lin)
        k += 1
    return k


def taylor(F: FieldCtx, a: Poly, r: int, prec: int) -> list[int]:
    """First ``prec`` coefficients of a(r + t) in t."""
    # synthetic division repeated prec times
    out = []
    cur = list(a)
    for _ in range(prec):
        if not cur:
            out.append(0)
            continue
        acc = 0
        nxt = [0] * (len(cur) - 1)
        for k in range(len(cur) - 1, -1, -1):
            acc = F.add(F.mul(acc, r), cur[k])
            if k:
                nxt[k - 1] = acc
        out.append(acc)
        cur = nxt
    return out


def mobius_compose(F: FieldCtx, a: Poly, mat: tuple[int, int, int, int], n: int | None = None) -> Poly:
    """(c x + d)^n * a((a' x + b)/(c x + d)) with n = deg a by default."""
    A, B, C, D = mat
    if n is None:
        n = deg(a)
    if not a:
        return ()
    num = (B, A) if A else ((B,) if B else ())
    den = (D, C) if C else ((D,) if D else ())
    num, den = trim(num), trim(den)
    # Horner on the homogenised form
    res: Poly = const(F, a[-1])
    den_pow: Poly = ONE
    for k in range(len(a) - 2, -1, -1):
        den_pow = mul(F, den_pow, den)
        res = add(F, mul(F, res, num), scale(F, den_pow, a[k]))
    extra = n - deg(a)
    if extra:
        res = mul(F, res, power(F, den, extra))
    return res


def split_roots(F: FieldCtx, a: Poly) -> tuple[list[tuple[int, int]], int]:
    """Roots in F_q with multiplicity, and the degree left unexplained.

    Returns ``([(root, mult), ...] sorted by root, residual_degree)``; the
    residual is the degree of the part of ``a`` with no roots in F_q.
    """
    if not a:
        raise ValueError("roots of the zero polynomial")
    if deg(a) == 0:
        return [], 0
    sq = _frobenius_gcd(F, a)
    if deg(sq) <= 0:
        return [], deg(a)
    xs = np.arange(F.q, dtype=np.int64)
    vals = evaluate_many(F, sq, xs)
    roots = [int(r) for r in np.nonzero(vals == 0)[0]]
    out = []
    total = 0
    for r in roots:
        k = ord_at(F, a, r)
        out.append((r, k))
        total += k
    return out, deg(a) - total


def _frobenius_gcd(F: FieldCtx, a: Poly) -> Poly:
    """gcd(a, x^q - x): the product of the distinct linear factors of a."""
    a = monic(F, a)
    if deg(a) <= 2 or F.q <= 4 * deg(a):
        xs = np.arange(F.q, dtype=np.int64)
        vals = evaluate_many(F, a, xs)
        return from_roots(F, [int(r) for r in np.nonzero(vals == 0)[0]])
    # x^q mod a by repeated squaring
    result: Poly = ONE
    base: Poly = mod(F, X, a)
    e = F.q
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), a)
        base = mod(F, mul(F, base, base), a)
        e >>= 1
    return gcd(F, a, sub(F, result, X))


def to_str(F: FieldCtx, a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        cs = F.to_str(c)
        if "+" in cs and i:
            cs = f"({cs})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


def parse(F: FieldCtx, text: str, var: str = "x") -> Poly:
    """Parse strings such as ``x5+x3+2x``, ``x^6 + x^3 + 2`` or ``x^2+(u+1)*x``.

    Coefficients without ``u`` are prime-field integers.
    """
    s = text.replace(" ", "").replace("**", "^")
    terms: list[str] = []
    depth, cur = 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur:
            terms.append(cur)
            cur = "" if ch == "+" else "-"
            continue
        cur += ch
    if cur:
        terms.append(cur)
    coeffs: dict[int, int] = {}
    for term in terms:
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        if var in term:
            head, _, tail = term.rpartition(var)
            tail = tail.lstrip("^")
            e = int(tail) if tail else 1
            head = head.rstrip("*")
        else:
            head, e = term, 0
        head = head.strip("()") if head.startswith("(") and head.endswith(")") else head
        c = F.parse(head) if head else 1
        if sign < 0:
            c = F.neg(c)
        coeffs[e] = F.add(coeffs.get(e, 0), c)
    top = max(coeffs) if coeffs else -1
    return trim([coeffs.get(i, 0) for i in range(top + 1)])
