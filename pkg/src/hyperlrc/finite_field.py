"""Arithmetic in F_{p^m} for odd p.

Elements are plain ints: the coefficient vector (c_0, ..., c_{m-1}) of
c_0 + c_1 u + ... + c_{m-1} u^{m-1} (u a root of the modulus) is encoded as
c_0 + c_1 p + ... + c_{m-1} p^{m-1}.  Integer order is the canonical
enumeration order, so 0 comes first and 1 second.

Multiplication uses log/antilog tables; addition in extension fields uses
Zech logarithms so every table has size O(q).  The same tables are exposed as
numpy arrays for the vectorized ``v*`` helpers and for the compiled kernels.
"""
from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CompositeCharacteristic,
    DivisionByZero,
    EvenCharacteristic,
    FieldError,
    ReducibleModulus,
)

MAX_ORDER = 10**6

# Conway polynomials (low-to-high) for the fields the reproduced tables use;
# element names such as "u+2" in published tables are relative to these.
CONWAY = {
    (3, 2): (2, 2, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 6): (2, 0, 1, 4, 1, 0, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over the prime field, used only while building a context ---

def _pp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _pp_trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _pp_trim(a)
    return a


def _pp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pp_trim(out)


def _pp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _pp_trim(list(a)), _pp_trim(list(b))
    while b:
        a, b = b, _pp_mod(a, b, p)
    return a


def _pp_powmod(base: list[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pp_mod(list(base), m, p)
    while e:
        if e & 1:
            result = _pp_mod(_pp_mul(result, base, p), m, p)
        base = _pp_mod(_pp_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    for d in prime_factors(m):
        h = _pp_powmod(x, p ** (m // d), modulus, p)
        diff = _pp_trim([(c - (x[i] if i < 2 else 0)) % p
                         for i, c in enumerate(h + [0] * max(0, 2 - len(h)))])
        if len(_pp_gcd(list(modulus), diff, p)) != 1:
            return False
    h = _pp_powmod(x, p ** m, modulus, p)
    h = h + [0] * max(0, 2 - len(h))
    return _pp_trim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(h)]) == []


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, lower coefficients in code order."""
    for code in range(p ** m):
        coeffs = [(code // p ** i) % p for i in range(m)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")


class FieldCtx:
    """Finite field F_{p^m}, p odd.  Immutable after construction."""

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if not is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if p ** m > MAX_ORDER:
            raise FieldError(f"field order {p}^{m} exceeds {MAX_ORDER}")
        if modulus is None:
            modulus = first_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {m}: {list(modulus)}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p, self.m, self.modulus = p, m, modulus
        self.q = p ** m
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p ** i) % p for i in range(self.m)]

    def _undigits(self, ds: Iterable[int]) -> int:
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _pp_mul(self._digits(a), self._digits(b), self.p)
        return self._undigits(_pp_mod(prod, self.modulus, self.p))

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        q1 = q - 1
        factors = prime_factors(q1) if q1 > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._slow_pow(g, q1 // f) != 1 for f in factors):
                gen = g
                break
        self.generator = gen
        exp = [0] * (2 * q1 + 1)
        log = [-1] * q
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        for i in range(q1, 2 * q1 + 1):
            exp[i] = exp[i - q1]
        # zech[n] = log(1 + g^n), -1 when 1 + g^n == 0
        zech = [-1] * q1
        for n in range(q1):
            a = exp[n]
            s = a - a % p + (a % p + 1) % p
            zech[n] = log[s] if s else -1
        neg = [self._undigits((-d) % p for d in self._digits(a)) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(q1 - log[a]) % q1]
        self._exp, self._log, self._zech, self._neg, self._inv = exp, log, zech, neg, inv
        self._q1 = q1
        self.exp_np = np.array(exp, dtype=np.int64)
        self.log_np = np.array([max(v, 0) for v in log], dtype=np.int64)
        self.zech_np = np.array(zech, dtype=np.int64)
        self.neg_np = np.array(neg, dtype=np.int64)
        self.inv_np = np.array(inv, dtype=np.int64)

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    # -- scalar arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        d = self._log[b] - la
        if d < 0:
            d += self._q1
        z = self._zech[d]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self._exp[self._log[a] + self._q1 - self._log[b]]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self._q1]

    def arith(self, op: str, *operands: int) -> int:
        """Dispatch by name: add, sub, mul, div, neg, inv, pow."""
        fn = {"add": self.add, "sub": self.sub, "mul": self.mul, "div": self.div,
              "neg": self.neg, "inv": self.inv, "pow": self.pow}.get(op)
        if fn is None:
            raise ValueError(f"unknown field operation {op!r}")
        return fn(*operands)

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> F_p -> F_q."""
        return n % self.p

    # -- roots ----------------------------------------------------------------

    def nth_root(self, a: int, n: int) -> int | None:
        """First (in enumeration order) b with b**n == a, or None."""
        if n < 1:
            raise ValueError("n must be positive")
        if a == 0:
            return 0
        q1 = self._q1
        la = self._log[a]
        g = math.gcd(n, q1)
        if la % g:
            return None
        # n k = la (mod q1): k0 + j q1/g for j in range(g)
        n_, la_, m_ = n // g, la // g, q1 // g
        k0 = (la_ * pow(n_, -1, m_)) % m_ if m_ > 1 else 0
        return min(self._exp[(k0 + j * m_) % q1] for j in range(g))

    def sqrt(self, a: int) -> int | None:
        return self.nth_root(a, 2)

    def is_square(self, a: int) -> bool:
        return a == 0 or self._log[a] % 2 == 0

    def order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        return self._q1 // math.gcd(self._log[a], self._q1)

    def element_of_order(self, n: int) -> int | None:
        """First element of exact multiplicative order n, or None."""
        q1 = self._q1
        if n < 1 or q1 % n:
            return None
        step = q1 // n
        return min(self._exp[k * step] for k in range(n) if math.gcd(k, n) == 1)

    # -- presentation ---------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def coeffs(self, a: int) -> list[int]:
        return self._digits(a)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        cs = [int(c) % self.p for c in cs]
        if len(cs) > self.m:
            cs = _pp_mod(cs, self.modulus, self.p)
        return self._undigits(cs)

    @property
    def u(self) -> int:
        """The class of the modulus variable (equals p when m > 1)."""
        return self.from_coeffs([0, 1])

    def to_str(self, a: int) -> str:
        ds = self._digits(a)
        terms = []
        for i, d in enumerate(ds):
            if d == 0:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                mono = "u" if i == 1 else f"u^{i}"
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, s: str | int | Sequence[int]) -> int:
        """Parse an int (prime-field value), a coefficient list, or "c0+c1*u+..."."""
        if isinstance(s, (int, np.integer)):
            return int(s) % self.p
        if not isinstance(s, str):
            return self.from_coeffs(list(s))
        text = s.replace(" ", "").replace("-", "+-")
        cs = [0] * (self.m + 1)
        for term in filter(None, text.split("+")):
            sign = -1 if term.startswith("-") else 1
            term = term.lstrip("-")
            if "u" not in term:
                cs[0] += sign * int(term)
                continue
            coef, _, mono = term.rpartition("*") if "*" in term else ("", "", term)
            coef = int(coef) if coef else 1
            exp = int(mono.split("^")[1]) if "^" in mono else 1
            if exp >= len(cs):
                cs.extend([0] * (exp + 1 - len(cs)))
            cs[exp] += sign * coef
        return self.from_coeffs(cs)

    def describe(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    # -- vectorized arithmetic on int64 arrays -----------------------------

    @cached_property
    def _small_add_table(self) -> np.ndarray | None:
        if self.q > 1024:
            return None
        a = np.arange(self.q, dtype=np.int64)
        return self._vadd_zech(a[:, None], a[None, :])

    def add_table(self) -> np.ndarray | None:
        """Full q x q addition table for small fields (kernels use it when present)."""
        return self._small_add_table

    def _vadd_zech(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        la = self.log_np[a]
        d = (self.log_np[b] - la) % self._q1
        z = self.zech_np[d]
        r = np.where(z < 0, 0, self.exp_np[la + np.maximum(z, 0)])
        r = np.where(a == 0, b, r)
        return np.where(b == 0, a, r)

    def vadd(self, a, b) -> np.ndarray:
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.p
        return self._vadd_zech(a, b)

    def vneg(self, a) -> np.ndarray:
        return self.neg_np[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        r = self.exp_np[self.log_np[a] + self.log_np[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.inv_np[a]

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a = self.vinv(a)
            e = -e
        r = self.exp_np[(self.log_np[a] * e) % self._q1]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, r)

    def vsquare_mask(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a == 0) | (self.log_np[a] % 2 == 0)

    def vsqrt(self, a) -> np.ndarray:
        """Elementwise square root for squares: the smaller-coded of the two roots."""
        a = np.asarray(a, dtype=np.int64)
        r = self.exp_np[self.log_np[a] // 2]
        r = np.minimum(r, self.neg_np[r])
        return np.where(a == 0, 0, r)


def ff_make(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    return FieldCtx(p, m, modulus)


def conway_field(p: int, m: int) -> FieldCtx:
    """Field with the Conway modulus when tabulated, else the default modulus."""
    return FieldCtx(p, m, CONWAY.get((p, m)))
