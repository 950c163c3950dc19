"""Field arithmetic against sympy's dense GF(p)[u] arithmetic as the oracle."""
import functools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_mul, gf_pow_mod, gf_rem

from hyperlrc import conway_field, ff_make
from hyperlrc.errors import (CompositeCharacteristic, DivisionByZero, EvenCharacteristic,
                             FieldError, ReducibleModulus)

FIELDS = [(3, 1), (5, 1), (3, 2), (5, 2), (3, 4), (13, 2), (5, 6)]
field = functools.lru_cache(maxsize=None)(conway_field)


def to_sym(F, a):
    """Element code -> sympy dense poly (highest degree first)."""
    ds = [(a // F.p ** i) % F.p for i in range(F.m)]
    while ds and ds[-1] == 0:
        ds.pop()
    return [ZZ(d) for d in reversed(ds)]


def from_sym(F, poly):
    return sum(int(c) * F.p ** i for i, c in enumerate(reversed(poly)))


def sym_mod(F):
    return [ZZ(c) for c in reversed(F.modulus)]


def oracle_mul(F, a, b):
    return from_sym(F, gf_rem(gf_mul(to_sym(F, a), to_sym(F, b), F.p, ZZ), sym_mod(F), F.p, ZZ))


def oracle_add(F, a, b):
    return from_sym(F, gf_add(to_sym(F, a), to_sym(F, b), F.p, ZZ))


@pytest.mark.parametrize("p,m", FIELDS)
def test_vectorised_ops_match_oracle_on_10k_samples(p, m):
    F = field(p, m)
    rng = np.random.default_rng(1234 + p * 10 + m)
    a = rng.integers(0, F.q, 10_000)
    b = rng.integers(0, F.q, 10_000)
    c = rng.integers(0, F.q, 10_000)
    s, pr = F.vadd(a, b), F.vmul(a, b)
    for i in range(0, 10_000, 97):
        assert s[i] == oracle_add(F, int(a[i]), int(b[i]))
        assert pr[i] == oracle_mul(F, int(a[i]), int(b[i]))
    # axioms, all 10^4 triples
    assert np.array_equal(F.vadd(a, b), F.vadd(b, a))
    assert np.array_equal(F.vmul(a, b), F.vmul(b, a))
    assert np.array_equal(F.vadd(F.vadd(a, b), c), F.vadd(a, F.vadd(b, c)))
    assert np.array_equal(F.vmul(F.vmul(a, b), c), F.vmul(a, F.vmul(b, c)))
    assert np.array_equal(F.vmul(a, F.vadd(b, c)), F.vadd(F.vmul(a, b), F.vmul(a, c)))
    assert not F.vadd(a, F.vneg(a)).any()
    nz = a[a != 0]
    assert np.all(F.vmul(nz, F.vinv(nz)) == 1)
    assert np.array_equal(F.vsub(a, b), F.vadd(a, F.vneg(b)))


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**9), st.integers(0, 10**9), st.integers(0, 50))
def test_scalar_ops_match_oracle(pm, x, y, e):
    F = field(*pm)
    a, b = x % F.q, y % F.q
    assert F.mul(a, b) == oracle_mul(F, a, b)
    assert F.add(a, b) == oracle_add(F, a, b)
    assert F.sub(F.add(a, b), b) == a
    want = from_sym(F, gf_pow_mod(to_sym(F, a), e, sym_mod(F), F.p, ZZ)) if a else int(e == 0)
    assert F.pow(a, e) == want
    if b:
        assert F.mul(F.div(a, b), b) == a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 10**9))
def test_sqrt_and_roots(pm, x):
    F = field(*pm)
    a = x % F.q
    r = F.sqrt(a)
    squares = {F.mul(v, v) for v in range(F.q)} if F.q <= 4096 else None
    if r is None:
        assert not F.is_square(a)
        if squares is not None:
            assert a not in squares
    else:
        assert F.mul(r, r) == a


def test_conway_moduli_relations():
    F9, F25 = conway_field(3, 2), conway_field(5, 2)
    u = F25.u
    assert F25.mul(u, u) == F25.parse("3+u")          # u^2 = u + 3
    assert F25.order(u) == 24                          # primitive
    assert F9.order(F9.u) == 8
    assert F25.to_str(F25.parse("3+4*u")) == "3+4*u"


def test_field_errors():
    with pytest.raises(EvenCharacteristic):
        ff_make(2, 3)
    with pytest.raises(CompositeCharacteristic):
        ff_make(9, 1)
    with pytest.raises(ReducibleModulus):
        ff_make(5, 2, [1, 0, 1])                      # u^2 + 1 = (u - 2)(u + 2)
    with pytest.raises(FieldError):
        ff_make(3, 20)
    with pytest.raises(DivisionByZero):
        conway_field(5, 2).inv(0)


def test_default_modulus_is_first_irreducible():
    F = ff_make(3, 2)
    assert list(F.modulus) == [1, 0, 1]               # u^2 + 1 is the first monic irreducible


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (13, 2)])
def test_element_of_order_and_nth_root(p, m):
    F = field(p, m)
    for n in (2, 4, 8):
        if (F.q - 1) % n == 0:
            g = F.element_of_order(n)
            assert F.order(g) == n
    m1 = F.neg(1)
    w = F.nth_root(m1, 4)
    if (F.q - 1) % 8 == 0:
        assert F.pow(w, 4) == m1
