import time

import numpy as np
import pytest

from hyperlrc.automorphisms import (CATALOG_ORDERS, act_on_place, aut_catalog, catalog_group,
                                    enumerate_subgroups, group_generate, mat_mul,
                                    minus_identity, orbit_analysis, place_permutation,
                                    verify_automorphism, x_action_key)
from hyperlrc.errors import ConditionNotMet, NotAnAutomorphism

from conftest import curve

# (p, m, f, label): one curve per cataloged family, under its field hypotheses
FAMILIES = [
    (3, 2, "x5+x3+2x", "D8"),
    (5, 2, "x6+x3+2", "D12"),
    (13, 2, "x5+x", "S4~"),
    (5, 2, "x5+x", "S5~"),
    (3, 4, "x5+1", "C10"),
]


@pytest.mark.parametrize("p,m,f,label", FAMILIES)
def test_catalog_generators_are_automorphisms(p, m, f, label):
    c = curve(p, m, f)
    (lab, gens), = aut_catalog(c)
    assert lab == label
    for g in gens:
        assert verify_automorphism(c, g)
        perm = place_permutation(c, g)
        assert sorted(perm.tolist()) == list(range(len(c.places)))
        # the permutation agrees with the place-by-place action
        for i in range(0, len(c.places), 7):
            assert c.places[perm[i]] == act_on_place(c, g, c.places[i])


@pytest.mark.parametrize("p,m,f,label", FAMILIES)
def test_group_orders(p, m, f, label):
    c = curve(p, m, f)
    t0 = time.perf_counter()
    lab, grp = catalog_group(c)
    elapsed = time.perf_counter() - t0
    assert grp.order == CATALOG_ORDERS[label]
    assert grp.minus_identity_index() is not None
    if label == "S5~":
        assert elapsed < 10.0


def test_group_table_is_a_group():
    c = curve(5, 2, "x5+x")
    _, grp = catalog_group(c)
    T = grp.mult_table
    n = grp.order
    # closure, identity, inverses, associativity on a sample
    assert T.shape == (n, n) and T.min() >= 0 and T.max() < n
    inv = grp.inverse_index
    e = grp.index[(1, 0, 0, 1)]
    assert all(T[e, a] == a == T[a, e] for a in range(n))
    rng = np.random.default_rng(0)
    for _ in range(500):
        a, b, d = (int(v) for v in rng.integers(0, n, 3))
        assert T[T[a, b], d] == T[a, T[b, d]]
        assert T[a, inv[a]] == e


def test_s4_x_actions_match_listing_over_f169():
    c = curve(13, 2, "x5+x")
    F = c.field
    E = F.parse

    def act(a, b, cc, d):
        return x_action_key(F, (E(a), E(b), E(cc), E(d)))

    listed = {
        act("3*u+5", -2, 3, "-3*u-5"), act(1, 0, 0, 1), act(-5, 0, 0, 1), act(-1, 0, 0, 1),
        act(5, 0, 0, 1), act(-3, "-2*u+1", "-2*u+1", 2), act(2, "2*u-1", "2*u-1", -3),
        act("2*u-1", -3, 2, "2*u-1"), act(0, "u+6", "-5*u-4", 0), act("2*u-1", 3, -2, "2*u-1"),
        act(-2, "-3*u-5", "3*u+5", 3), act(-3, "-3*u-5", "3*u+5", 2),
        act("-2*u+1", 2, -3, "-2*u+1"), act(0, "5*u+4", "-u-6", 0),
        act("-2*u+1", -2, 3, "-2*u+1"), act("3*u+5", 3, -2, "-3*u-5"),
        act(-3, "3*u+5", "-3*u-5", 2), act(2, "-3*u-5", "3*u+5", -3), act(0, 1, 1, 0),
        act(0, -1, 1, 0), act(2, "-2*u+1", "-2*u+1", -3), act(-3, "2*u-1", "2*u-1", 2),
        act("3*u+5", -3, 2, "-3*u-5"), act("3*u+5", 2, -3, "-3*u-5"),
    }
    assert len(listed) == 24
    for w in range(F.q):
        if F.pow(w, 4) != F.neg(1):
            continue
        _, grp = catalog_group(c, {"omega": F.to_str(w)})
        ours = set(grp.x_actions())
        assert grp.distinct_x_count() == 24
        assert {act(-5, 0, 0, 1), act(-1, 0, 0, 1), act(0, 1, 1, 0)} <= ours
        assert ours == listed


@pytest.mark.parametrize("p,m,f,label", FAMILIES)
def test_orbits_partition_places(p, m, f, label):
    c = curve(p, m, f)
    _, grp = catalog_group(c)
    info = orbit_analysis(grp, c)
    seen = [pl for orb in info["fibers"] + info["ramified"] for pl in orb]
    assert sorted(seen) == sorted(c.places)
    assert all(len(orb) == grp.order for orb in info["fibers"])
    assert all(len(orb) < grp.order for orb in info["ramified"])
    # orbit-stabilizer on every orbit
    for orb in info["fibers"] + info["ramified"]:
        assert grp.order % len(orb) == 0


def test_subgroup_enumeration_s5():
    c = curve(5, 2, "x5+x")
    _, grp = catalog_group(c)
    subs = enumerate_subgroups(grp)
    orders = sorted({len(s) for s in subs})
    assert orders == [2, 4, 6, 8, 10, 12, 16, 20, 24, 40, 48, 120, 240]
    mi = grp.minus_identity_index()
    T = grp.mult_table
    for s in subs[:40]:
        ss = set(s)
        assert mi in ss
        assert all(T[a, b] in ss for a in s for b in s)


def test_rejections():
    with pytest.raises(ConditionNotMet):
        aut_catalog(curve(3, 1, "x5+x3+2x"))       # 4 does not divide q - 1
    with pytest.raises(ConditionNotMet):
        aut_catalog(curve(5, 2, "x5+2x+1"))        # outside the catalog
    c = curve(5, 2, "x5+x")
    F = c.field
    assert not verify_automorphism(c, (1, 1, 0, 1))  # x -> x + 1 is not an automorphism
    with pytest.raises(NotAnAutomorphism):
        group_generate(c, [(1, 1, 0, 1)])
    mi = minus_identity(F)
    assert mat_mul(F, mi, mi) == (1, 0, 0, 1)
