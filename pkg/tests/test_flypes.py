"""Flype moves, orbits, and closures."""

import pytest

from altknot.build import torus2, pretzel
from altknot.diagram import is_alternating
from altknot.errors import IllegalMove, BudgetExceeded
from altknot.flypes import (FlypeMove, available_flypes, flype_orbits,
                            apply_flype, normalize_twists, flype_closure,
                            flype_equivalent)
from altknot.trees import canonical_tree, tree_isomorphic

from conftest import weight_necklace


def test_torus_and_pretzels_have_no_flypes():
    for d in [torus2(3), torus2(6), pretzel(3, 3, 3), pretzel(2, 3, 4)]:
        assert available_flypes(d) == []
        res = flype_closure(d)
        assert not res.truncated
        assert [x.canonical_form for x in res.diagrams] == [d.canonical_form]


def test_orbits_list_twist_regions():
    d = weight_necklace(1, 1, 1)
    orbs = flype_orbits(d)
    # the necklace band plus the three pendant spires
    assert len(orbs) == 4
    band = [o for o in orbs if len(o.twist_regions) == 3]
    assert len(band) == 1
    assert sorted(w for _, _, w in band[0].twist_regions) == [1, 1, 1]


def test_apply_flype_invariants(corpus):
    for d in corpus:
        for m in available_flypes(d):
            d2 = apply_flype(d, m)
            assert d2.n == d.n
            assert is_alternating(d2)
            assert tree_isomorphic(canonical_tree(d), canonical_tree(d2))


def test_flype_preserves_orbit_weights():
    d = weight_necklace(2, 1, 0)
    base = sorted(sum(w for _, _, w in o.twist_regions)
                  for o in flype_orbits(d))
    for m in available_flypes(d):
        d2 = apply_flype(d, m)
        got = sorted(sum(w for _, _, w in o.twist_regions)
                     for o in flype_orbits(d2))
        assert got == base


def test_closure_matches_direct_construction():
    # Every way of distributing the three band crossings of the necklace
    # among its three gaps, built directly, must reproduce the closure.
    res = flype_closure(weight_necklace(1, 1, 1))
    assert not res.truncated
    got = {x.canonical_form for x in res.diagrams}
    want = set()
    for i in range(4):
        for j in range(4 - i):
            k = 3 - i - j
            want.add(weight_necklace(i, j, k).canonical_form)
    assert got == want
    assert len(got) == 6


def test_closure_members_pairwise_equivalent():
    d = weight_necklace(3, 0, 0)
    res = flype_closure(d)
    for x in res.diagrams:
        assert flype_equivalent(d, x)


def test_flype_equivalent_negative():
    assert not flype_equivalent(torus2(3), torus2(5))
    assert not flype_equivalent(weight_necklace(1, 1, 1), torus2(9))


def test_flype_equivalent_budget():
    d = weight_necklace(1, 1, 1)
    other = weight_necklace(3, 0, 0)
    with pytest.raises(BudgetExceeded) as ei:
        flype_equivalent(d, pretzel(4, 4, 3), budget=2)
    assert ei.value.partial.truncated
    assert flype_equivalent(d, other)


def test_normalize_twists_identity_on_alternating(corpus):
    for d in corpus:
        assert normalize_twists(d).canonical_form == d.canonical_form


def test_illegal_moves():
    d = weight_necklace(1, 1, 1)
    m = available_flypes(d)[0]
    with pytest.raises(IllegalMove):
        apply_flype(d, FlypeMove(m.tbd, m.active_crossing, m.source_twist,
                                 m.source_twist, m.flipped_tangle))
    with pytest.raises(IllegalMove):
        apply_flype(d, FlypeMove(99, m.active_crossing, m.source_twist,
                                 m.target_twist, m.flipped_tangle))
    with pytest.raises(IllegalMove):
        apply_flype(d, FlypeMove(m.tbd, m.active_crossing, m.source_twist,
                                 m.target_twist, frozenset()))
    d2 = apply_flype(d, m)
    with pytest.raises(IllegalMove):
        apply_flype(torus2(5), m)


def test_flype_round_trip():
    d = weight_necklace(2, 0, 1)
    m = available_flypes(d)[0]
    d2 = apply_flype(d, m)
    back = {apply_flype(d2, mm).canonical_form
            for mm in available_flypes(d2)}
    assert d.canonical_form in back
