"""Projection symmetries, Seifert circles, and periodicity obstructions."""

import random

import pytest

from altknot.build import torus2, pretzel
from altknot.errors import NotAKnot, NotAlternating, NotATree
from altknot.periodicity import (AtomTree, projection_symmetries,
                                 is_q_periodic_projection, atom_lemma,
                                 obstruction_report, periodicity_report,
                                 find_periodic_projection, seifert_circles,
                                 seifert_report)
from altknot.rational import cardan_to_diagram

from conftest import atom_knot_12, small_corpus


def test_torus_diagrams_are_strictly_periodic():
    for q in (3, 5, 7):
        s = is_q_periodic_projection(torus2(q), q)
        assert s is not None
        assert s.order == q and s.strict
        assert len(s.fixed_cells) == 2


def test_symmetry_orders_divide_group():
    d = pretzel(3, 3, 3)
    orders = sorted(s.order for s in projection_symmetries(d))
    assert 3 in orders
    assert is_q_periodic_projection(d, 3) is not None
    assert is_q_periodic_projection(d, 2) is None


def test_eightfold_necklace_not_strictly_four_periodic(necklace8):
    assert is_q_periodic_projection(necklace8, 8) is not None
    assert is_q_periodic_projection(necklace8, 4) is None


def test_seifert_circles_basics():
    assert seifert_report(torus2(3)) == seifert_report(torus2(3))
    r = seifert_report(torus2(3))
    assert (r.circles, r.genus) == (2, 1)
    r7 = seifert_report(torus2(7))
    assert (r7.circles, r7.genus) == (2, 3)
    for d in small_corpus():
        if len(d.components) != 1:
            continue
        cs = seifert_circles(d)
        assert sum(len(c) for c in cs) == 2 * d.n
        assert (d.n - len(cs) + 1) % 2 == 0


def test_seifert_orbit_sizes():
    d = pretzel(3, 3, 3)
    s3 = is_q_periodic_projection(d, 3)
    r = seifert_report(d, s3)
    assert sorted(r.orbit_sizes) == [1, 1, 3, 3]


def test_obstruction_crossing_count():
    rep = obstruction_report(torus2(7), 4)
    assert rep.verdict == "obstructed"
    assert "CrossingCount" in rep.reasons


def test_obstruction_rational():
    d = cardan_to_diagram([2, 3]).diagram
    rep = obstruction_report(d, 3)
    assert rep.verdict == "obstructed"
    assert "RationalKnot" in rep.reasons
    # a (2, q) torus diagram is rational but exempt
    rep2 = obstruction_report(torus2(9), 3)
    assert "RationalKnot" not in rep2.reasons


def test_obstruction_no_tree_automorphism():
    rep = obstruction_report(pretzel(3, 4, 5), 3)
    assert rep.verdict == "obstructed"
    assert "NoTreeAutomorphism" in rep.reasons


def test_atom_lemma_forced_vertices():
    path3 = AtomTree(
        ({"name": "a"}, {"name": "b"}, {"name": "a"}),
        ((0, 1), (1, 2)))
    assert atom_lemma(path3, 2) == {1}
    single = AtomTree(({"name": "a"},), ())
    assert atom_lemma(single, 5) == {0}
    with pytest.raises(NotATree):
        AtomTree((), ()).validate()
    with pytest.raises(NotATree):
        AtomTree(({"name": "a"}, {"name": "b"}), ()).validate()


def test_atom_lemma_obstruction_pipeline():
    d = atom_knot_12()
    atoms = AtomTree(
        ({"name": "center", "is_rational": True, "is_torus2q": False},
         {"name": "p", "periods": [2, 3]},
         {"name": "p", "periods": [2, 3]},
         {"name": "p", "periods": [2, 3]}),
        ((0, 1), (0, 2), (0, 3)))
    rep = obstruction_report(d, 3, atoms)
    assert rep.verdict == "obstructed"
    assert rep.reasons == ("AtomLemma",)


def test_visible_periodicity_search():
    d = atom_knot_12()
    rep = periodicity_report(d, 3)
    assert rep.verdict == "visible"
    assert rep.witness is not None and rep.symmetry.order == 3
    assert rep.witness.n % 3 == 0


def test_find_periodic_projection_negative():
    w, s, truncated = find_periodic_projection(torus2(5), 3)
    assert w is None and s is None and not truncated


def test_input_validation():
    with pytest.raises(NotAKnot):
        obstruction_report(torus2(4), 3)
    import dataclasses
    d = torus2(5)
    flipped = dataclasses.replace(d, over_axis=tuple(
        a if c else 1 - a for c, a in enumerate(d.over_axis)))
    with pytest.raises(NotAlternating):
        obstruction_report(flipped, 3)


def test_parity_fuzz_no_even_witness():
    # For even q, any strict symmetry of a knot projection must not fix a
    # twisted band region pointwise; sample corpus knots and check the
    # reported admissible automorphisms obey the parity rule.
    rng = random.Random(7)
    knots = [d for d in small_corpus() if len(d.components) == 1
             and d.n <= 14]
    for d in rng.sample(knots, min(8, len(knots))):
        for q in (2, 4):
            rep = obstruction_report(d, q)
            if rep.verdict == "obstructed":
                continue
            w, s, _ = find_periodic_projection(d, q, budget=200)
            if w is None:
                continue
            assert s.order == q and s.strict
