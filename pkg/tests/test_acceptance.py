"""End-to-end acceptance checks for the decomposition/periodicity stack."""

import json
import math
import random
import time
from itertools import combinations

import pytest

from altknot.build import torus2, pretzel
from altknot.circles import decompose, essential_family
from altknot.flypes import (available_flypes, apply_flype, flype_orbits,
                            flype_closure)
from altknot.periodicity import (AtomTree, is_q_periodic_projection,
                                 find_periodic_projection,
                                 periodicity_report)
from altknot.rational import (Frac, eval_cf, expand_homogeneous,
                              is_homogeneous, cardan_to_diagram,
                              fraction_of)
from altknot.trees import canonical_tree, essential_tree, tree_isomorphic

from conftest import (small_corpus, atom_knot_12, pendant_necklace,
                      eightfold_necklace, weight_necklace)


# 1. Standard (2, q) torus diagrams display their q-periodicity, fast.
def test_torus_periodicity_visible_and_fast():
    for q in (3, 5, 7):
        t0 = time.monotonic()
        s = is_q_periodic_projection(torus2(q), q)
        dt = time.monotonic() - t0
        assert s is not None and s.strict and s.order == q
        assert len(s.fixed_cells) == 2
        assert dt < 1.0


# 2. Regression: the pendant-necklace projection has exactly 7 canonical
#    and 6 essential circle classes, with the expected labeled trees.
def test_pendant_necklace_circles_and_trees():
    d = pendant_necklace()
    dec = decompose(d)
    ess = essential_family(d)
    assert len(dec.family.circles) == 7
    assert len(ess.circles) == 6

    t = canonical_tree(d)
    assert sorted(t.labels) == [-2, -2, -2, -1, 2, 2, 2, 4]
    deg = {v: sum(1 for e in t.edges if v in e) for v in range(len(t.labels))}
    center = t.labels.index(4)
    assert deg[center] == 4
    minus1 = t.labels.index(-1)
    assert deg[minus1] == 3
    # the two-level tangle hangs off the central band as a chain
    chain = [v for v in range(len(t.labels))
             if t.labels[v] == -2 and deg[v] == 2]
    assert len(chain) == 1
    edges = set(tuple(sorted(e)) for e in t.edges)
    assert tuple(sorted((center, chain[0]))) in edges
    leaf = [v for a, b in t.edges if chain[0] in (a, b)
            for v in (a, b) if v not in (chain[0], center)]
    assert len(leaf) == 1 and t.labels[leaf[0]] == 2 and deg[leaf[0]] == 1

    e = essential_tree(d)
    assert len(e.labels) == 7 and len(e.edges) == 6
    fracs = sorted(str(x) for x in e.labels if isinstance(x, Frac))
    ints = sorted(x for x in e.labels if not isinstance(x, Frac))
    assert len(fracs) == 5 and ints == [-1, 4]


# 3. Fraction calculus: expansion and diagram reading agree with
#    continued-fraction evaluation, exhaustively.
def test_fraction_expand_eval_roundtrip_exhaustive():
    for p in range(-50, 51):
        for q in range(1, 51):
            if math.gcd(abs(p), q) != 1:
                continue
            f = Frac.of(p, q)
            terms = expand_homogeneous(f)
            assert is_homogeneous(terms)
            assert eval_cf(terms) == f


def _homogeneous_lists(total):
    for n in range(1, total + 1):
        for cut in combinations(range(1, n), 0):
            pass
        # compositions of n
        stack = [(n, [])]
        while stack:
            left, acc = stack.pop()
            if left == 0:
                yield acc
                yield [-a for a in acc]
                yield [0] + acc
                yield [0] + [-a for a in acc]
                continue
            for part in range(1, left + 1):
                stack.append((left - part, acc + [part]))


def test_cardan_diagram_fraction_matches_eval():
    checked = 0
    for terms in _homogeneous_lists(12):
        try:
            rt = cardan_to_diagram(terms)
        except Exception:
            # degenerate spires ([0], [0,1]-style) are rejected upstream
            assert sum(abs(a) for a in terms) <= 1 or terms[-1] in (1, -1, 0)
            continue
        assert fraction_of(rt) == eval_cf(terms)
        checked += 1
    assert checked > 2000


# 4. Every efficient flype preserves the structural invariants, over the
#    whole corpus.
def test_flype_invariance_over_corpus():
    corpus = small_corpus()
    assert len(corpus) >= 30
    for d in corpus:
        base_ct = canonical_tree(d)
        base_et = essential_tree(d)
        base_w = sorted(sum(w for _, _, w in o.twist_regions)
                        for o in flype_orbits(d))
        for m in available_flypes(d):
            d2 = apply_flype(d, m)
            assert d2.n == d.n
            assert d2.is_alternating()
            assert tree_isomorphic(base_ct, canonical_tree(d2))
            assert tree_isomorphic(base_et, essential_tree(d2))
            got = sorted(sum(w for _, _, w in o.twist_regions)
                         for o in flype_orbits(d2))
            assert got == base_w


# 5. The constructive canonical family equals the exhaustive minimal
#    admissible family on every small corpus diagram.
def test_minimal_family_uniqueness_against_oracle():
    from test_circles import oracle_minimal_families
    t0 = time.monotonic()
    for d in small_corpus():
        if d.n > 10:
            continue
        oracles = oracle_minimal_families(d)
        assert len(oracles) == 1, "minimal admissible family is not unique"
        dec = decompose(d)
        got = frozenset(c.inside for c in dec.family.circles)
        assert got == oracles[0]
    assert time.monotonic() - t0 < 60.0


# 6. Crossing-count law: every witness has crossing count divisible by q.
def test_witness_crossing_count_law():
    diagrams = [d for d in small_corpus() if len(d.components) == 1]
    diagrams += [atom_knot_12(), eightfold_necklace()]
    for d in diagrams:
        for q in (2, 3, 4, 5, 7, 8):
            w, s, _ = find_periodic_projection(d, q, budget=300)
            if w is not None:
                assert w.n % q == 0
                assert s.order == q


# 7. The supplied atom adjacency tree rules out 3-periodicity of the
#    12-crossing carrier knot with reason AtomLemma alone.
def test_atom_tree_obstructs_three_periodicity():
    d = atom_knot_12()
    atoms = AtomTree(
        ({"name": "center", "is_rational": True, "is_torus2q": False},
         {"name": "arm", "periods": [2, 3]},
         {"name": "arm", "periods": [2, 3]},
         {"name": "arm", "periods": [2, 3]}),
        ((0, 1), (0, 2), (0, 3)))
    rep = periodicity_report(d, 3, atoms)
    assert rep.verdict == "obstructed"
    assert rep.reasons == ("AtomLemma",)


# 8. Parity law: no even-q witness whose fixed tree vertex is a band.
def test_parity_law_fuzz():
    from altknot.periodicity import obstruction_report
    rng = random.Random(2026)
    pool = [d for d in small_corpus() if len(d.components) == 1]
    pool += [atom_knot_12(), weight_necklace(2, 2, 2)]
    pool = [d for d in pool if d.n <= 14]
    for _ in range(6):
        d = rng.choice(pool)
        # scramble by random flypes to fuzz the projection
        for _ in range(rng.randrange(4)):
            ms = available_flypes(d)
            if not ms:
                break
            d = apply_flype(d, rng.choice(ms))
        for q in (2, 4, 6):
            try:
                rep = obstruction_report(d, q)
            except Exception:
                continue
            w, s, _ = find_periodic_projection(d, q, budget=200)
            if w is None:
                continue
            # a witness exists, so the parity obstruction must not fire
            assert "ParityTBD" not in rep.reasons
            assert w.n % q == 0


# 9. Scramble and recover: random flypes cannot hide the periodicity.
def test_scramble_recovery():
    rng = random.Random(11)
    for d, q in ((pretzel(3, 3, 3), 3), (torus2(7), 7)):
        scrambled = d
        for _ in range(15):
            ms = available_flypes(scrambled)
            if not ms:
                break
            scrambled = apply_flype(scrambled, rng.choice(ms))
        t0 = time.monotonic()
        w, s, truncated = find_periodic_projection(scrambled, q,
                                                   budget=10000)
        assert time.monotonic() - t0 < 30.0
        assert not truncated
        assert w is not None and s.strict and s.order == q


# 10. Strictness: the eightfold necklace is 8-periodic but not strictly
#     4-periodic.
def test_eightfold_necklace_strictness():
    d = eightfold_necklace()
    assert is_q_periodic_projection(d, 8) is not None
    assert is_q_periodic_projection(d, 4) is None
