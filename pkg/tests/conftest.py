"""Shared fixtures: standard diagrams and the test corpus."""

import pytest

from altknot.build import (MapBuilder, hsum, vstack, htwist, vtwist,
                           numerator, torus2, pretzel, necklace,
                           from_pairing)
from altknot.rational import cardan_to_diagram


def octahedron():
    """The 6-crossing basic polyhedron (Borromean rings universe)."""
    prev = {1: 4, 2: 1, 3: 2, 4: 3}
    nxt = {1: 2, 2: 3, 3: 4, 4: 1}
    bottom = [1, 4, 3, 2]
    pairs = []
    for i in range(1, 5):
        pairs.append((i - 1, 4 * i))
    for i in range(1, 5):
        pairs.append((4 * i + 3, 4 * nxt[i] + 1))
    for i in range(1, 5):
        pairs.append((4 * i + 2, 20 + bottom.index(i)))
    return from_pairing(6, pairs)


def two_jewels():
    """Two opened octahedra glued along a circle (a 10-crossing
    projection decomposing into two jewels)."""
    from itertools import permutations
    prev = {1: 4, 2: 1, 3: 2, 4: 3}
    nxt = {1: 2, 2: 3, 3: 4, 4: 1}

    def open_star(base, b_pairs):
        # octahedron minus the outer vertex: center base, ring base+1..4
        for i in range(1, 5):
            b_pairs.append((4 * base + (i - 1), 4 * (base + i)))
        for i in range(1, 5):
            b_pairs.append((4 * (base + i) + 3, 4 * (base + nxt[i]) + 1))
        return [4 * (base + i) + 2 for i in range(1, 5)]

    for shift in range(4):
        for flip in (False, True):
            pairs = []
            ends_a = open_star(0, pairs)
            ends_b = open_star(5, pairs)
            order = list(range(4))
            if flip:
                order = order[::-1]
            try:
                full = list(pairs)
                for k in range(4):
                    full.append((ends_a[k], ends_b[(order[k] + shift) % 4]))
                return from_pairing(10, full)
            except Exception:
                continue
    raise RuntimeError("no planar gluing found")


def pendant_necklace(b=None):
    """Projection with canonical family {g1, g11, g2, g3, g31, g32, g4}:
    a weight-4 band carrying a 2-level rational tangle, two spires, and
    a weight -1 band holding two more spires."""
    def mk(b):
        a1 = vstack(htwist(b, 2), vtwist(b, 2))
        t2 = vtwist(b, 2)
        a3 = vstack(vstack(htwist(b, 2), vtwist(b, 1)), htwist(b, 2))
        t4 = vtwist(b, 2)
        return [a1, htwist(b, 1), t2, htwist(b, 1), a3, htwist(b, 1),
                t4, htwist(b, 1)]
    return necklace(mk, sign=1, sign_crossing=4)


def eightfold_necklace():
    """8-necklace of vertical 2-twists: 8-periodic, so only non-strictly
    4-periodic."""
    return pretzel(*([2] * 8))


def atom_knot_12():
    """12-crossing alternating knot with a 3-fold necklace structure,
    used as the carrier for the adjacency-tree obstruction example."""
    def mk(b):
        ts = []
        for _ in range(3):
            ts.append(vstack(htwist(b, 2), vtwist(b, 1)))
            ts.append(htwist(b, 1))
        return ts
    return necklace(mk, sign=1, sign_crossing=2)


def weight_necklace(i, j, k, pendants=(3, 3, 2)):
    """Necklace of vertical-twist pendants with band crossings i, j, k
    distributed between them."""
    def mk(b):
        ts = [vtwist(b, pendants[0])]
        if i:
            ts.append(htwist(b, i))
        ts.append(vtwist(b, pendants[1]))
        if j:
            ts.append(htwist(b, j))
        ts.append(vtwist(b, pendants[2]))
        if k:
            ts.append(htwist(b, k))
        return ts
    first_band = pendants[0] if i else (
        pendants[0] + pendants[1] if j else sum(pendants))
    return necklace(mk, sign=1, sign_crossing=first_band)


def small_corpus():
    """Alternating diagrams with at most 12 crossings."""
    out = []
    for m in range(2, 9):
        out.append(torus2(m))
    for ks in [(3, 3, 3), (2, 3, 4), (2, 2, 3, 3), (3, 3, 2), (5, 3, 2),
               (2, 2, 2), (3, 4, 5), (1, 1, 1, 1, 1, 1)]:
        out.append(pretzel(*ks))
    for terms in [[2, 3], [3, 2, 2], [2, 2, 2], [4, 3], [1, 2, 3],
                  [2, 1, 1, 2], [5, 4], [-2, -3], [3, 1, 2],
                  [0, 2, 2], [0, 3, 2, 2]]:
        out.append(cardan_to_diagram(terms).diagram)
    out.append(octahedron())
    out.append(two_jewels())
    out.append(weight_necklace(1, 1, 1))
    out.append(weight_necklace(3, 0, 0))
    out.append(atom_knot_12())
    assert len(out) >= 30
    assert all(d.n <= 12 or d is out[-1] for d in out[:26])
    return [d for d in out if d.n <= 12]


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


@pytest.fixture(scope="session")
def necklace17():
    return pendant_necklace()


@pytest.fixture(scope="session")
def necklace8():
    return eightfold_necklace()


@pytest.fixture(scope="session")
def jewel6():
    return octahedron()
