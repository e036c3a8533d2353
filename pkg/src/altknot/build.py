"""Construction of diagrams from tangle algebra.

A MapBuilder accumulates crossings and dart joins; finish() solves for an
alternating over/under assignment (a connected 4-valent plane map has
exactly two, mirror images of one another) and derives a deterministic
strand orientation.

Builder crossings use the local frame pos0=NE, pos1=NW, pos2=SW, pos3=SE,
which keeps the stored dart order counterclockwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LinkDiagram, through


class MapBuilder:
    def __init__(self):
        self.n = 0
        self.pairs = {}

    def new_crossing(self):
        c = self.n
        self.n += 1
        return c

    def join(self, d1, d2):
        if d1 in self.pairs or d2 in self.pairs or d1 == d2:
            raise ValueError("dart already joined")
        self.pairs[d1] = d2
        self.pairs[d2] = d1

    def finish(self, seed=1):
        if len(self.pairs) != 4 * self.n:
            raise ValueError("builder has dangling darts")
        pairing = tuple(self.pairs[d] for d in range(4 * self.n))
        axes = solve_alternating(pairing, self.n, seed)
        incoming = derive_orientation(pairing)
        d = LinkDiagram(pairing, axes, incoming)
        d.validate()
        return d


def solve_alternating(pairing, n, seed=1):
    """The alternating over_axis assignment with over_axis[0] = seed.

    Edge constraint: darts d, d' at an edge must have opposite over
    status, i.e. axis[c] xor axis[c'] = 1 xor (d%2) xor (d'%2).
    """
    axes = [-1] * n
    axes[0] = seed
    stack = [0]
    while stack:
        c = stack.pop()
        for p in range(4):
            d = 4 * c + p
            d2 = pairing[d]
            c2 = d2 // 4
            want = axes[c] ^ 1 ^ (d % 2) ^ (d2 % 2)
            if axes[c2] == -1:
                axes[c2] = want
                stack.append(c2)
            elif axes[c2] != want:
                raise ValueError("map admits no alternating assignment")
    if -1 in axes:
        raise ValueError("builder map is disconnected")
    return tuple(axes)


def derive_orientation(pairing):
    """One incoming dart per edge, walking each strand from its least dart."""
    incoming = set()
    oriented = set()
    for d0 in range(len(pairing)):
        if d0 in oriented or pairing[d0] in oriented:
            continue
        d = d0
        while d not in incoming:
            incoming.add(d)
            oriented.add(d)
            oriented.add(through(d))
            d = pairing[through(d)]
    return frozenset(incoming)


@dataclass
class Tangle:
    """Four dangling darts of a partial map, by corner."""
    b: MapBuilder
    nw: int
    ne: int
    se: int
    sw: int


def crossing_tangle(b):
    c = b.new_crossing()
    return Tangle(b, nw=4 * c + 1, ne=4 * c, se=4 * c + 3, sw=4 * c + 2)


def hsum(t1, t2):
    """Horizontal tangle sum: t1 to the west of t2."""
    b = t1.b
    b.join(t1.ne, t2.nw)
    b.join(t1.se, t2.sw)
    return Tangle(b, nw=t1.nw, ne=t2.ne, se=t2.se, sw=t1.sw)


def vstack(top, bot):
    b = top.b
    b.join(top.sw, bot.nw)
    b.join(top.se, bot.ne)
    return Tangle(b, nw=top.nw, ne=top.ne, se=bot.se, sw=bot.sw)


def rotate(t):
    """Rotate 90 degrees counterclockwise."""
    return Tangle(t.b, nw=t.ne, sw=t.nw, se=t.sw, ne=t.se)


def htwist(b, k):
    """Horizontal band of k >= 1 crossings."""
    t = crossing_tangle(b)
    for _ in range(k - 1):
        t = hsum(t, crossing_tangle(b))
    return t


def vtwist(b, k):
    t = crossing_tangle(b)
    for _ in range(k - 1):
        t = vstack(t, crossing_tangle(b))
    return t


def numerator(t):
    t.b.join(t.nw, t.ne)
    t.b.join(t.sw, t.se)
    return t.b


def denominator(t):
    t.b.join(t.nw, t.sw)
    t.b.join(t.ne, t.se)
    return t.b


def band_sign(diag, c, horizontal):
    """Signed weight of crossing c read along a band.

    For a horizontal band the side pairs are (NW,SW) and (SE,NE); for a
    vertical band (NE,NW) and (SW,SE).  The sign is +1 when the over
    dart is the counterclockwise-later dart of each side pair.  The two
    pair members always agree for alternating diagrams.
    """
    start = 4 * c + (1 if horizontal else 0)
    later = start + 1  # rot within the crossing
    return 1 if diag.is_over(later) else -1


def with_band_sign(diag, c, horizontal, want):
    """Pick the alternating mirror making crossing c carry sign want."""
    if band_sign(diag, c, horizontal) == want:
        return diag
    return diag.with_over_axis(tuple(1 - a for a in diag.over_axis))


# -- standard closed diagrams -------------------------------------------

def torus2(m, sign=1):
    """Standard alternating (2, m) torus diagram, m >= 2."""
    b = MapBuilder()
    d = numerator(htwist(b, m)).finish()
    return with_band_sign(d, 0, True, sign)


def pretzel(*ks, sign=1):
    """Pretzel diagram: vertical twist columns of sizes ks, closed up."""
    b = MapBuilder()
    cols = [vtwist(b, k) for k in ks]
    t = cols[0]
    for col in cols[1:]:
        t = hsum(t, col)
    d = numerator(t).finish()
    return with_band_sign(d, 0, False, sign)


def necklace(make_tangles, sign=1, sign_crossing=0, horizontal=True):
    """Close a cyclic horizontal chain of tangles built by make_tangles(b)."""
    b = MapBuilder()
    ts = make_tangles(b)
    t = ts[0]
    for t2 in ts[1:]:
        t = hsum(t, t2)
    d = numerator(t).finish()
    return with_band_sign(d, sign_crossing, horizontal, sign)


def from_pairing(n, pairs, seed=1):
    """Build from an explicit dart pairing list of (d1, d2)."""
    b = MapBuilder()
    for _ in range(n):
        b.new_crossing()
    for d1, d2 in pairs:
        b.join(d1, d2)
    return b.finish(seed)
