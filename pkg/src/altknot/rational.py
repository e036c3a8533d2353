"""Rational tangle arithmetic.

Continued fractions [a0, a1, ..., am] evaluate right to left as
a0 + 1/(a1 + 1/(... + 1/am)).  Fractions are normalized with r > 0 and
the sign carried by s, plus the distinguished value INF for the trivial
tangle T([inf]).

Cardan synthesis realizes T[a0..am] with band weights b_i = (-1)^i a_i,
band 0 horizontal, later bands alternating vertical/horizontal, each new
band attached east (horizontal) or south (vertical) of the previous
ones.  The open tangle is closed off with a perpendicular 2-crossing
spire so that its boundary stays a genuine 4-edge Haseman circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .build import (
    MapBuilder, hsum, htwist, numerator, vstack, vtwist, with_band_sign,
)
from .errors import DivisionCollapse, MalformedCode, NotRational


@dataclass(frozen=True)
class Frac:
    """Reduced fraction r/s with r > 0 (sign in s); 1/0 is infinity."""

    r: int
    s: int

    @staticmethod
    def of(num, den):
        if den == 0:
            if num == 0:
                raise DivisionCollapse("0/0 has no value")
            return INF
        if num == 0:
            return Frac(0, 1)
        g = gcd(abs(num), abs(den))
        num, den = num // g, den // g
        if num < 0:
            num, den = -num, -den
        return Frac(num, den)

    @property
    def is_inf(self):
        return self.s == 0

    def value(self):
        return self.r / self.s

    def __str__(self):
        if self.is_inf:
            return "inf"
        if self.s == 1:
            return str(self.r)
        return "%d/%d" % (self.r, self.s)


INF = Frac(1, 0)


def eval_cf(terms):
    """Evaluate a continued fraction term list (or INF) to a Frac."""
    if terms is INF or terms == "inf":
        return INF
    terms = list(terms)
    if not terms:
        raise MalformedCode("empty continued fraction")
    if any(t == 0 for t in terms[1:]):
        raise MalformedCode("inner continued fraction terms must be nonzero")
    num, den = terms[-1], 1
    for a in reversed(terms[:-1]):
        if num == 0:
            raise DivisionCollapse(
                "intermediate denominator 0; simplify the term list")
        num, den = a * num + den, num
    return Frac.of(num, den)


def is_homogeneous(terms):
    if not terms or any(t == 0 for t in terms[1:]):
        return False
    nz = [t for t in terms if t != 0]
    if not nz:
        return True  # the zero tangle [0]
    return all(t > 0 for t in nz) or all(t < 0 for t in nz)


def expand_homogeneous(f):
    """Deterministic homogeneous expansion of a finite fraction.

    Positive values expand with floor steps (all later terms >= 1),
    negative values with ceiling steps (all later terms <= -1).
    """
    if f.is_inf:
        raise MalformedCode("cannot expand the infinite fraction")
    num = f.r if f.s > 0 else -f.r
    den = abs(f.s)
    if num == 0:
        return [0]
    neg = num < 0
    terms = []
    while True:
        a = num // den if not neg else -((-num) // den)
        terms.append(a)
        rem = num - a * den
        if rem == 0:
            return terms
        num, den = den, rem  # continue with 1/(value - a)


def fractions_equal(f1, f2):
    return f1 == f2


# -- textual forms for the CLI ------------------------------------------

def parse_fraction(text):
    t = text.strip()
    if t in ("inf", "Inf", "INF", "∞"):
        return INF
    if "/" in t:
        a, b = t.split("/", 1)
        return Frac.of(int(a), int(b))
    return Frac.of(int(t), 1)


def parse_terms(text):
    t = text.strip()
    if t in ("inf", "Inf", "INF", "∞"):
        return INF
    t = t.strip("[]")
    if not t.strip():
        raise MalformedCode("empty continued fraction")
    return [int(x) for x in t.replace(",", " ").split()]


# -- cardan synthesis ----------------------------------------------------

@dataclass(frozen=True)
class RationalTangle:
    """A cardan tangle embedded in its spire closure.

    frame maps the corners NW/NE/SE/SW to the edge ids cut by the tangle
    boundary circle; tangle_crossings is the inside of that circle.
    """

    diagram: object
    frame: dict
    tangle_crossings: frozenset
    closure_crossings: frozenset
    terms: tuple

    @property
    def cut_edges(self):
        return frozenset(self.frame.values())


def band_directions(terms):
    """horizontal flag per term index: b0 horizontal, then alternating."""
    return [i % 2 == 0 for i in range(len(terms))]


def cardan_to_diagram(terms):
    """Build the cardan tangle T[a0..am] inside a closed diagram."""
    terms = list(terms)
    if not is_homogeneous(terms):
        raise NotRational("cardan synthesis needs homogeneous terms")
    if all(t == 0 for t in terms):
        raise NotRational("the zero tangle has no cardan diagram")
    b = MapBuilder()
    horiz = band_directions(terms)
    t = None
    outer = None  # (first crossing id, horizontal) of outermost real band
    for i in range(len(terms) - 1, -1, -1):
        a = terms[i]
        if a == 0:
            continue
        w = a if i % 2 == 0 else -a  # band weight b_i
        first = b.n
        tw = htwist(b, abs(w)) if horiz[i] else vtwist(b, abs(w))
        outer = (first, horiz[i], w)
        t = tw if t is None else (
            hsum(t, tw) if horiz[i] else vstack(t, tw))
    inside = frozenset(range(b.n))
    closure = frozenset(range(b.n, b.n + 2))
    first, is_h, w = outer
    # close with an eastern 2-spire perpendicular to the outermost band
    # so the tangle boundary survives as a circle cutting 4 distinct edges
    spire = vtwist(b, 2) if is_h else htwist(b, 2)
    d = numerator(hsum(t, spire)).finish()
    d = with_band_sign(d, first, is_h, 1 if w > 0 else -1)
    frame = {
        "NW": d.edge_of(t.nw),
        "NE": d.edge_of(t.ne),
        "SE": d.edge_of(t.se),
        "SW": d.edge_of(t.sw),
    }
    return RationalTangle(d, frame, inside, closure, tuple(terms))


def tangle_fraction(d, circle, side, frame=None):
    """Fraction of the rational tangle cut out by a Haseman circle.

    side is the crossing set inside the circle; frame optionally names
    the circle's cut edges as corners {NW, NE, SE, SW} (adjacent corners
    must be adjacent in the circle's cyclic edge order).  Without a
    frame the canonical cyclic order of the circle is used, which fixes
    the fraction up to the marking ambiguity.
    """
    from .circles import read_chain  # deferred to avoid import cycle
    return read_chain(d, circle, side, frame)


def fraction_of(rt):
    """Fraction of a synthesized RationalTangle via decomposition."""
    from .circles import circle_for_edges
    circle = circle_for_edges(rt.diagram, rt.cut_edges, relaxed=True)
    return tangle_fraction(rt.diagram, circle, rt.tangle_crossings, rt.frame)
