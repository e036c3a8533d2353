"""Link projections as combinatorial maps.

A diagram with n crossings is stored as 4n darts.  Crossing c owns darts
4c..4c+3 listed counterclockwise, so the vertex rotation is simply
``d -> 4c + (d+1) % 4``.  The edge pairing is an explicit fixed-point-free
involution.  Faces are the orbits of sigma(alpha(d)); the Euler check
V - E + F = 2 certifies a sphere embedding.

Over/under data lives in ``over_axis``: at crossing c the darts whose
position parity equals over_axis[c] belong to the over strand.

Strand orientation is a set of incoming darts, one per edge (the dart at
the head endpoint of the edge).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    MalformedCode,
    NonPlanar,
    NonQuadrivalent,
    NonRealizable,
)

NW, NE, SE, SW = "NW", "NE", "SE", "SW"


def crossing_of(d):
    return d // 4


def rot(d):
    """Counterclockwise rotation at the crossing of d."""
    return 4 * (d // 4) + (d + 1) % 4


def rot_inv(d):
    return 4 * (d // 4) + (d + 3) % 4


def through(d):
    """Opposite dart on the same strand through the crossing."""
    return 4 * (d // 4) + (d + 2) % 4


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable combinatorial map of a link projection.

    pairing[d] is the dart at the other end of d's edge.  over_axis[c] in
    {0, 1} selects the over diagonal at crossing c.  incoming holds one
    dart per edge: the end toward which the strand runs.  extra_circles
    counts closed crossing-free components (only the unknot uses it).
    """

    pairing: tuple
    over_axis: tuple
    incoming: frozenset
    extra_circles: int = 0

    # -- basic structure ------------------------------------------------

    @property
    def n(self):
        return len(self.over_axis)

    @property
    def darts(self):
        return range(4 * self.n)

    def alpha(self, d):
        return self.pairing[d]

    def is_over(self, d):
        return d % 2 == self.over_axis[d // 4]

    def is_incoming(self, d):
        if d in self.incoming:
            return True
        if self.pairing[d] in self.incoming:
            return False
        raise ValueError("edge %d has no oriented end" % d)

    @cached_property
    def edges(self):
        """Sorted list of edges as (min dart, max dart) pairs."""
        return sorted(
            (d, self.pairing[d]) for d in self.darts if d < self.pairing[d]
        )

    @cached_property
    def edge_index(self):
        ix = {}
        for i, (a, b) in enumerate(self.edges):
            ix[a] = ix[b] = i
        return ix

    def edge_of(self, d):
        return self.edge_index[d]

    # -- faces ----------------------------------------------------------

    @cached_property
    def faces(self):
        """Faces as dart tuples, orbits of d -> rot(alpha(d))."""
        seen = [False] * (4 * self.n)
        out = []
        for d0 in self.darts:
            if seen[d0]:
                continue
            cyc = []
            d = d0
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = rot(self.pairing[d])
            out.append(tuple(cyc))
        return out

    @cached_property
    def face_of(self):
        fo = [0] * (4 * self.n)
        for i, cyc in enumerate(self.faces):
            for d in cyc:
                fo[d] = i
        return fo

    def euler(self):
        if self.n == 0:
            return 2
        return self.n - 2 * self.n + len(self.faces)

    def validate(self):
        n = self.n
        if len(self.pairing) != 4 * n:
            raise MalformedCode("pairing length mismatch")
        for d in self.darts:
            p = self.pairing[d]
            if p == d or not 0 <= p < 4 * n or self.pairing[p] != d:
                raise MalformedCode("pairing is not a free involution")
        for d in self.incoming:
            if self.pairing[d] in self.incoming:
                raise MalformedCode("edge oriented at both ends")
        if n and len(self.incoming) != 2 * n:
            raise MalformedCode("orientation misses some edge")
        for c in range(n):
            heads = sorted(d % 4 for d in self.incoming if d // 4 == c)
            if len(heads) != 2 or (heads[1] - heads[0]) % 2 != 1:
                raise MalformedCode("crossing %d lacks two entering strands" % c)
        if self.euler() != 2:
            raise NonPlanar("V - E + F = %d != 2" % self.euler())
        return self

    # -- global predicates ----------------------------------------------

    @cached_property
    def components(self):
        """Strand components as tuples of incoming darts in walk order."""
        todo = set(self.incoming)
        comps = []
        while todo:
            d0 = min(todo)
            walk = []
            d = d0
            while d in todo:
                todo.discard(d)
                walk.append(d)
                d = self.pairing[through(d)]
            comps.append(tuple(walk))
        return comps

    @property
    def component_count(self):
        return len(self.components) + self.extra_circles

    def is_connected(self):
        if self.n == 0:
            return self.extra_circles <= 1
        seen = {0}
        stack = [0]
        while stack:
            c = stack.pop()
            for p in range(4):
                c2 = self.pairing[4 * c + p] // 4
                if c2 not in seen:
                    seen.add(c2)
                    stack.append(c2)
        return len(seen) == self.n and self.extra_circles == 0

    def is_alternating(self):
        return all(
            self.is_over(d) != self.is_over(self.pairing[d])
            for d in self.darts
        )

    def is_reduced(self):
        """No crossing touches the same face twice (no nugatory crossing)."""
        for cyc in self.faces:
            hit = set()
            for d in cyc:
                c = d // 4
                if c in hit:
                    return False
                hit.add(c)
        return True

    def is_prime(self):
        """No 2-edge cut with crossings on both sides."""
        if self.n <= 1:
            return True
        m = len(self.edges)
        for i in range(m):
            for j in range(i + 1, m):
                if self._cut_separates((i, j)):
                    return False
        return True

    def _cut_separates(self, cut_edges):
        """True if deleting the given edges disconnects the crossings."""
        cut = set(cut_edges)
        seen = {0}
        stack = [0]
        while stack:
            c = stack.pop()
            for p in range(4):
                d = 4 * c + p
                if self.edge_of(d) in cut:
                    continue
                c2 = self.pairing[d] // 4
                if c2 not in seen:
                    seen.add(c2)
                    stack.append(c2)
        return len(seen) < self.n

    # -- map isomorphism and symmetry -----------------------------------

    def _encode_from(self, base, include_over=True):
        """Canonical BFS labeling anchored at base; tuple encoding."""
        label = {base: 0}
        order = [base]
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for nxt in (rot(d), self.pairing[d]):
                if nxt not in label:
                    label[nxt] = len(order)
                    order.append(nxt)
        enc = []
        for d in order:
            enc.append(label[rot(d)])
            enc.append(label[self.pairing[d]])
            if include_over:
                enc.append(1 if self.is_over(d) else 0)
        return tuple(enc)

    @cached_property
    def canonical_form(self):
        """Minimal anchored encoding; equal iff maps are isomorphic.

        Isomorphism here preserves the counterclockwise rotation (sphere
        orientation), the pairing, and over/under, but ignores strand
        orientation.  This is exactly the flat-homeomorphism quotient.
        """
        if self.n == 0:
            return ("unknot", self.extra_circles)
        return min(self._encode_from(b) for b in self.darts)

    def isomorphic(self, other):
        return self.canonical_form == other.canonical_form

    def automorphisms(self):
        """All map automorphisms (rotation/pairing/over preserving).

        Returned as dart permutations (tuples).  The diagram must be
        connected.  Strand orientation is not required to be preserved.
        """
        if self.n == 0:
            return [()]
        base_enc = self._encode_from(0)
        out = []
        for b in self.darts:
            if self._encode_from(b) != base_enc:
                continue
            g = self._map_from(0, b)
            if g is not None:
                out.append(g)
        return out

    def _map_from(self, src, dst):
        """Extend src -> dst to a full automorphism, or None."""
        g = [-1] * (4 * self.n)
        g[src] = dst
        stack = [src]
        while stack:
            d = stack.pop()
            for f in (rot, self.alpha):
                a, b = f(d), f(g[d])
                if g[a] == -1:
                    g[a] = b
                    stack.append(a)
                elif g[a] != b:
                    return None
        if sorted(g) != list(self.darts):
            return None
        for d in self.darts:
            if self.is_over(d) != self.is_over(g[d]):
                return None
        return tuple(g)

    # -- serialization ---------------------------------------------------

    def serialize_pd(self):
        if self.n == 0:
            return "unknot"
        labels = {}
        nxt = 1
        for comp in self.components:
            for d in comp:
                labels[self.edge_of(d)] = nxt
                nxt += 1
        recs = []
        for c in range(self.n):
            d0 = None
            for p in range(4):
                d = 4 * c + p
                if not self.is_over(d) and self.is_incoming(d):
                    d0 = d
                    break
            assert d0 is not None
            four = [labels[self.edge_of(d0)]]
            d = d0
            for _ in range(3):
                d = rot(d)
                four.append(labels[self.edge_of(d)])
            recs.append("X[%d,%d,%d,%d]" % tuple(four))
        return ";".join(recs)

    def to_json(self):
        return {
            "crossings": [
                {"id": c, "over_axis": self.over_axis[c]}
                for c in range(self.n)
            ],
            "edges": [list(e) for e in self.edges],
            "rotation": [
                [4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3]
                for c in range(self.n)
            ],
            "orientation": sorted(self.incoming),
            "components": self.component_count,
        }

    def json_text(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    # -- local rewrites --------------------------------------------------

    def with_over_axis(self, axes):
        return LinkDiagram(self.pairing, tuple(axes), self.incoming,
                           self.extra_circles)

    @staticmethod
    def unknot(circles=1):
        return LinkDiagram((), (), frozenset(), circles)


# -- parsing -------------------------------------------------------------

_PD_REC = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_pd(text):
    """Parse a PD code: X[a,b,c,d] records, first entry the incoming
    under-strand, entries counterclockwise."""
    if not isinstance(text, str) or not text.strip():
        raise MalformedCode("empty PD code")
    body = text.strip()
    recs = []
    pos = 0
    for m in _PD_REC.finditer(body):
        gap = body[pos:m.start()]
        if gap.strip(" ;\t\n"):
            raise MalformedCode("unexpected text %r" % gap.strip())
        recs.append(tuple(int(x) for x in m.groups()))
        pos = m.end()
    if body[pos:].strip(" ;\t\n"):
        raise MalformedCode("unexpected trailing text")
    if not recs:
        raise MalformedCode("no crossing records found")

    n = len(recs)
    slots = {}
    for c, rec in enumerate(recs):
        for p, lab in enumerate(rec):
            slots.setdefault(lab, []).append(4 * c + p)
    for lab, ds in sorted(slots.items()):
        if len(ds) != 2:
            raise NonQuadrivalent(
                "label %d appears %d times" % (lab, len(ds)))
    pairing = [-1] * (4 * n)
    for ds in slots.values():
        a, b = ds
        pairing[a] = b
        pairing[b] = a
    for d in range(4 * n):
        if pairing[d] == d:
            raise NonQuadrivalent("label pairs a slot with itself")

    # Orientation: position 0 is the incoming under dart at each crossing;
    # propagate along strands and check consistency.
    incoming = set()
    outgoing = set()

    def orient(d_in):
        # walk the strand forward from an incoming dart
        d = d_in
        while d not in incoming:
            if d in outgoing:
                raise MalformedCode("inconsistent strand orientation")
            incoming.add(d)
            outgoing.add(through(d))
            d = pairing[through(d)]

    for c in range(n):
        orient(4 * c)
    # components made only of over-passages got no constraint; orient by
    # smallest dart for determinism
    for d in range(4 * n):
        if d not in incoming and pairing[d] not in incoming:
            orient(d)

    diag = LinkDiagram(tuple(pairing), tuple([1] * n), frozenset(incoming))
    diag.validate()
    return diag


_GAUSS_TOK = re.compile(r"([OU])(\d+)([+-])")


def parse_gauss(text):
    """Parse a signed Gauss code like ``O1+U2+O3+U1+O2+U3+``.

    The sign fixes the local rotation: at a positive crossing the
    counterclockwise dart order is (over-out, under-in, over-in,
    under-out); at a negative crossing (over-out, under-out, over-in,
    under-in).  Planarity of the forced rotation system is then an
    Euler check.
    """
    if not isinstance(text, str) or not text.strip():
        raise MalformedCode("empty Gauss code")
    toks = []
    pos = 0
    body = text.strip()
    for m in _GAUSS_TOK.finditer(body):
        if body[pos:m.start()].strip(" ,\t\n"):
            raise MalformedCode("unexpected text in Gauss code")
        toks.append((m.group(1), int(m.group(2)), m.group(3)))
        pos = m.end()
    if body[pos:].strip(" ,\t\n"):
        raise MalformedCode("unexpected trailing text")
    if not toks:
        raise MalformedCode("no Gauss tokens found")

    labels = sorted({t[1] for t in toks})
    if len(toks) != 2 * len(labels):
        raise MalformedCode("each crossing must appear exactly twice")
    cid = {lab: i for i, lab in enumerate(labels)}
    seen = {}
    sign = {}
    for kind, lab, s in toks:
        seen.setdefault(lab, []).append(kind)
        sign.setdefault(lab, s)
        if sign[lab] != s:
            raise MalformedCode("crossing %d has conflicting signs" % lab)
    for lab, kinds in seen.items():
        if sorted(kinds) != ["O", "U"]:
            raise MalformedCode(
                "crossing %d needs one O and one U passage" % lab)

    # positions: 0 over-out, 2 over-in; positive: 1 under-out, 3 under-in;
    # negative: 1 under-in, 3 under-out.  Over diagonal is {0,2}.
    def io_darts(kind, lab):
        c = cid[lab]
        if kind == "O":
            return 4 * c + 2, 4 * c  # in, out
        if sign[lab] == "+":
            return 4 * c + 1, 4 * c + 3
        return 4 * c + 3, 4 * c + 1

    n = len(labels)
    pairing = [-1] * (4 * n)
    incoming = set()
    m = len(toks)
    for i, (kind, lab, _) in enumerate(toks):
        _, d_out = io_darts(kind, lab)
        kind2, lab2, _ = toks[(i + 1) % m]
        d_in, _ = io_darts(kind2, lab2)
        if pairing[d_out] != -1 or pairing[d_in] != -1:
            raise MalformedCode("Gauss passages collide")
        pairing[d_out] = d_in
        pairing[d_in] = d_out
        incoming.add(d_in)

    diag = LinkDiagram(tuple(pairing), tuple([0] * n), frozenset(incoming))
    try:
        diag.validate()
    except NonPlanar as e:
        raise NonRealizable("Gauss code admits no planar realization") from e
    return diag


# -- predicates mirrored as module functions -----------------------------

def is_alternating(d):
    return d.is_alternating()


def is_reduced(d):
    return d.is_reduced()


def is_prime(d):
    return d.is_prime()
