"""Flype moves on alternating diagrams.

An efficient flype moves the active crossing of one twist region of a
twisted band diagram across the intervening hole(s) into another twist
region of the same band, rigidly rotating each tangle it crosses.  The
surgery is dart-level: the crossed tangle is reflected in place (over
strands toggled), the active crossing is re-inserted on the far side,
and six boundary edges are rewired so every strand stays connected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .build import derive_orientation
from .diagram import LinkDiagram, through
from .errors import IllegalMove, BudgetExceeded
from .circles import decompose


@dataclass(frozen=True)
class FlypeMove:
    tbd: int                 # region index in decompose(d).regions
    active_crossing: int
    source_twist: int        # gap index within the band cycle
    target_twist: int
    flipped_tangle: frozenset  # crossings rotated by the move


@dataclass(frozen=True)
class FlypeOrbit:
    tbd: int
    twist_regions: tuple     # (gap index, crossings, weight) per twist region


@dataclass(frozen=True)
class ClosureResult:
    diagrams: tuple
    truncated: bool


def _tau(d):
    return 4 * (d // 4) + ((4 - d % 4) % 4)


def _hole_content(region, g):
    """Crossings inside a hole of the region (its far side)."""
    if region.crossings:
        ref = next(iter(region.crossings))
        return g.inside if ref in g.outside else g.outside
    # no crossings: the far side is the one not holding the other holes
    others = [b for b in region.boundary if b != g]
    if others and all(b.inside < g.inside for b in others):
        return g.outside
    return g.inside


def flype_orbits(d):
    """One orbit per twisted band region."""
    dec = decompose(d)
    out = []
    for i, r in enumerate(dec.regions):
        if r.kind != "TBD" or not r.crossings:
            continue
        out.append(FlypeOrbit(
            i, tuple((j, cr, s * len(cr))
                     for j, (cr, s) in enumerate(r.chains))))
    return out


def available_flypes(d):
    """Efficient flypes: moves between distinct twist regions of a band."""
    dec = decompose(d)
    out = []
    for ri, r in enumerate(dec.regions):
        if r.kind != "TBD" or len(r.holes) < 2:
            continue
        k = len(r.holes)
        for src in range(k):
            cr, _ = r.chains[src]
            if not cr:
                continue
            for tgt in range(k):
                if tgt == src:
                    continue
                out.append(FlypeMove(
                    ri, cr[-1], src, tgt, _between(r, src, tgt)))
    return out


def _between(region, src, tgt):
    """Crossings strictly between gap src and gap tgt along the band:
    the crossed holes' contents plus any intermediate gap crossings."""
    k = len(region.holes)
    out = set()
    h = (src + 1) % k
    while True:
        out |= _hole_content(region, region.holes[h])
        if h == tgt:
            break
        out |= set(region.chains[h][0])
        h = (h + 1) % k
    return frozenset(out)


def _surgery(d, c, content, near, far):
    """Move crossing c across the tangle on the given crossings,
    rotating the tangle in place.  near: the two edges joining c to the
    tangle; far: the two edges on the tangle's other side."""
    a_darts = {x for a in content for x in range(4 * a, 4 * a + 4)}

    us, xs = [], []
    for e in near:
        p, q = d.edges[e]
        if p // 4 == c and q // 4 in content:
            us.append(p)
            xs.append(q)
        elif q // 4 == c and p // 4 in content:
            us.append(q)
            xs.append(p)
    if len(us) != 2:
        raise IllegalMove("crossing is not adjacent to the tangle")
    vs = [x for x in range(4 * c, 4 * c + 4) if x not in us]
    ys = [d.pairing[v] for v in vs]
    # port entered by the strand arriving at v: follow it through c
    x_for_v = {v: xs[us.index(through(v))] for v in vs}
    zs, ws = [], []
    for e in far:
        p, q = d.edges[e]
        if p // 4 in content:
            zs.append(p)
            ws.append(q)
        else:
            zs.append(q)
            ws.append(p)

    base = list(d.pairing)
    # reflect the tangle in place
    for x in a_darts:
        mate = d.pairing[x]
        base[_tau(x)] = _tau(mate) if mate in a_darts else mate
    for m in (0, 1):
        pairing = list(base)

        def join(p, q):
            pairing[p] = q
            pairing[q] = p

        # previous attachments meet the reflected tangle directly
        for v, y in zip(vs, ys):
            x = x_for_v[v]
            join(y if y not in a_darts else _tau(y), _tau(x))
        # reflected exit ports pass through the re-inserted crossing
        zs_m = [zs[m], zs[1 - m]]
        ws_m = [ws[m], ws[1 - m]]
        for j in (0, 1):
            join(_tau(zs_m[j]), 4 * c + j)
            w = ws_m[j]
            join(through(4 * c + j), w if w not in a_darts else _tau(w))
        axes = list(d.over_axis)
        for a in content:
            axes[a] = 1 - axes[a]
        # restore alternation at the moved crossing
        dart = 4 * c
        mate = pairing[dart]
        axes[c] = (1 + dart + mate + axes[mate // 4]) % 2
        try:
            nd = LinkDiagram(
                tuple(pairing), tuple(axes),
                derive_orientation(tuple(pairing)),
                d.extra_circles)
            nd.validate()
        except Exception:
            continue
        if nd.is_alternating() and nd.n == d.n:
            return nd
    raise IllegalMove("flype surgery produced no valid diagram")


def apply_flype(d, m):
    """Apply an efficient flype, hop by hop across the band."""
    if not m.flipped_tangle:
        raise IllegalMove("trivial flype: empty tangle")
    dec = decompose(d)
    if m.tbd >= len(dec.regions):
        raise IllegalMove("no such region")
    region = dec.regions[m.tbd]
    if region.kind != "TBD":
        raise IllegalMove("flypes act on twisted band diagrams only")
    k = len(region.holes)
    if not (0 <= m.source_twist < k and 0 <= m.target_twist < k):
        raise IllegalMove("no such twist region")
    if m.source_twist == m.target_twist:
        raise IllegalMove("flype must change the twist region")
    cr, _ = region.chains[m.source_twist]
    if not cr or cr[-1] != m.active_crossing:
        raise IllegalMove("active crossing does not end the source twist")
    content = _between(region, m.source_twist, m.target_twist)
    if content != m.flipped_tangle:
        raise IllegalMove("stale move: tangle does not match the region")
    near = region.splits[(m.source_twist + 1) % k][0]
    far = region.splits[m.target_twist][1]
    return _surgery(d, m.active_crossing, content, near, far)


def normalize_twists(d):
    """Twist-sign normalization.

    Reduced alternating diagrams always carry same-sign twist regions in
    every band (the recognizer enforces it), so this is the identity on
    valid input; it exists to assert the invariant.
    """
    dec = decompose(d)
    for r in dec.regions:
        if r.kind == "TBD":
            signs = {s for cr, s in r.chains if cr}
            if len(signs) > 1:
                raise IllegalMove("mixed twist signs in an alternating band")
    return d


def flype_closure(d, budget=10000):
    """BFS closure under efficient flypes, up to map isomorphism."""
    start = d
    seen = {start.canonical_form: start}
    queue = [start]
    truncated = False
    while queue:
        cur = queue.pop(0)
        for m in available_flypes(cur):
            if len(seen) >= budget:
                truncated = True
                queue = []
                break
            try:
                nd = apply_flype(cur, m)
            except IllegalMove:
                continue
            key = nd.canonical_form
            if key not in seen:
                seen[key] = nd
                queue.append(nd)
    return ClosureResult(tuple(seen.values()), truncated)


def flype_equivalent(d1, d2, budget=10000):
    """Whether two alternating diagrams are related by efficient flypes."""
    if d1.n != d2.n:
        return False
    target = d2.canonical_form
    res = flype_closure(d1, budget)
    found = any(x.canonical_form == target for x in res.diagrams)
    if found:
        return True
    if res.truncated:
        raise BudgetExceeded("closure truncated", partial=res)
    return False
