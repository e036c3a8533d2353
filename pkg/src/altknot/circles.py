"""Haseman circles, canonical Conway families, and region classification.

A Haseman circle is modeled as a 4-edge bond: deleting its cut edges
splits the crossing graph into two connected sides, each with at least
two crossings, every cut edge spanning both sides.  The circle's cyclic
cut order is recovered by a boundary walk of the inner side, which also
certifies that the cut really is a simple closed curve on the sphere.

Families are laminar (pairwise nested side partitions) with no two
members parallel (equal partitions).  Regions are read off a containment
forest rooted at crossing 0 and classified as twisted band diagrams by
an explicit band-assembly search, falling back to a jewel test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .diagram import rot, through
from .errors import NotAdmissible, NotComparable, NotRational


@dataclass(frozen=True)
class HasemanCircle:
    """cut_cycle: the 4 cut edge ids in cyclic order along the circle
    (walked on the inner side, rotated so the least edge id is first).
    inside is the side not containing crossing 0."""

    cut_cycle: tuple
    inside: frozenset
    outside: frozenset

    @property
    def cut_edges(self):
        return frozenset(self.cut_cycle)

    def sides(self):
        return (self.inside, self.outside)

    def sort_key(self):
        return tuple(sorted(self.cut_cycle))


@dataclass(frozen=True)
class CircleFamily:
    circles: tuple
    kind: str = "arbitrary"

    def __len__(self):
        return len(self.circles)

    def __iter__(self):
        return iter(self.circles)


@lru_cache(maxsize=256)
def _edge_ends(d):
    return tuple((a // 4, b // 4) for a, b in d.edges)


def _bond_sides(d, edges4):
    """Split crossings by deleting 4 edges; None unless a clean 2-split."""
    ends = _edge_ends(d)
    n = d.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cut = set(edges4)
    for e in range(len(ends)):
        if e in cut:
            continue
        a, b = ends[e]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    roots = {find(x) for x in range(n)}
    if len(roots) != 2:
        return None
    r0 = find(0)
    seen = frozenset(x for x in range(n) if find(x) == r0)
    other = frozenset(range(n)) - seen
    for e in edges4:
        a, b = ends[e]
        if (a in seen) == (b in seen):
            return None  # edge does not span the cut
    return seen, other


def _cut_cycle(d, edges4, side):
    """Cyclic cut order via the boundary walk of the given side."""
    cut = set(edges4)
    side_dart = {}
    for e in cut:
        a, b = d.edges[e]
        side_dart[e] = a if a // 4 in side else b
    start = side_dart[min(cut)]
    order = []
    dart = start
    for _ in range(4):
        order.append(d.edge_of(dart))
        b = rot(dart)
        guard = 0
        while d.edge_of(b) not in cut:
            b = rot(d.pairing[b])
            guard += 1
            if guard > 4 * d.n:
                return None
        dart = side_dart[d.edge_of(b)]
        if dart != b:
            return None  # crossed to the far side: walk is not a boundary
    if dart != start or len(set(order)) != 4:
        return None
    return tuple(order)


def make_circle(d, edges4, relaxed=False):
    """Build the HasemanCircle with the given cut edges, or None.

    relaxed admits compressible circles with a singleton side, used only
    for reading fractions of small tangles.
    """
    sides = _bond_sides(d, edges4)
    if sides is None:
        return None
    a, b = sides
    if min(len(a), len(b)) < (1 if relaxed else 2):
        return None
    inside = b if 0 in a else a
    outside = a if inside is b else b
    cyc = _cut_cycle(d, edges4, inside)
    if cyc is None:
        return None
    if _cut_cycle(d, edges4, outside) is None:
        return None
    return HasemanCircle(cyc, inside, outside)


@lru_cache(maxsize=256)
def _edge_face_masks(d):
    """Bitmask of incident faces per edge."""
    masks = [0] * len(d.edges)
    for i, f in enumerate(d.faces):
        for dart in f:
            masks[d.edge_of(dart)] |= 1 << i
    return tuple(masks)


def _cyclically_linked(fa, fb, fc, fd):
    """Whether 4 edges admit a cyclic order with consecutive ones on a
    common face (necessary for a circle crossing exactly these edges)."""
    ab, ac, ad = fa & fb, fa & fc, fa & fd
    bc, bd, cd = fb & fc, fb & fd, fc & fd
    return ((ab and bc and cd and ad)
            or (ab and bd and cd and ac)
            or (ac and bc and bd and ad))


@lru_cache(maxsize=256)
def enumerate_haseman(d):
    """All non-compressible circles, one per parallel class, sorted."""
    by_partition = {}
    m = len(d.edges)
    masks = _edge_face_masks(d)
    for edges4 in combinations(range(m), 4):
        a, b, c4, e4 = edges4
        if not _cyclically_linked(masks[a], masks[b], masks[c4], masks[e4]):
            continue
        c = make_circle(d, edges4)
        if c is None:
            continue
        prev = by_partition.get(c.inside)
        if prev is None or c.sort_key() < prev.sort_key():
            by_partition[c.inside] = c
    return tuple(sorted(by_partition.values(), key=HasemanCircle.sort_key))


def is_compressible(d, edges):
    """True iff one side of the candidate 4-cut is trivial or a singleton."""
    if len(set(edges)) < 4:
        return True  # an edge crossed twice bounds an uncrossed strand
    sides = _bond_sides(d, tuple(edges))
    if sides is None:
        raise ValueError("edge set is not a simple 4-point circle")
    return min(len(s) for s in sides) < 2


def compatible(c1, c2):
    """Laminar compatibility: some side fits inside a side of the other."""
    return any(
        s1 <= s2 for s1 in c1.sides() for s2 in c2.sides()
    )


def are_parallel(c1, c2):
    if {c1.inside, c1.outside} == {c2.inside, c2.outside}:
        return True
    if not compatible(c1, c2):
        raise NotComparable("circles admit no disjoint arrangement")
    return False


# -- regions -------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """A complementary piece of a circle family.

    TBD regions carry band data: holes lists the boundary circles in
    band cyclic order; splits[i] gives hole i's (arrive, depart) port
    pairs as edge ids; chains[i] is the twist sitting between hole i and
    hole i+1 (ordered crossings, sign).  A closed band (torus type) has
    no holes and a single cyclic chain.
    """

    kind: str
    boundary: tuple
    crossings: frozenset
    holes: tuple = ()
    splits: tuple = ()
    chains: tuple = ()

    @property
    def valency(self):
        return len(self.boundary)

    @property
    def weights(self):
        return tuple(s * len(cr) for cr, s in self.chains)

    @property
    def total_weight(self):
        return sum(self.weights)

    def sort_key(self):
        return (
            min(self.crossings) if self.crossings else 10 ** 9,
            tuple(sorted(e for c in self.boundary for e in c.cut_cycle)),
        )


def _containment_forest(circles):
    """parent index per circle (-1 for roots) by inside-set nesting."""
    order = sorted(range(len(circles)), key=lambda i: len(circles[i].inside))
    parent = [-1] * len(circles)
    for pos, i in enumerate(order):
        best = -1
        for j in order[pos + 1:]:
            if circles[i].inside < circles[j].inside:
                if best == -1 or len(circles[j].inside) < len(circles[best].inside):
                    best = j
        parent[i] = best
    return parent


def _region_pieces(d, circles):
    """(boundary list of (circle, facing side), crossing set) per region."""
    circles = list(circles)
    parent = _containment_forest(circles)
    children = {i: [] for i in range(len(circles))}
    tops = []
    for i, p in enumerate(parent):
        if p == -1:
            tops.append(i)
        else:
            children[p].append(i)
    allc = frozenset(range(d.n))
    pieces = []
    # root region: outside every top-level circle
    crossings = allc
    for i in tops:
        crossings -= circles[i].inside
    pieces.append(
        ([(circles[i], allc - circles[i].inside) for i in tops], crossings))
    for i in range(len(circles)):
        crossings = circles[i].inside
        for j in children[i]:
            crossings -= circles[j].inside
        bound = [(circles[i], circles[i].inside)]
        bound += [(circles[j], allc - circles[j].inside) for j in children[i]]
        pieces.append((bound, crossings))
    return pieces


def _bigon_adjacency(d, crossings):
    adj = {c: set() for c in crossings}
    for cyc in d.faces:
        if len(cyc) != 2:
            continue
        c1, c2 = cyc[0] // 4, cyc[1] // 4
        if c1 != c2 and c1 in adj and c2 in adj:
            adj[c1].add(c2)
            adj[c2].add(c1)
    return adj


def _chain_components(adj):
    """Split into bigon-connected components, each as an ordered path,
    or None if some component branches or closes a cycle."""
    seen = set()
    out = []
    for c0 in sorted(adj):
        if c0 in seen:
            continue
        comp = {c0}
        stack = [c0]
        while stack:
            c = stack.pop()
            for c2 in adj[c]:
                if c2 not in comp:
                    comp.add(c2)
                    stack.append(c2)
        seen |= comp
        if any(len(adj[c] & comp) > 2 for c in comp):
            return None
        ends = [c for c in comp if len(adj[c] & comp) <= 1]
        if len(comp) == 1:
            out.append([c0])
            continue
        if not ends:
            return None  # closed twist cycle inside a holed region
        path = [min(ends)]
        prev = None
        while True:
            nxt = [c for c in adj[path[-1]] if c != prev and c in comp]
            if not nxt:
                break
            prev = path[-1]
            path.append(nxt[0])
        if len(path) != len(comp):
            return None
        out.append(path)
    return out


def _band_sign(d, pair):
    """Sign of a crossing along its band: +1 when the over dart is the
    counterclockwise-later dart of the given side pair."""
    u, v = pair
    later = v if rot(u) == v else u
    return 1 if d.is_over(later) else -1


def _outward_pair(c, inward_darts):
    """The side pair of crossing c away from the given darts."""
    outs = [4 * c + p for p in range(4) if 4 * c + p not in inward_darts]
    if len(outs) != 2 or rot(outs[0]) != outs[1] and rot(outs[1]) != outs[0]:
        return None
    return tuple(sorted(outs))


def _classify_piece(d, boundary, crossings, all_circles):
    """Classify one region piece as a TBD or jewel Region.

    boundary: list of (circle, facing side).  Raises NotAdmissible when
    the piece is neither.
    """
    reg = _try_tbd(d, boundary, crossings)
    if reg is not None:
        return reg
    if not crossings:
        raise NotAdmissible("empty region is not a band")
    # jewel: every circle of the diagram lying in the piece is parallel
    # to its boundary.  A side of a candidate circle occupies the piece
    # when it holds a region crossing or swallows a hole's content.
    allcross = frozenset(range(d.n))
    contents = [allcross - f for _, f in boundary]
    partitions = {frozenset((b.inside, b.outside)) for b, _ in boundary}

    def occupied(s):
        return bool(s & crossings) or any(c <= s for c in contents)

    for g in all_circles:
        if frozenset((g.inside, g.outside)) in partitions:
            continue
        if not all(compatible(g, b) for b, _ in boundary):
            continue
        if occupied(g.inside) and occupied(g.outside):
            raise NotAdmissible("region is neither band nor jewel")
    return Region("JEWEL", tuple(b for b, _ in boundary), frozenset(crossings))


def _try_tbd(d, boundary, crossings):
    adj = _bigon_adjacency(d, crossings)
    if not boundary:
        return _try_torus_band(d, crossings, adj)
    chains = _chain_components(adj)
    if chains is None:
        return None

    # features along each edge carrying ports of this region
    holes = [b for b, _ in boundary]
    facing = {i: f for i, (_, f) in enumerate(boundary)}
    cuts_per_edge = {}
    for i, (g, _) in enumerate(boundary):
        for e in g.cut_cycle:
            cuts_per_edge.setdefault(e, []).append(i)

    def features(e):
        a, b = d.edges[e]
        ca = a // 4
        hs = cuts_per_edge.get(e, [])

        def side_len(i):
            g = holes[i]
            s = g.inside if ca in g.inside else g.outside
            return len(s)

        hs = sorted(hs, key=side_len)
        return [("dart", a)] + [("hole", i) for i in hs] + [("dart", b)]

    def port_neighbor(i, e):
        feats = features(e)
        k = feats.index(("hole", i))
        a, _ = d.edges[e]
        toward_a = (a // 4) in facing[i]
        return feats[k - 1] if toward_a else feats[k + 1]

    def dart_neighbor(x):
        feats = features(d.edge_of(x))
        return feats[1] if feats[0] == ("dart", x) else feats[-2]

    # link each port and each candidate outward dart to its neighbor point
    link = {}
    for i, g in enumerate(holes):
        for e in g.cut_cycle:
            f = port_neighbor(i, e)
            if f[0] == "hole":
                link[("P", i, e)] = ("P", f[1], e)
            else:
                if f[1] // 4 not in crossings:
                    return None
                link[("P", i, e)] = ("D", f[1])
    for c in crossings:
        for p in range(4):
            x = 4 * c + p
            e = d.edge_of(x)
            if e in cuts_per_edge:
                f = dart_neighbor(x)
                link[("D", x)] = (
                    ("P", f[1], e) if f[0] == "hole" else ("D", f[1]))
            else:
                y = d.pairing[x]
                if y // 4 not in crossings:
                    return None
                link[("D", x)] = ("D", y)

    # enumerate split choices for holes and singleton chains
    hole_opts = []
    for i, g in enumerate(holes):
        cyc = g.cut_cycle
        opts = []
        for s in (0, 1):
            opts.append((
                (cyc[s], cyc[(s + 1) % 4]),
                (cyc[(s + 2) % 4], cyc[(s + 3) % 4])))
        hole_opts.append(opts)
    chain_opts = []
    for path in chains:
        if len(path) >= 2:
            first, last = path[0], path[-1]
            in1 = {x for x in range(4 * first, 4 * first + 4)
                   if d.pairing[x] // 4 == path[1]}
            in2 = {x for x in range(4 * last, 4 * last + 4)
                   if d.pairing[x] // 4 == path[-2]}
            o1, o2 = _outward_pair(first, in1), _outward_pair(last, in2)
            if o1 is None or o2 is None:
                return None
            chain_opts.append([(o1, o2)])
        else:
            c = path[0]
            a = [(
                (4 * c + s, 4 * c + (s + 1) % 4),
                (4 * c + (s + 2) % 4, 4 * c + (s + 3) % 4))
                for s in (0, 1)]
            chain_opts.append(a)

    for hchoice in product(*(range(len(o)) for o in hole_opts)):
        for cchoice in product(*(range(len(o)) for o in chain_opts)):
            reg = _assemble_band(
                d, holes, facing, chains, link,
                [hole_opts[i][hchoice[i]] for i in range(len(holes))],
                [chain_opts[k][cchoice[k]] for k in range(len(chains))],
                crossings)
            if reg is not None:
                return reg
    return None


def _assemble_band(d, holes, facing, chains, link, hole_splits,
                   chain_splits, crossings):
    """Try to close the band cycle for fixed port/end splits."""
    slots = []  # (kind, owner index, pair of points)
    sibling = {}
    point_slot = {}
    for i in range(len(holes)):
        pa, pb = hole_splits[i]
        ia = len(slots)
        slots.append(("hole", i, tuple(("P", i, e) for e in pa)))
        slots.append(("hole", i, tuple(("P", i, e) for e in pb)))
        sibling[ia] = ia + 1
        sibling[ia + 1] = ia
    for k, path in enumerate(chains):
        pa, pb = chain_splits[k]
        ia = len(slots)
        slots.append(("chain", k, tuple(("D", x) for x in pa)))
        slots.append(("chain", k, tuple(("D", x) for x in pb)))
        sibling[ia] = ia + 1
        sibling[ia + 1] = ia
    for idx, (_, _, pts) in enumerate(slots):
        for pt in pts:
            point_slot[pt] = idx

    # chain interior darts also appear as points of no slot; links from a
    # slot must land on points of exactly one other slot
    strand = {}
    for idx, (_, _, pts) in enumerate(slots):
        targets = set()
        for pt in pts:
            t = link.get(pt)
            if t is None or t not in point_slot:
                return None
            targets.add(point_slot[t])
        if len(targets) != 1:
            return None
        strand[idx] = targets.pop()
    for idx, t in strand.items():
        if strand.get(t) != idx or t == idx or sibling[idx] == t:
            return None

    # walk the cycle: strand step then sibling step
    start = 0
    seen = set()
    seq = []
    idx = start
    while idx not in seen:
        seen.add(idx)
        seq.append(idx)
        idx = sibling[strand[idx]]
    if idx != start:
        return None
    visited = set()
    for s in seq:
        visited.add(s)
        visited.add(strand[s])
    if len(visited) != len(slots):
        return None

    # read off holes in band order and the chains between them
    order = []  # ('hole', i, arrive pair, depart pair) / ('chain', k, from slot)
    for s in seq:
        kind, owner, pts = slots[s]
        order.append((kind, owner, s))
    hole_seq = []
    chain_between = {}
    m = len(order)
    # order alternates connectors: each element is the departing slot of
    # its connector. holes in the order they are traversed:
    positions = [j for j, item in enumerate(order) if item[0] == "hole"]
    if len(positions) != len(holes) or set(
            item[1] for item in order if item[0] == "hole") != set(
            range(len(holes))):
        return None
    for pos_idx, j in enumerate(positions):
        hole_seq.append(order[j][1])
        nxt = positions[(pos_idx + 1) % len(positions)]
        gap = []
        jj = (j + 1) % m
        while jj != nxt:
            gap.append(order[jj])
            jj = (jj + 1) % m
        if len(gap) > 1:
            return None
        chain_between[pos_idx] = gap[0][1] if gap else None

    out_holes = []
    out_splits = []
    out_chains = []
    for pos_idx, i in enumerate(hole_seq):
        depart_slot = order[positions[pos_idx]][2]
        arrive_slot = sibling[depart_slot]
        dep = tuple(pt[2] for pt in slots[depart_slot][2])
        arr = tuple(pt[2] for pt in slots[arrive_slot][2])
        out_holes.append(holes[i])
        out_splits.append((arr, dep))
        k = chain_between[pos_idx]
        if k is None:
            out_chains.append(((), 0))
        else:
            path = chains[k]
            # orient the chain from the end nearest this hole's depart slot
            first_end_pts = set(chain_splits[k][0])
            dep_targets = {link[pt] for pt in slots[depart_slot][2]}
            ordered = list(path)
            if not dep_targets & {("D", x) for x in first_end_pts}:
                ordered = ordered[::-1]
            pair = chain_splits[k][0] if ordered[0] == path[0] else chain_splits[k][1]
            sign = _band_sign(d, pair)
            out_chains.append((tuple(ordered), sign))

    used = set()
    for cr, _ in out_chains:
        used |= set(cr)
    if used != set(crossings):
        return None
    signs = {s for cr, s in out_chains if cr}
    if len(signs) > 1:
        return None  # all twist regions of a band share one sign
    total = sum(s * len(cr) for cr, s in out_chains)
    if len(out_holes) == 1 and abs(total) < 2:
        return None  # a spire has at least 2 crossings
    if len(out_holes) == 2 and total == 0:
        return None  # twisted annulus requires a nonzero total weight
    return Region(
        "TBD",
        tuple(b for b in out_holes),
        frozenset(crossings),
        holes=tuple(out_holes),
        splits=tuple(out_splits),
        chains=tuple(out_chains),
    )


def _try_torus_band(d, crossings, adj):
    """Whole-sphere region: a single closed twist cycle (2,m) torus."""
    if len(crossings) != d.n or not crossings:
        return None
    if len(crossings) == 2:
        c1, c2 = sorted(crossings)
        if adj[c1] != {c2}:
            return None
        pair = None
        for p in range(4):
            x = 4 * c1 + p
            if d.pairing[x] // 4 == c2 and d.pairing[rot(x)] // 4 == c2:
                # side pair perpendicular to the double edges
                pair = (rot(rot(x)), rot(rot(rot(x))))
                break
        if pair is None:
            return None
        sign = _band_sign(d, tuple(sorted(pair)))
        return Region("TBD", (), frozenset(crossings),
                      chains=(((c1, c2), sign),))
    if any(len(adj[c]) != 2 for c in crossings):
        return None
    start = min(crossings)
    cycle = [start]
    prev = None
    while True:
        nxt = [c for c in adj[cycle[-1]] if c != prev]
        if not nxt:
            return None
        prev = cycle[-1]
        if nxt[0] == start:
            break
        cycle.append(nxt[0])
        if len(cycle) > len(crossings):
            return None
    if len(cycle) != len(crossings):
        return None
    c0, nb = cycle[0], cycle[1]
    inward = {x for x in range(4 * c0, 4 * c0 + 4)
              if d.pairing[x] // 4 == nb}
    pair = _outward_pair(c0, inward)
    if pair is None:
        return None
    return Region("TBD", (), frozenset(crossings),
                  chains=((tuple(cycle), _band_sign(d, pair)),))


def classify_regions(d, family):
    """Regions of an admissible family, deterministically ordered."""
    allc = enumerate_haseman(d)
    pieces = _region_pieces(d, family.circles if isinstance(
        family, CircleFamily) else tuple(family))
    regions = [
        _classify_piece(d, bound, crossings, allc)
        for bound, crossings in pieces
    ]
    return tuple(sorted(regions, key=Region.sort_key))


def _admissible(d, circles):
    try:
        classify_regions(d, circles)
        return True
    except NotAdmissible:
        return False


@lru_cache(maxsize=256)
def canonical_family(d):
    """The minimal admissible family, by greedy pruning of a maximal
    laminar family (unique up to parallel classes)."""
    allc = enumerate_haseman(d)
    fam = []
    for c in allc:
        if all(compatible(c, o) for o in fam):
            fam.append(c)
    if not _admissible(d, tuple(fam)):
        raise NotAdmissible("maximal laminar family is not admissible")
    changed = True
    while changed:
        changed = False
        for c in list(fam):
            trial = tuple(x for x in fam if x is not c)
            if _admissible(d, trial):
                fam = list(trial)
                changed = True
                break
    return CircleFamily(tuple(fam), "canonical")


@dataclass(frozen=True)
class Decomposition:
    diagram: object
    family: CircleFamily
    regions: tuple

    def region_of_circle(self, circle, inner):
        """The adjacent region inside the circle if inner, else outside."""
        for r in self.regions:
            if circle in r.boundary and _region_is_inside(r, circle) == inner:
                return r
        raise KeyError("circle not in decomposition")


def _region_is_inside(region, circle):
    """True if the region lies inside the circle (circle is its parent)."""
    if region.crossings:
        return region.crossings <= circle.inside
    # empty region: inside iff every other boundary circle nests inside
    others = [b for b in region.boundary if b != circle]
    return all(b.inside < circle.inside for b in others)


@lru_cache(maxsize=256)
def decompose(d):
    fam = canonical_family(d)
    return Decomposition(d, fam, classify_regions(d, fam))


# -- essential family and rational tangles ------------------------------


def _forest(circles):
    parent = _containment_forest(list(circles))
    children = {i: [] for i in range(len(circles))}
    for i, p in enumerate(parent):
        if p != -1:
            children[p].append(i)
    return parent, children


def _chain(d, circle, inner):
    """The concentric chain of regions on one side of a circle: list of
    (outer circle, region) pairs if every region is a band of valency at
    most 2 ending in a spire, else None."""
    dec = decompose(d)
    out = []
    cur, cur_inner = circle, inner
    while True:
        r = dec.region_of_circle(cur, inner=cur_inner)
        if r.kind != "TBD":
            return None
        out.append((cur, r))
        others = [b for b in r.boundary if b != cur]
        if not others:
            return out
        if len(others) != 1:
            return None
        nxt = others[0]
        cur, cur_inner = nxt, not _region_is_inside(r, nxt)


def _side_set(circle, inner):
    return circle.inside if inner else circle.outside


@lru_cache(maxsize=256)
def _rational_sides(d):
    """(circle, inner flag) pairs whose chosen side is a rational tangle."""
    fam = canonical_family(d)
    out = []
    for g in fam.circles:
        for inner in (True, False):
            if _chain(d, g, inner) is not None:
                out.append((g, inner))
    return tuple(out)


@lru_cache(maxsize=256)
def is_rational_projection(d):
    """True when the whole projection is a closed rational chain,
    i.e. every region is a band of valency at most 2."""
    dec = decompose(d)
    return all(r.kind == "TBD" and r.valency <= 2 for r in dec.regions)


@lru_cache(maxsize=256)
def maximal_rational_tangles(d):
    """(circle, side crossing set) per maximal rational tangle."""
    if is_rational_projection(d):
        return ()
    sides = [(g, _side_set(g, inner)) for g, inner in _rational_sides(d)]
    out = []
    for g, s in sides:
        if not any(s < s2 for _, s2 in sides):
            out.append((g, s))
    return tuple(out)


@lru_cache(maxsize=256)
def essential_family(d):
    """Canonical circles not strictly inside a maximal rational tangle;
    empty for rational projections."""
    if is_rational_projection(d):
        return CircleFamily((), "essential")
    maxr = maximal_rational_tangles(d)
    keep = []
    for g in canonical_family(d).circles:
        strictly_inside = any(
            g.inside < s or g.outside < s for _, s in maxr)
        if not strictly_inside:
            keep.append(g)
    return CircleFamily(tuple(keep), "essential")


# -- connection paths and fraction reading ------------------------------


def _port_pairing(d, circle, side):
    """How the 4 cut edges pair up by strands inside the given side."""
    cut = set(circle.cut_cycle)
    side_dart = {}
    for e in cut:
        a, b = d.edges[e]
        side_dart[e] = a if a // 4 in side else b
    pairs = {}
    for e in cut:
        if e in pairs:
            continue
        x = side_dart[e]
        # follow the strand through crossings of this side
        while True:
            y = through(x)
            e2 = d.edge_of(y)
            if e2 in cut:
                pairs[e] = e2
                pairs[e2] = e
                break
            x = d.pairing[y]
    return pairs


def default_frame(circle):
    cyc = circle.cut_cycle
    return {"NW": cyc[0], "NE": cyc[1], "SE": cyc[2], "SW": cyc[3]}


def _check_frame(circle, frame):
    cyc = list(circle.cut_cycle)
    seq = [frame["NW"], frame["NE"], frame["SE"], frame["SW"]]
    for r0 in range(4):
        if cyc[r0:] + cyc[:r0] == seq:
            return
    raise ValueError("frame corners do not match the circle's cyclic order")


def connection_path(d, circle, side, frame=None):
    """H, V, or X: which corner pairs are joined inside the chosen side."""
    frame = frame or default_frame(circle)
    _check_frame(circle, frame)
    if not side:
        # trivial side: the circle meets two edges twice each
        if frame["NW"] == frame["NE"]:
            return "H"
        if frame["NW"] == frame["SW"]:
            return "V"
        raise ValueError("trivial side with no doubled edges")
    pairs = _port_pairing(d, circle, frozenset(side))
    if pairs[frame["NW"]] == frame["NE"]:
        return "H"
    if pairs[frame["NW"]] == frame["SW"]:
        return "V"
    return "X"


def entries(d, circle, side):
    """The cut edges whose strand runs into the given side."""
    out = []
    for e in circle.cut_cycle:
        a, b = d.edges[e]
        inside_dart = a if a // 4 in side else b
        if d.is_incoming(inside_dart):
            out.append(e)
    return tuple(out)


def circle_for_edges(d, edge_set, relaxed=False):
    c = make_circle(d, tuple(sorted(edge_set)), relaxed=relaxed)
    if c is None:
        raise ValueError("edges do not cut out a Haseman circle")
    return c


def _family_circle_like(d, circle):
    """The canonical-family member with circle's partition, or None."""
    for g in canonical_family(d).circles:
        if {g.inside, g.outside} == {circle.inside, circle.outside}:
            return g
    return None


def read_chain(d, circle, side, frame=None):
    """Fraction of the rational tangle inside a circle.

    Reads the concentric chain of canonical regions inside the circle
    into a continued fraction: a term at position j contributes
    (-1)^j times its band weight, with a leading 0 inserted when the
    outermost band meets the frame vertically.
    """
    from .rational import Frac, INF, eval_cf

    side = frozenset(side)
    frame = frame or default_frame(circle)
    _check_frame(circle, frame)
    if len(side) == 0:
        kind = connection_path(d, circle, side, frame)
        if kind == "H":
            return Frac(0, 1)
        if kind == "V":
            return INF
        raise NotRational("diagonal trivial tangle")
    if len(side) == 1:
        c = next(iter(side))
        # single crossing: fraction +-1 by its sign as a horizontal twist
        to_corner = {}
        for corner in ("NW", "NE", "SE", "SW"):
            e = frame[corner]
            a, b = d.edges[e]
            to_corner[corner] = a if a // 4 == c else b
        pair = (to_corner["NW"], to_corner["SW"])
        if rot(pair[0]) != pair[1] and rot(pair[1]) != pair[0]:
            raise NotRational("single crossing does not meet the frame")
        return Frac.of(_band_sign(d, pair), 1)

    g = _family_circle_like(d, circle)
    if g is None:
        raise NotRational("circle is not a canonical Conway circle")
    if side not in (g.inside, g.outside):
        raise NotRational("side does not match a side of the circle")
    dec = decompose(d)
    # walk the concentric chain of regions into the given side
    chain_regions = []
    cur, cur_inner = g, side == g.inside
    while True:
        r = dec.region_of_circle(cur, inner=cur_inner)
        if r.kind != "TBD":
            raise NotRational("interior region is not a band")
        chain_regions.append((cur, r))
        others = [b for b in r.boundary if b != cur]
        if not others:
            break
        if len(others) != 1:
            raise NotRational("interior branches; not a rational tangle")
        nxt = others[0]
        cur, cur_inner = nxt, not _region_is_inside(r, nxt)

    # direction of the outermost band at the frame
    terms = []
    pos = 0
    first_split = _split_at_hole(chain_regions[0][1], g)
    horizontal = _is_horizontal_split(first_split, frame)
    if not horizontal:
        terms.append(0)
        pos = 1
    prev_splits = None
    for k, (outer, r) in enumerate(chain_regions):
        w = r.total_weight
        terms.append(w if pos % 2 == 0 else -w)
        pos += 1
        # consecutive bands must meet each shared circle perpendicular
        if k + 1 < len(chain_regions):
            nxt_circle = chain_regions[k + 1][0]
            s_out = _split_at_hole(r, nxt_circle)
            s_in = _split_at_hole(chain_regions[k + 1][1], nxt_circle)
            if _same_split(s_out, s_in):
                raise NotRational("adjacent bands are parallel")
    if any(t == 0 for t in terms[1:]):
        raise NotRational("inner band with weight 0 in a chain")
    return eval_cf(terms)


def _split_at_hole(region, circle):
    for h, s in zip(region.holes, region.splits):
        if h == circle:
            return s
    raise NotRational("hole missing from band data")


def _same_split(s1, s2):
    a1 = {frozenset(p) for p in s1}
    a2 = {frozenset(p) for p in s2}
    return a1 == a2


def _is_horizontal_split(split, frame):
    pairs = {frozenset(p) for p in split}
    west = frozenset((frame["NW"], frame["SW"]))
    north = frozenset((frame["NW"], frame["NE"]))
    if west in pairs:
        return True  # band dips out west/east: horizontal
    if north in pairs:
        return False
    raise NotRational("band split does not align with the frame")
