"""Canonical and essential structure trees of a decomposition.

Vertices stand for regions (bands labeled by total weight, jewels by
"J", collapsed rational tangles by their fraction); edges stand for the
circles of the generating family.  Trees are unrooted; isomorphism and
automorphism search use a centroid-anchored canonical encoding with the
labels folded in.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circles import (
    canonical_family, decompose, essential_family, is_rational_projection,
    maximal_rational_tangles, read_chain, default_frame, _region_is_inside,
)
from .errors import NotATree, NotRational
from .rational import Frac, INF, eval_cf


@dataclass(frozen=True)
class StructureTree:
    labels: tuple          # int weight, "J", or Frac per vertex
    edges: tuple           # sorted (i, j) vertex index pairs
    kind: str              # "canonical" | "essential"
    aux: tuple = ()        # crossing counts, not part of isomorphism
    open_edge: object = None  # vertex index carrying a tangle half-edge

    @property
    def n(self):
        return len(self.labels)

    def adjacency(self):
        adj = {i: set() for i in range(self.n)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def validate(self):
        if len(self.edges) != self.n - 1:
            raise NotATree("edge count is not vertex count minus one")
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.n:
            raise NotATree("tree is not connected")
        return self

    def canonical_encoding(self):
        return _canonical_encoding(self)

    def to_json(self):
        return {
            "kind": self.kind,
            "vertices": [
                {"id": i, "label": _label_text(l),
                 **({"crossings": self.aux[i]} if self.aux else {})}
                for i, l in enumerate(self.labels)
            ],
            "edges": [list(e) for e in self.edges],
            "open_edge": self.open_edge,
        }

    def to_dot(self):
        lines = ["graph structure_tree {"]
        for i, l in enumerate(self.labels):
            lines.append('  v%d [label="%s"];' % (i, _label_text(l)))
        for a, b in self.edges:
            lines.append("  v%d -- v%d;" % (a, b))
        if self.open_edge is not None:
            lines.append('  open [shape=point];')
            lines.append("  v%d -- open [style=dashed];" % self.open_edge)
        lines.append("}")
        return "\n".join(lines)


def _label_text(label):
    return str(label)


def _label_key(label):
    return ("F", str(label)) if isinstance(label, Frac) else ("L", str(label))


def _canonical_encoding(t):
    """Centroid-anchored AHU encoding, labels folded in."""
    adj = t.adjacency()

    def encode(root, parent):
        subs = sorted(encode(w, root) for w in adj[root] if w != parent)
        mark = "*" if root == t.open_edge else ""
        return "(%s%s%s)" % (_label_key(t.labels[root]), mark, "".join(subs))

    return min(encode(c, None) for c in _centroids(t))


def _centroids(t):
    if t.n == 1:
        return [0]
    adj = {i: set(s) for i, s in t.adjacency().items()}
    layer = [v for v in adj if len(adj[v]) <= 1]
    remaining = set(adj)
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
            for w in adj[v]:
                adj[w].discard(v)
                if len(adj[w]) == 1 and w in remaining:
                    nxt.append(w)
        layer = nxt
    return sorted(remaining)


# -- construction --------------------------------------------------------


def canonical_tree(d):
    """Structure tree of the canonical decomposition.

    Accepts a LinkDiagram, or a RationalTangle for an open (tangle) tree.
    """
    from .rational import RationalTangle

    if isinstance(d, RationalTangle):
        return _tangle_tree(d, "canonical")
    dec = decompose(d)
    return _tree_from_regions(dec, dec.regions, "canonical").validate()


def _region_label(r):
    return r.total_weight if r.kind == "TBD" else "J"


def _tree_from_regions(dec, regions, kind, open_region=None):
    index = {r: i for i, r in enumerate(regions)}
    edges = []
    for g in dec.family.circles:
        ends = [index[r] for r in regions if g in r.boundary]
        if len(ends) == 2:
            edges.append(tuple(sorted(ends)))
    return StructureTree(
        tuple(_region_label(r) for r in regions),
        tuple(sorted(edges)),
        kind,
        aux=tuple(len(r.crossings) for r in regions),
        open_edge=None if open_region is None else index[open_region],
    )


def _tangle_tree(rt, kind):
    from .circles import circle_for_edges

    d = rt.diagram
    g = circle_for_edges(d, rt.cut_edges, relaxed=True)
    if kind == "essential":
        frac = read_chain(d, g, rt.tangle_crossings, rt.frame)
        return StructureTree((frac,), (), "essential", aux=(
            len(rt.tangle_crossings),), open_edge=0)
    dec = decompose(d)
    kept = [r for r in dec.regions
            if r.crossings and r.crossings <= rt.tangle_crossings]
    if not kept:
        # tangle too small to own a canonical region: single vertex
        frac = read_chain(d, g, rt.tangle_crossings, rt.frame)
        w = frac.r if frac.s > 0 else -frac.r
        return StructureTree((w,), (), "canonical",
                             aux=(len(rt.tangle_crossings),), open_edge=0)
    # the open edge hangs off the region adjacent to the tangle boundary
    outer = None
    for r in kept:
        if all(b.inside < rt.tangle_crossings
               or b.outside < rt.tangle_crossings for b in r.boundary):
            continue
        outer = r
    if outer is None:
        outer = max(kept, key=lambda r: len(r.crossings))
    return _tree_from_regions(dec, kept, "canonical", open_region=outer)


def _frame_from_split(circle, split):
    """Frame whose west pair is the given arrive pair of the split."""
    cyc = circle.cut_cycle
    arrive = set(split[0])
    for r in range(4):
        if {cyc[r], cyc[(r + 3) % 4]} == arrive:
            return {"NW": cyc[r], "NE": cyc[(r + 1) % 4],
                    "SE": cyc[(r + 2) % 4], "SW": cyc[(r + 3) % 4]}
    return None


def canonical_fraction_rep(f):
    """Representative of {F, -1/F}: the quarter-turn frame orbit."""
    if f.is_inf:
        return f
    if f.r == 0:
        return INF
    alt = Frac.of(abs(f.s), -f.r if f.s > 0 else f.r)
    return max(f, alt, key=lambda x: (x.r, x.s))


def tangle_fraction_label(d, circle, side):
    """Fraction label for a collapsed rational tangle vertex, framed by
    the band passage of the adjacent outer region when there is one."""
    dec = decompose(d)
    inner = side == circle.inside
    outer_region = dec.region_of_circle(circle, inner=not inner)
    if outer_region.kind == "TBD":
        for h, s in zip(outer_region.holes, outer_region.splits):
            if h == circle:
                frame = _frame_from_split(circle, s)
                if frame is not None:
                    return read_chain(d, circle, side, frame)
    f = read_chain(d, circle, side, default_frame(circle))
    return canonical_fraction_rep(f)


def rational_knot_fraction(d):
    """Deterministic fraction label for a closed rational projection:
    the maximal fraction over reading direction and frame parity."""
    dec = decompose(d)
    regions = list(dec.regions)
    if len(regions) == 1:
        return regions[0].total_weight
    ends = [r for r in regions if r.valency == 1]
    if len(ends) != 2:
        raise NotRational("not a closed rational chain")
    # order regions along the path
    order = [ends[0]]
    used_circles = set()
    while True:
        r = order[-1]
        step = None
        for g in r.boundary:
            if g in used_circles:
                continue
            for r2 in regions:
                if r2 is not r and g in r2.boundary:
                    step = (g, r2)
        if step is None:
            break
        used_circles.add(step[0])
        order.append(step[1])
    weights = [r.total_weight for r in order]
    cands = []
    for seq in (weights, weights[::-1]):
        for lead in (0, 1):
            terms = ([0] if lead else []) + [
                w if (i + lead) % 2 == 0 else -w
                for i, w in enumerate(seq)]
            try:
                cands.append(eval_cf(terms))
            except Exception:
                pass
    return max(cands, key=lambda f: (f.r, f.s))


def essential_tree(d):
    """Structure tree over the essential family; maximal rational
    tangles collapse to monovalent fraction-labeled vertices."""
    from .rational import RationalTangle

    if isinstance(d, RationalTangle):
        return _tangle_tree(d, "essential")
    dec = decompose(d)
    if not dec.family.circles:
        return _tree_from_regions(dec, dec.regions, "essential").validate()
    if is_rational_projection(d):
        frac = rational_knot_fraction(d)
        n = sum(len(r.crossings) for r in dec.regions)
        return StructureTree((frac,), (), "essential", aux=(n,))
    tangles = maximal_rational_tangles(d)
    ess = essential_family(d)

    def vertex_of(r):
        for t_i, (g, s) in enumerate(tangles):
            if r.crossings and r.crossings <= s:
                return ("T", t_i)
        return ("R", r)

    vertex_ids = []
    for r in dec.regions:
        v = vertex_of(r)
        if v not in vertex_ids:
            vertex_ids.append(v)
    labels = []
    aux = []
    for v in vertex_ids:
        if v[0] == "T":
            g, s = tangles[v[1]]
            labels.append(tangle_fraction_label(d, g, s))
            aux.append(len(s))
        else:
            labels.append(_region_label(v[1]))
            aux.append(len(v[1].crossings))
    index = {v: i for i, v in enumerate(vertex_ids)}
    edges = set()
    for g in ess.circles:
        ends = {index[vertex_of(r)] for r in dec.regions if g in r.boundary}
        if len(ends) == 2:
            edges.add(tuple(sorted(ends)))
    return StructureTree(
        tuple(labels), tuple(sorted(edges)), "essential", aux=tuple(aux)
    ).validate()


# -- isomorphism and automorphisms --------------------------------------


@dataclass(frozen=True)
class TreeAutomorphism:
    vertex_map: tuple
    order: int


def _perm_order(p):
    n = len(p)
    seen = [False] * n
    from math import lcm
    o = 1
    for i in range(n):
        if seen[i]:
            continue
        l = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            l += 1
        o = lcm(o, l)
    return o


def _match(t1, t2):
    """Backtracking label- and adjacency-preserving bijections."""
    if t1.n != t2.n or len(t1.edges) != len(t2.edges):
        return
    adj1, adj2 = t1.adjacency(), t2.adjacency()
    key1 = [( _label_key(t1.labels[v]), len(adj1[v]), v == t1.open_edge)
            for v in range(t1.n)]
    key2 = [( _label_key(t2.labels[v]), len(adj2[v]), v == t2.open_edge)
            for v in range(t2.n)]
    if sorted(key1) != sorted(key2):
        return
    order = sorted(range(t1.n), key=lambda v: (len(adj1[v]), v))
    # map vertices in BFS order from the first vertex for pruning
    start = order[-1]
    bfs = [start]
    seen = {start}
    for v in bfs:
        for w in sorted(adj1[v]):
            if w not in seen:
                seen.add(w)
                bfs.append(w)

    def extend(k, mapping, used):
        if k == len(bfs):
            yield dict(mapping)
            return
        v = bfs[k]
        anchor = next((u for u in adj1[v] if u in mapping), None)
        cands = (adj2[mapping[anchor]] if anchor is not None
                 else range(t2.n))
        for c in cands:
            if c in used or key1[v] != key2[c]:
                continue
            ok = True
            for u in adj1[v]:
                if u in mapping and mapping[u] not in adj2[c]:
                    ok = False
                    break
            if ok:
                mapping[v] = c
                used.add(c)
                yield from extend(k + 1, mapping, used)
                del mapping[v]
                used.discard(c)

    yield from extend(0, {}, set())


def tree_isomorphic(t1, t2):
    """A label-preserving bijection between the trees, or None."""
    if t1.kind != t2.kind:
        return None
    for m in _match(t1, t2):
        return m
    return None


def all_automorphisms(t):
    return [TreeAutomorphism(
        tuple(m[i] for i in range(t.n)),
        _perm_order([m[i] for i in range(t.n)]))
        for m in _match(t, t)]


def automorphisms_of_order(t, q):
    """Non-identity automorphisms with order dividing q."""
    out = []
    for a in all_automorphisms(t):
        if a.order == 1:
            continue
        if q % a.order == 0:
            out.append(a)
    return out


def fixed_subtree(t, phi):
    """(fixed vertex ids, fixed edges, edge_fixed flag).

    edge_fixed is set when an edge is invariant with its endpoints
    swapped (the fixed point is the edge midpoint)."""
    p = phi.vertex_map if isinstance(phi, TreeAutomorphism) else tuple(phi)
    verts = tuple(v for v in range(t.n) if p[v] == v)
    edges = tuple(e for e in t.edges if e[0] in verts and e[1] in verts)
    edge_fixed = any(
        p[a] == b and p[b] == a for a, b in t.edges)
    return verts, edges, edge_fixed
