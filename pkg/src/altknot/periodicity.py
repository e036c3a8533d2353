"""Periodicity of alternating projections.

A projection is q-periodic when its combinatorial map admits a free
orientation-preserving automorphism of order q: no crossing or edge is
left in place, and exactly two faces (the rotation poles) stay fixed.
Obstructions to q-periodicity of the underlying knot are read off the
essential structure tree, the rational classification, a parity law for
even periods, and forced atoms of a supplied adjacency tree; visible
periodicity is searched for in the flype closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import rot, rot_inv
from .errors import NotAKnot, NotAlternating, NotATree
from .circles import decompose, is_rational_projection
from .trees import (StructureTree, essential_tree, all_automorphisms,
                    fixed_subtree, _perm_order)
from .flypes import flype_closure


@dataclass(frozen=True)
class ProjectionSymmetry:
    map_automorphism: tuple   # dart permutation
    order: int
    fixed_cells: tuple        # the two invariant faces, as dart tuples
    strict: bool


@dataclass(frozen=True)
class SeifertReport:
    circles: int
    genus: int
    orbit_sizes: tuple = ()


@dataclass(frozen=True)
class AtomTree:
    vertices: tuple   # atom descriptors: dicts with name/is_rational/...
    edges: tuple

    def validate(self):
        n = len(self.vertices)
        if n == 0 or len(self.edges) != n - 1:
            raise NotATree("atom adjacency graph is not a tree")
        adj = {i: [] for i in range(n)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != n:
            raise NotATree("atom adjacency graph is not connected")


@dataclass(frozen=True)
class PeriodicityReport:
    q: int
    verdict: str              # visible | obstructed | inconclusive
    reasons: tuple = ()
    witness: object = None
    symmetry: object = None
    truncated: bool = False


def _crossing_map(g):
    return {c: g[4 * c] // 4 for c in range(len(g) // 4)}


def _is_free(d, g):
    """No crossing and no edge is invariant under the automorphism."""
    cm = _crossing_map(g)
    if any(cm[c] == c for c in cm):
        return False
    for a, b in d.edges:
        if {g[a], g[b]} == {a, b}:
            return False
    return True


def _invariant_faces(d, g):
    out = []
    for f in d.faces:
        img = frozenset(g[x] for x in f)
        if img == frozenset(f):
            out.append(f)
    return out


def projection_symmetries(d):
    """All free finite-order map symmetries, with strictness."""
    frees = []
    for g in d.automorphisms():
        order = _perm_order(g)
        if order == 1:
            continue
        if not _is_free(d, g):
            continue
        fixed = _invariant_faces(d, g)
        # free orientation-preserving rotations have exactly two poles
        assert len(fixed) == 2, "free symmetry must fix exactly two faces"
        frees.append((g, order, tuple(fixed)))
    out = []
    gs = {g for g, _, _ in frees}
    for g, order, fixed in frees:
        strict = True
        for h, h_order, _ in frees:
            if h_order > order and h_order % order == 0:
                r = h_order // order
                power = h
                for _ in range(r - 1):
                    power = tuple(power[x] for x in h)
                if power == g:
                    strict = False
                    break
        assert g in gs
        out.append(ProjectionSymmetry(g, order, fixed, strict))
    out.sort(key=lambda s: (s.order, s.map_automorphism))
    return out


def is_q_periodic_projection(d, q):
    """A strict free order-q symmetry of the map, if one exists."""
    for s in projection_symmetries(d):
        if s.order == q and s.strict:
            return s
    return None


def _is_torus2_diagram(d):
    dec = decompose(d)
    return (len(dec.family.circles) == 0 and len(dec.regions) == 1
            and dec.regions[0].kind == "TBD"
            and not dec.regions[0].holes)


def atom_lemma(t, q):
    """Atoms forced q-periodic: vertices fixed by every automorphism of
    the adjacency tree whose order divides q."""
    t.validate()
    st = StructureTree(
        tuple(v.get("name", i) for i, v in enumerate(t.vertices)),
        tuple(t.edges), kind="atoms")
    forced = set(range(len(t.vertices)))
    for a in all_automorphisms(st):
        if q % a.order:
            continue
        forced &= {v for v, w in enumerate(a.vertex_map) if v == w}
    return forced


def _atom_can_be_q_periodic(atom, q):
    periods = atom.get("periods")
    if periods is not None:
        return q in periods
    if atom.get("is_rational") and not atom.get("is_torus2q"):
        return q <= 2
    return True


def obstruction_report(d, q, atoms=None):
    """Cheap-first obstructions to q-periodicity of the knot, q >= 3."""
    if len(d.components) != 1:
        raise NotAKnot("periodicity obstructions apply to knots")
    if not d.is_alternating():
        raise NotAlternating("diagram must be alternating")
    reasons = []
    if d.n % q:
        reasons.append("CrossingCount")
    if (q >= 3 and is_rational_projection(d)
            and not _is_torus2_diagram(d)):
        reasons.append("RationalKnot")
    t = essential_tree(d)
    admissible = []
    if len(t.labels) == 1:
        # the induced tree automorphism is the identity with Fix = V0
        admissible.append(None)
    else:
        saw_candidate = False
        for a in all_automorphisms(t):
            if a.order == 1 or q % a.order:
                continue
            saw_candidate = True
            verts, edges, edge_fixed = fixed_subtree(t, a)
            if len(verts) == 1 and not edges and not edge_fixed:
                admissible.append(a)
        if not admissible:
            reasons.append("EdgeFixed" if saw_candidate
                           else "NoTreeAutomorphism")
    if q % 2 == 0 and admissible:
        def fixes_tbd(a):
            if a is None:
                return isinstance(t.labels[0], int)
            verts, _, _ = fixed_subtree(t, a)
            (v,) = verts
            return isinstance(t.labels[v], int)
        if all(fixes_tbd(a) for a in admissible):
            reasons.append("ParityTBD")
    if atoms is not None:
        for v in atom_lemma(atoms, q):
            if not _atom_can_be_q_periodic(atoms.vertices[v], q):
                reasons.append("AtomLemma")
                break
    verdict = "obstructed" if reasons else "inconclusive"
    return PeriodicityReport(q, verdict, tuple(reasons))


def find_periodic_projection(d, q, budget=10000):
    """Search the flype closure for a strictly q-symmetric projection."""
    res = flype_closure(d, budget)
    found = None
    for x in sorted(res.diagrams, key=lambda y: y.canonical_form):
        s = is_q_periodic_projection(x, q)
        if s is not None:
            assert x.n % q == 0, "witness violates the crossing-count law"
            found = (x, s)
            break
    if found is None:
        return (None, None, res.truncated)
    return (found[0], found[1], res.truncated)


def periodicity_report(d, q, atoms=None, budget=10000):
    """Full pipeline: obstructions, then visibility search."""
    rep = obstruction_report(d, q, atoms)
    if rep.verdict == "obstructed":
        return rep
    witness, sym, truncated = find_periodic_projection(d, q, budget)
    if witness is not None:
        return PeriodicityReport(q, "visible", (), witness, sym, truncated)
    return PeriodicityReport(q, "inconclusive", rep.reasons, None, None,
                             truncated)


def seifert_circles(d):
    """Seifert circles by oriented smoothing, as dart orbits."""
    succ = {}
    for a in d.darts:
        if not d.is_incoming(a):
            continue
        o = rot(a) if not d.is_incoming(rot(a)) else rot_inv(a)
        succ[a] = d.pairing[o]
    seen = set()
    circles = []
    for a in succ:
        if a in seen:
            continue
        cyc = []
        x = a
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = succ[x]
        circles.append(tuple(cyc))
    return circles


def seifert_report(d, s=None):
    """Circle count, genus, and the symmetry's orbit structure."""
    circles = seifert_circles(d)
    sc = len(circles)
    genus = (d.n - sc + 1) // 2
    orbit_sizes = ()
    if s is not None:
        g = s.map_automorphism
        ix = {}
        for i, cyc in enumerate(circles):
            for x in cyc:
                ix[frozenset((x, d.pairing[x]))] = i

        def image(i):
            a = circles[i][0]
            return ix[frozenset((g[a], g[d.pairing[a]]))]

        seen = set()
        sizes = []
        for i in range(sc):
            if i in seen:
                continue
            j, size = i, 0
            while j not in seen:
                seen.add(j)
                size += 1
                j = image(j)
            sizes.append(size)
        orbit_sizes = tuple(sorted(sizes))
    return SeifertReport(sc, genus, orbit_sizes)
