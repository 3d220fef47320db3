"""Annotation systems: composable feasibility oracles over annotated empty triangles.

A token is always a pair ``(color, payload)``; the color component is ``""``
for uncolored element classes.  Systems are intensional: they expose per
element candidate lists and a triangle feasibility test, never a materialised
triangle list (sizes like n^9 would be hopeless even at n = 12).

``check(tri, vtoks, etoks, strict)`` receives the triangle's points in any
orientation, vertex tokens aligned with them and edge tokens in the adjacent
convention (``etoks[k]`` belongs to edge ``(tri[k], tri[k+1])``).  Tokens may
be ``None`` while a solver is still guessing; rules only fire once their
inputs are assigned, and ``strict=True`` promises everything is assigned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .geometry import INSIDE, PointSet
from .plane_graph import norm_edge

EMPTY = ("", "")
PURPLE = "purple"


def color_of(tok):
    return tok[0]


def payload_of(tok):
    return tok[1]


@dataclass(frozen=True)
class AnnotatedTriangle:
    """3 point ids in canonical order plus 6 tokens (edge i opposite vertex i)."""

    points: Tuple[int, int, int]
    v_tokens: Tuple
    e_tokens: Tuple

    @staticmethod
    def canonical(ps: PointSet, points, v_tokens, e_tokens) -> "AnnotatedTriangle":
        """Canonical order: ids ascending, then flipped to CCW; tokens permuted along."""
        tri = list(zip(points, v_tokens, e_tokens))
        tri.sort(key=lambda t: t[0])
        pts = [t[0] for t in tri]
        if ps.orient(*pts) < 0:
            tri = [tri[0], tri[2], tri[1]]
            pts = [t[0] for t in tri]
        return AnnotatedTriangle(tuple(pts), tuple(t[1] for t in tri), tuple(t[2] for t in tri))


# ---------------------------------------------------------------------------
# angular helpers (exact): positions in clockwise / counterclockwise sweeps


def _stage_cw(dx, dy):
    if dx == 0 and dy > 0:
        return 0
    if dx > 0:
        return 1
    if dx == 0 and dy < 0:
        return 2
    return 3


def _stage_ccw(dx, dy):
    if dx == 0 and dy > 0:
        return 0
    if dx < 0:
        return 1
    if dx == 0 and dy < 0:
        return 2
    return 3


def dir_before(d1, d2, cw: bool) -> bool:
    """Does direction d1 come strictly before d2, sweeping from straight up?"""
    s1 = _stage_cw(*d1) if cw else _stage_ccw(*d1)
    s2 = _stage_cw(*d2) if cw else _stage_ccw(*d2)
    if s1 != s2:
        return s1 < s2
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    return cross < 0 if cw else cross > 0


def wedge_blocks(ps: PointSet, corner: int, o1: int, o2: int, w: int) -> bool:
    """Is w strictly inside the triangle's angular sector at `corner`?

    If so, the straight segment from corner to w would have to cross the
    triangle, so no edge (corner, w) can coexist with this triangle.
    """
    if w in (corner, o1, o2):
        return False
    s1 = ps.orient(corner, o1, w)
    s2 = ps.orient(corner, o2, w)
    return s1 == ps.orient(corner, o1, o2) and s2 == ps.orient(corner, o2, o1)


class _HullInfo:
    """Static hull data: per hull vertex the first/last incident hull edge in each sweep."""

    def __init__(self, ps: PointSet):
        self.ps = ps
        hull = ps.convex_hull()
        self.hull_cycle = hull
        self.hull_vertices = frozenset(hull)
        self.hull_edges = ps.hull_edge_set()
        self.prev = {}
        self.next = {}
        for i, v in enumerate(hull):
            self.next[v] = hull[(i + 1) % len(hull)]
            self.prev[v] = hull[(i - 1) % len(hull)]

    def sweep_anchor(self, v: int, cw: bool) -> Optional[int]:
        """The neighbor whose edge starts v's rotation, or None for interior v."""
        if v not in self.hull_vertices:
            return None
        return self.prev[v] if cw else self.next[v]

    def sweep_end(self, v: int, cw: bool) -> Optional[int]:
        if v not in self.hull_vertices:
            return None
        return self.next[v] if cw else self.prev[v]


def corner_pair(ps: PointSet, tri, k: int, cw: bool):
    """At corner tri[k], the (first, second) incident triangle edges in the sweep.

    Going around a vertex, the two triangle edges at a corner are rotation
    consecutive; which comes first depends only on the triangle orientation.
    """
    a, b, c = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
    o = ps.orient(a, b, c)
    # CCW triangle: at corner a the CCW rotation meets b then c
    if o > 0:
        first_ccw, second_ccw = b, c
    else:
        first_ccw, second_ccw = c, b
    if cw:
        return second_ccw, first_ccw
    return first_ccw, second_ccw


def angular_gap_count(ps: PointSet, hull: _HullInfo, x: int, y: int, cw: bool) -> int:
    """Number of points strictly between x's sweep start and the direction x->y."""
    px = ps.coords(x)
    py = ps.coords(y)
    dxy = (py[0] - px[0], py[1] - px[1])
    anchor = hull.sweep_anchor(x, cw)
    if anchor is not None:
        pa = ps.coords(anchor)
        da = (pa[0] - px[0], pa[1] - px[1])
    cnt = 0
    for z in ps.ids:
        if z in (x, y):
            continue
        pz = ps.coords(z)
        dz = (pz[0] - px[0], pz[1] - px[1])
        if not dir_before(dz, dxy, cw):
            continue
        if anchor is not None and not dir_before(da, dz, cw) and dz != da:
            continue
        cnt += 1
    return cnt


# ---------------------------------------------------------------------------
# system base and plumbing


class AnnotationSystem:
    """Base: a feasibility oracle plus per-element candidate enumerators."""

    def __init__(self, ps: PointSet, vcolors: Tuple[str, ...] = (), ecolors: Tuple[str, ...] = ()):
        self.ps = ps
        self.vcolors = tuple(vcolors)
        self.ecolors = tuple(ecolors)
        self.size_bound = None
        self._vc: Dict[int, tuple] = {}
        self._ec: Dict[Tuple[int, int], tuple] = {}

    @property
    def color_arity(self) -> Tuple[int, int]:
        return (len(self.vcolors), len(self.ecolors))

    def vertex_candidates(self, v: int) -> tuple:
        if v not in self._vc:
            self._vc[v] = tuple(self._vertex_candidates(v))
        return self._vc[v]

    def edge_candidates(self, e: Tuple[int, int]) -> tuple:
        e = norm_edge(*e)
        if e not in self._ec:
            self._ec[e] = tuple(self._edge_candidates(e))
        return self._ec[e]

    def _vertex_candidates(self, v):
        return [(c, "") for c in self.vcolors] if self.vcolors else [EMPTY]

    def _edge_candidates(self, e):
        return [(c, "") for c in self.ecolors] if self.ecolors else [EMPTY]

    def check(self, tri, vtoks, etoks, strict: bool) -> bool:
        for t in vtoks:
            if t is not None and self.vcolors and color_of(t) not in self.vcolors:
                return False
        for t in etoks:
            if t is not None and self.ecolors and color_of(t) not in self.ecolors:
                return False
        return True

    def is_feasible(self, at: AnnotatedTriangle) -> bool:
        """Public feasibility: empty triangle plus token rules."""
        a, b, c = at.points
        if not self.ps.triangle_empty(a, b, c):
            return False
        etoks_adj = (at.e_tokens[2], at.e_tokens[0], at.e_tokens[1])
        return self.check(at.points, at.v_tokens, etoks_adj, strict=True)


class TrivialSystem(AnnotationSystem):
    """All empty triangles with every token empty: counts plain triangulations."""

    def __init__(self, ps: PointSet):
        super().__init__(ps)
        n = len(ps)
        self.size_bound = n * (n - 1) * (n - 2) // 6

    def check(self, tri, vtoks, etoks, strict):
        return all(t is None or t == EMPTY for t in list(vtoks) + list(etoks))


class ColorSystem(AnnotationSystem):
    """Complete color annotation: any colors from the declared palettes."""

    def __init__(self, ps: PointSet, vcolors=(), ecolors=()):
        super().__init__(ps, vcolors, ecolors)
        n = len(ps)
        cv = max(1, len(vcolors))
        ce = max(1, len(ecolors))
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * cv**3 * ce**3


class CombinedSystem(AnnotationSystem):
    """The product combinator: tokens pair up, feasibility is the conjunction."""

    def __init__(self, left: AnnotationSystem, right: AnnotationSystem):
        if left.vcolors != right.vcolors or left.ecolors != right.ecolors:
            raise ValueError("combined systems must extend the same color annotation")
        super().__init__(left.ps, left.vcolors, left.ecolors)
        self.left = left
        self.right = right
        if left.size_bound is not None and right.size_bound is not None:
            self.size_bound = left.size_bound * right.size_bound

    @staticmethod
    def _split(tok):
        if tok is None:
            return None, None
        c, (p1, p2) = tok
        return (c, p1), (c, p2)

    def _merge_cands(self, c1, c2):
        by1: Dict[str, list] = {}
        for c, p in c1:
            by1.setdefault(c, []).append(p)
        out = []
        for c, p2 in c2:
            for p1 in by1.get(c, ()):
                out.append((c, (p1, p2)))
        return out

    def _vertex_candidates(self, v):
        return self._merge_cands(self.left.vertex_candidates(v), self.right.vertex_candidates(v))

    def _edge_candidates(self, e):
        return self._merge_cands(self.left.edge_candidates(e), self.right.edge_candidates(e))

    def check(self, tri, vtoks, etoks, strict):
        v1, v2 = zip(*(self._split(t) for t in vtoks))
        e1, e2 = zip(*(self._split(t) for t in etoks))
        return self.left.check(tri, v1, e1, strict) and self.right.check(tri, v2, e2, strict)


def combine(left: AnnotationSystem, right: AnnotationSystem) -> AnnotationSystem:
    return CombinedSystem(left, right)


# ---------------------------------------------------------------------------
# builders


def build_trivial_annotation(ps: PointSet) -> AnnotationSystem:
    return TrivialSystem(ps)


def build_color_annotation(ps: PointSet, vcolors=(), ecolors=()) -> AnnotationSystem:
    return ColorSystem(ps, vcolors, ecolors)


class CdtSystem(AnnotationSystem):
    """Edge tokens name the apexes of the two incident triangles.

    Purple edges must additionally pass the empty-circumcircle test against
    the named far apex; hull edges satisfy the condition by convention and
    carry a one-sided token.
    """

    def __init__(self, ps: PointSet, vcolors=(), ecolors=(PURPLE,)):
        if PURPLE not in ecolors:
            raise ValueError("a CDT system needs the purple edge color")
        super().__init__(ps, vcolors, ecolors)
        self.hull_edges = ps.hull_edge_set()
        n = len(ps)
        self.size_bound = n**6

    def _edge_candidates(self, e):
        x, y = e
        ids = self.ps.ids
        left = [z for z in ids if z not in e and self.ps.orient(x, y, z) > 0 and self.ps.triangle_empty(x, y, z)]
        right = [z for z in ids if z not in e and self.ps.orient(x, y, z) < 0 and self.ps.triangle_empty(x, y, z)]
        out = []
        if e in self.hull_edges:
            inner = left if left else right
            for col in self.ecolors:
                for a in inner:
                    out.append((col, ("h", a)))
            return out
        for col in self.ecolors:
            for a in left:
                for b in right:
                    if col == PURPLE and self.ps.in_circle(x, y, a, b) == INSIDE:
                        continue
                    out.append((col, ("i",) + tuple(sorted((a, b)))))
        return out

    def check(self, tri, vtoks, etoks, strict):
        if not super().check(tri, vtoks, etoks, strict):
            return False
        ps = self.ps
        for k in range(3):
            tok = etoks[k]
            if tok is None:
                continue
            x, y = tri[k], tri[(k + 1) % 3]
            z = tri[(k + 2) % 3]
            col, pl = tok
            if pl[0] == "h":
                if norm_edge(x, y) not in self.hull_edges or z != pl[1]:
                    return False
            else:
                _, a, b = pl
                if z == a:
                    far = b
                elif z == b:
                    far = a
                else:
                    return False
                if ps.orient(x, y, far) == ps.orient(x, y, z):
                    return False
                if col == PURPLE and ps.in_circle(x, y, z, far) == INSIDE:
                    return False
        return True


def build_cdt_annotation(ps: PointSet, vcolors=(), ecolors=(PURPLE,)) -> AnnotationSystem:
    return CdtSystem(ps, vcolors, ecolors)


class MatchingSystem(AnnotationSystem):
    """Vertex tokens name the matched partner; orange edges join mutual partners."""

    def __init__(self, ps: PointSet, struct_color="orange", ecolors=("orange", PURPLE)):
        super().__init__(ps, (), ecolors)
        self.struct_color = struct_color
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * n**3

    def _vertex_candidates(self, v):
        return [("", ("p", w)) for w in self.ps.ids if w != v]

    def check(self, tri, vtoks, etoks, strict):
        if not super().check(tri, vtoks, etoks, strict):
            return False
        partner = [None if t is None else payload_of(t)[1] for t in vtoks]
        for k in range(3):
            x, y, z = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
            tok = etoks[k]
            px, py = partner[k], partner[(k + 1) % 3]
            if tok is not None:
                orange = color_of(tok) == self.struct_color
                if orange:
                    if (px is not None and px != y) or (py is not None and py != x):
                        return False
                elif px == y or py == x:
                    return False
            if px is not None and px not in tri and wedge_blocks(self.ps, x, y, z, px):
                return False
        return True


def build_matching_annotation(ps: PointSet, ecolors=("orange", PURPLE)) -> AnnotationSystem:
    return MatchingSystem(ps, "orange", ecolors)


class DegreeSystem(AnnotationSystem):
    """Triangulation degrees: clockwise edge numbering around each vertex.

    Edge payloads are the numbers at both endpoints (min-id endpoint first).
    The wedge of rotation-consecutive edges is checked in every triangle; the
    wrap-around wedge certifies the total degree.
    """

    def __init__(self, ps: PointSet, degree_sets: Dict[int, frozenset]):
        super().__init__(ps)
        self.D = {v: frozenset(degree_sets[v]) for v in ps.ids}
        self.hull = _HullInfo(ps)
        self.maxnum = {v: max(self.D[v]) if self.D[v] else 0 for v in ps.ids}
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * n**6

    def _edge_candidates(self, e):
        x, y = e
        bx = min(self.maxnum[x], 1 + angular_gap_count(self.ps, self.hull, x, y, cw=True))
        by = min(self.maxnum[y], 1 + angular_gap_count(self.ps, self.hull, y, x, cw=True))
        out = []
        for i in range(1, bx + 1):
            for j in range(1, by + 1):
                out.append(("", (i, j)))
        return out

    def _num_at(self, etoks, tri, k, v):
        tok = etoks[k]
        if tok is None:
            return None
        i, j = payload_of(tok)
        x, y = tri[k], tri[(k + 1) % 3]
        lo, hi = norm_edge(x, y)
        return i if v == lo else j

    def check(self, tri, vtoks, etoks, strict):
        ps = self.ps
        for k in range(3):
            a = tri[k]
            first, second = corner_pair(ps, tri, k, cw=True)
            k_first = [m for m in range(3) if {tri[m], tri[(m + 1) % 3]} == {a, first}][0]
            k_second = [m for m in range(3) if {tri[m], tri[(m + 1) % 3]} == {a, second}][0]
            n1 = self._num_at(etoks, tri, k_first, a)
            n2 = self._num_at(etoks, tri, k_second, a)
            anchor = self.hull.sweep_anchor(a, cw=True)
            if anchor is not None:
                he = self.hull.hull_edges
                if norm_edge(a, first) in he and first != anchor:
                    return False
                if norm_edge(a, second) in he and second != self.hull.sweep_end(a, cw=True):
                    return False
                if norm_edge(a, first) in he and n1 is not None and n1 != 1:
                    return False
                if norm_edge(a, second) in he and n2 is not None and n2 not in self.D[a]:
                    return False
                if n1 is not None and n2 is not None and n2 != n1 + 1:
                    return False
            else:
                if n1 is None or n2 is None:
                    continue
                pa = ps.coords(a)
                d1 = tuple(c - p for c, p in zip(ps.coords(first), pa))
                d2 = tuple(c - p for c, p in zip(ps.coords(second), pa))
                if dir_before(d1, d2, cw=True):
                    if n2 != n1 + 1:
                        return False
                else:
                    if n2 != 1 or n1 not in self.D[a]:
                        return False
        return True


def build_degree_annotation(ps: PointSet, degree_sets) -> AnnotationSystem:
    return DegreeSystem(ps, degree_sets)


class ColoredDegreeSystem(AnnotationSystem):
    """Running count of `color` edges counterclockwise from straight up.

    The count on an edge includes the edge itself; wrap-around wedges certify
    the total colored degree against the per-vertex degree set.
    """

    def __init__(self, ps: PointSet, color: str, degree_sets, ecolors):
        if color not in ecolors:
            raise ValueError("counted color must be in the palette")
        super().__init__(ps, (), ecolors)
        self.color = color
        self.D = {v: frozenset(degree_sets[v]) for v in ps.ids}
        self.hull = _HullInfo(ps)
        self.maxcnt = {v: max(self.D[v]) if self.D[v] else 0 for v in ps.ids}
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * (len(ecolors) ** 3) * n**6

    def _edge_candidates(self, e):
        x, y = e
        out = []
        for col in self.ecolors:
            sx = 1 if col == self.color else 0
            for i in range(sx, self.maxcnt[x] + 1):
                for j in range(sx, self.maxcnt[y] + 1):
                    out.append((col, (i, j)))
        return out

    def _cnt_at(self, etoks, tri, k, v):
        tok = etoks[k]
        if tok is None:
            return None, None
        i, j = payload_of(tok)
        x, y = tri[k], tri[(k + 1) % 3]
        lo, hi = norm_edge(x, y)
        return (i if v == lo else j), (1 if color_of(tok) == self.color else 0)

    def check(self, tri, vtoks, etoks, strict):
        if not super().check(tri, vtoks, etoks, strict):
            return False
        ps = self.ps
        for k in range(3):
            a = tri[k]
            first, second = corner_pair(ps, tri, k, cw=False)
            k_first = [m for m in range(3) if {tri[m], tri[(m + 1) % 3]} == {a, first}][0]
            k_second = [m for m in range(3) if {tri[m], tri[(m + 1) % 3]} == {a, second}][0]
            c1, col1 = self._cnt_at(etoks, tri, k_first, a)
            c2, col2 = self._cnt_at(etoks, tri, k_second, a)
            anchor = self.hull.sweep_anchor(a, cw=False)
            if anchor is not None:
                he = self.hull.hull_edges
                if norm_edge(a, first) in he and first != anchor:
                    return False
                if norm_edge(a, second) in he and second != self.hull.sweep_end(a, cw=False):
                    return False
                if norm_edge(a, first) in he and c1 is not None and c1 != col1:
                    return False
                if norm_edge(a, second) in he and c2 is not None and c2 not in self.D[a]:
                    return False
                if c1 is not None and c2 is not None and c2 != c1 + col2:
                    return False
            else:
                if c1 is None or c2 is None:
                    continue
                pa = ps.coords(a)
                d1 = tuple(c - p for c, p in zip(ps.coords(first), pa))
                d2 = tuple(c - p for c, p in zip(ps.coords(second), pa))
                if dir_before(d1, d2, cw=False):
                    if c2 != c1 + col2:
                        return False
                else:
                    if c2 != col2 or c1 not in self.D[a]:
                        return False
        return True


def build_colored_degree_annotation(ps: PointSet, color: str, degree_sets, ecolors=None) -> AnnotationSystem:
    if ecolors is None:
        ecolors = (color, PURPLE)
    return ColoredDegreeSystem(ps, color, degree_sets, ecolors)


class SpanningTreeSystem(AnnotationSystem):
    """Vertex tokens carry (depth, parent); tree edges are exactly parent links."""

    def __init__(self, ps: PointSet, tree_color="red", ecolors=("red", PURPLE)):
        super().__init__(ps, (), ecolors)
        self.tree_color = tree_color
        self.root = min(ps.ids, key=ps.label)
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * n**6

    def _vertex_candidates(self, v):
        if v == self.root:
            return [("", ("t", 0, None))]
        n = len(self.ps)
        return [("", ("t", d, p)) for d in range(1, n) for p in self.ps.ids if p != v]

    def check(self, tri, vtoks, etoks, strict):
        if not super().check(tri, vtoks, etoks, strict):
            return False
        known = [t is not None for t in vtoks]
        dep = [None if t is None else payload_of(t)[1] for t in vtoks]
        par = [None if t is None else payload_of(t)[2] for t in vtoks]
        for k in range(3):
            x, y, z = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
            ky = (k + 1) % 3
            tok = etoks[k]
            for ka, kb, b in ((k, ky, y), (ky, k, x)):
                if known[ka] and par[ka] == b:
                    # the parent link must be a tree edge with the right depth step
                    if tok is not None and color_of(tok) != self.tree_color:
                        return False
                    if known[kb] and dep[kb] != dep[ka] - 1:
                        return False
            if (
                tok is not None
                and color_of(tok) == self.tree_color
                and known[k]
                and known[ky]
                and par[k] != y
                and par[ky] != x
            ):
                return False
            if par[k] is not None and par[k] not in tri and wedge_blocks(self.ps, x, y, z, par[k]):
                return False
        return True


def build_spanning_tree_annotation(ps: PointSet, ecolors=("red", PURPLE)) -> AnnotationSystem:
    return SpanningTreeSystem(ps, "red", ecolors)


class ConnectednessSystem(AnnotationSystem):
    """The colored subgraph is connected: BFS depths plus canonical parents.

    With spanning=True the root is statically the lowest-labelled vertex and
    every vertex must join the colored graph.  With spanning=False every token
    carries the claimed root id (so the claim propagates across triangles) and
    vertices untouched by the color may declare themselves isolated.
    """

    def __init__(self, ps: PointSet, color: str, ecolors, spanning: bool):
        super().__init__(ps, (), ecolors)
        self.color = color
        self.spanning = spanning
        self.root = min(ps.ids, key=ps.label) if spanning else None
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * n ** (6 if spanning else 9)

    def _vertex_candidates(self, v):
        n = len(self.ps)
        out = []
        if self.spanning:
            if v == self.root:
                return [("", (self.root, 0, None, None))]
            return [("", (self.root, d, p, None)) for d in range(1, n) for p in self.ps.ids if p != v]
        static_min = min(self.ps.ids, key=self.ps.label)
        for r in self.ps.ids:
            if v == r:
                # a root with colored edges names its smallest-labelled colored
                # neighbor; an edgeless root is only the statically smallest vertex
                out.extend(("", (r, 0, None, w)) for w in self.ps.ids if w != r)
                if r == static_min:
                    out.append(("", (r, 0, None, None)))
            elif self.ps.label(v) > self.ps.label(r):
                out.append(("", (r, "iso", None, None)))
                out.extend(("", (r, d, p, None)) for d in range(1, n) for p in self.ps.ids if p != v)
            else:
                out.append(("", (r, "iso", None, None)))
        return out

    def check(self, tri, vtoks, etoks, strict):
        if not super().check(tri, vtoks, etoks, strict):
            return False
        roots = [None if t is None else payload_of(t)[0] for t in vtoks]
        known_roots = {r for r in roots if r is not None}
        if len(known_roots) > 1:
            return False
        known = [t is not None for t in vtoks]
        dep = [None if t is None else payload_of(t)[1] for t in vtoks]
        par = [None if t is None else payload_of(t)[2] for t in vtoks]
        wit = [None if t is None else payload_of(t)[3] for t in vtoks]
        for k in range(3):
            x, y, z = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
            ky = (k + 1) % 3
            tok = etoks[k]
            colored = tok is not None and color_of(tok) == self.color
            if colored and (dep[k] == "iso" or dep[ky] == "iso"):
                return False
            if colored and known[k] and known[ky] and dep[k] != "iso" and dep[ky] != "iso":
                if abs(dep[k] - dep[ky]) > 1:
                    return False
            for ka, kb, b in ((k, ky, y), (ky, k, x)):
                if not known[ka]:
                    continue
                if par[ka] == b:
                    if known[kb] and dep[kb] != dep[ka] - 1:
                        return False
                    if tok is not None and not colored:
                        return False
                if (
                    colored
                    and par[ka] is not None
                    and par[ka] != b
                    and known[kb]
                    and dep[kb] != "iso"
                    and dep[ka] != "iso"
                    and dep[kb] == dep[ka] - 1
                    and self.ps.label(b) < self.ps.label(par[ka])
                ):
                    return False
            if (
                par[k] is not None
                and par[k] not in tri
                and wedge_blocks(self.ps, x, y, z, par[k])
            ):
                return False
            # root obligations: an edgeless root tolerates no colored edge, a
            # witnessed root behaves like a vertex whose parent is the witness
            if not self.spanning:
                for ka, kb, a, b in ((k, ky, x, y), (ky, k, y, x)):
                    if not known[ka] or dep[ka] != 0:
                        continue
                    if wit[ka] is None:
                        if colored:
                            return False
                    else:
                        if wit[ka] == b:
                            if tok is not None and not colored:
                                return False
                        elif colored and self.ps.label(b) < self.ps.label(wit[ka]):
                            return False
                        if wit[ka] not in tri and wedge_blocks(self.ps, a, *(v for v in tri if v != a), wit[ka]):
                            return False
        return True


def build_connectedness_annotation(ps: PointSet, color: str, ecolors=None, spanning: bool = True) -> AnnotationSystem:
    if ecolors is None:
        ecolors = (color, PURPLE)
    return ConnectednessSystem(ps, color, ecolors, spanning)


class ThreeColorSystem(AnnotationSystem):
    """Rainbow triangles with the two anchor-edge endpoints pinned to fixed colors."""

    COLORS = ("R", "Y", "B")

    def __init__(self, ps: PointSet, anchor_edge: Tuple[int, int]):
        super().__init__(ps)
        e = norm_edge(*anchor_edge)
        if e not in ps.hull_edge_set():
            raise ValueError("anchor must be a hull edge")
        self.anchor = e
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * 720

    def _vertex_candidates(self, v):
        if v == self.anchor[0]:
            return [("", "R")]
        if v == self.anchor[1]:
            return [("", "Y")]
        return [("", c) for c in self.COLORS]

    def check(self, tri, vtoks, etoks, strict):
        cols = [None if t is None else payload_of(t) for t in vtoks]
        for k in range(3):
            if cols[k] is None:
                continue
            if cols[k] not in self.COLORS:
                return False
            if tri[k] == self.anchor[0] and cols[k] != "R":
                return False
            if tri[k] == self.anchor[1] and cols[k] != "Y":
                return False
            if cols[(k + 1) % 3] is not None and cols[k] == cols[(k + 1) % 3]:
                return False
        for t in etoks:
            if t is not None and t != EMPTY:
                return False
        return True


def build_3color_annotation(ps: PointSet, anchor_edge=None) -> AnnotationSystem:
    if anchor_edge is None:
        anchor_edge = min(tuple(sorted(e)) for e in ps.hull_edge_set())
    return ThreeColorSystem(ps, anchor_edge)


class IndependentSetSystem(AnnotationSystem):
    """No counted edge may join two vertices of the distinguished color."""

    def __init__(self, ps: PointSet, vcolors=("orange", "green"), ecolors=(), marked="orange"):
        super().__init__(ps, vcolors, ecolors)
        self.marked = marked
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * len(vcolors) ** 3

    def check(self, tri, vtoks, etoks, strict):
        if not super().check(tri, vtoks, etoks, strict):
            return False
        for k in range(3):
            cx = None if vtoks[k] is None else color_of(vtoks[k])
            cy = None if vtoks[(k + 1) % 3] is None else color_of(vtoks[(k + 1) % 3])
            tok = etoks[k]
            counted = (not self.ecolors) or (tok is not None and color_of(tok) != PURPLE)
            if self.ecolors and tok is None:
                counted = False
            if counted and cx == self.marked and cy == self.marked:
                return False
        return True


def build_independent_set_annotation(ps: PointSet, vcolors=("orange", "green"), ecolors=()) -> AnnotationSystem:
    return IndependentSetSystem(ps, vcolors, ecolors)


class DominatingSetSystem(AnnotationSystem):
    """Non-brown vertices name their smallest-labelled brown neighbor."""

    def __init__(self, ps: PointSet, vcolors=("brown", "white"), ecolors=(), marked="brown"):
        super().__init__(ps, vcolors, ecolors)
        self.marked = marked
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * n**3

    def _vertex_candidates(self, v):
        out = [(self.marked, "")]
        others = [c for c in self.vcolors if c != self.marked]
        for c in others:
            for w in self.ps.ids:
                if w != v:
                    out.append((c, ("d", w)))
        return out

    def check(self, tri, vtoks, etoks, strict):
        for t in vtoks:
            if t is not None and color_of(t) not in self.vcolors:
                return False
        for k in range(3):
            t = vtoks[k]
            if t is None or color_of(t) == self.marked:
                continue
            x, y, z = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
            w = payload_of(t)[1]
            if w not in tri and wedge_blocks(self.ps, x, y, z, w):
                return False
            for other_k, other in ((self._k(tri, y), y), (self._k(tri, z), z)):
                tok_o = vtoks[other_k]
                if tok_o is None:
                    continue
                counted = self._edge_counted(tri, etoks, x, other)
                if counted is None:
                    continue
                if other == w:
                    if not (counted and color_of(tok_o) == self.marked):
                        return False
                elif (
                    counted
                    and color_of(tok_o) == self.marked
                    and self.ps.label(other) < self.ps.label(w)
                ):
                    return False
        return True

    @staticmethod
    def _k(tri, v):
        return tri.index(v)

    def _edge_counted(self, tri, etoks, x, y):
        for m in range(3):
            if {tri[m], tri[(m + 1) % 3]} == {x, y}:
                tok = etoks[m]
                if not self.ecolors:
                    return True
                if tok is None:
                    return None
                return color_of(tok) != PURPLE
        return None


def build_dominating_set_annotation(ps: PointSet, vcolors=("brown", "white"), ecolors=()) -> AnnotationSystem:
    return DominatingSetSystem(ps, vcolors, ecolors)


class FaceDegreeSystem(AnnotationSystem):
    """Every bounded face of the structure is a d-gon; the hull belongs to it.

    Face claims carry the face's anchor (its lowest-labelled vertex) so the
    per-face numbering is globally unambiguous: position 1 must literally be
    the anchor vertex.  Spanning comes for free because a vertex strictly
    inside a face admits no position token.
    """

    def __init__(self, ps: PointSet, d: int, struct_color="brown", ecolors=("brown", PURPLE)):
        if d < 3:
            raise ValueError("face degree must be at least 3")
        super().__init__(ps, (), ecolors)
        self.d = d
        self.struct_color = struct_color
        self.hull_edges = ps.hull_edge_set()
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * n ** (3 + 9)

    def _anchor_ok(self, a, x, y):
        la = self.ps.label(a)
        return la <= min(self.ps.label(x), self.ps.label(y)) and (la < min(self.ps.label(x), self.ps.label(y)) or a in (x, y))

    def _edge_candidates(self, e):
        x, y = e
        d = self.d
        out = []
        anchors = [a for a in self.ps.ids if self._anchor_ok(a, x, y)]
        if e in self.hull_edges:
            # hull edges are forced into the structure; only the inner side claims
            for a in anchors:
                for i in range(1, d + 1):
                    out.append((self.struct_color, ("b1", a, i)))
            return out
        for col in self.ecolors:
            if col == self.struct_color:
                for a1 in anchors:
                    for i1 in range(1, d + 1):
                        for a2 in anchors:
                            for i2 in range(1, d + 1):
                                out.append((col, ("b2", a1, i1, a2, i2)))
            else:
                for a in anchors:
                    for i in range(1, d + 1):
                        for j in range(1, d + 1):
                            if i != j:
                                out.append((col, ("p", a, i, j)))
        return out

    def _claim(self, tri, etoks, k):
        """(anchor, pos_of_x, pos_of_y) claim of edge k for the face on this triangle's side."""
        tok = etoks[k]
        if tok is None:
            return None
        x, y = tri[k], tri[(k + 1) % 3]
        z = tri[(k + 2) % 3]
        col, pl = tok
        d = self.d
        if pl[0] == "p":
            _, a, i, j = pl
            lo, hi = norm_edge(x, y)
            px = i if x == lo else j
            py = i if y == lo else j
            return (a, px, py)
        # structure edge: the side claim facing z; the face's CCW walk has the
        # interior on its left, so the tail of the traversal is determined
        left_of_xy = self.ps.orient(x, y, z) > 0
        if pl[0] == "b1":
            _, a, i = pl
            if left_of_xy != self._inner_left(x, y):
                return False
        else:
            _, a1, i1, a2, i2 = pl
            lo, hi = norm_edge(x, y)
            # slot 1 is the claim for the side to the left of lo->hi
            left_of_lohi = self.ps.orient(lo, hi, z) > 0
            a, i = (a1, i1) if left_of_lohi else (a2, i2)
        # traversal direction with the face interior on the left: tail gets i
        if left_of_xy:
            return (a, i, i % d + 1)
        return (a, i % d + 1, i)

    def _inner_left(self, x, y):
        # for a hull edge: is the hull interior to the left of x->y?
        for z in self.ps.ids:
            if z not in (x, y):
                return self.ps.orient(x, y, z) > 0
        raise AssertionError

    def check(self, tri, vtoks, etoks, strict):
        if not super().check(tri, vtoks, etoks, strict):
            return False
        for k in range(3):
            tok = etoks[k]
            if tok is None:
                continue
            e = norm_edge(tri[k], tri[(k + 1) % 3])
            if e in self.hull_edges and color_of(tok) != self.struct_color:
                return False
        claims = []
        pos = {}
        anchor = None
        for k in range(3):
            cl = self._claim(tri, etoks, k)
            if cl is False:
                return False
            claims.append(cl)
            if cl is None:
                continue
            a, px, py = cl
            if anchor is None:
                anchor = a
            elif anchor != a:
                return False
            x, y = tri[k], tri[(k + 1) % 3]
            for v, p in ((x, px), (y, py)):
                if pos.setdefault(v, p) != p:
                    return False
        for v, p in pos.items():
            if p == 1 and anchor is not None and v != anchor:
                return False
            if p != 1 and anchor is not None and self.ps.label(v) <= self.ps.label(anchor):
                return False
        if len(pos) == 3 and None not in claims:
            order = sorted(range(3), key=lambda k: pos[tri[k]])
            a, b, c = (tri[k] for k in order)
            if self.ps.orient(a, b, c) < 0:
                return False
        return True


def build_face_degree_annotation(ps: PointSet, d: int, ecolors=("brown", PURPLE)) -> AnnotationSystem:
    return FaceDegreeSystem(ps, d, "brown", ecolors)


class CountVerticesSystem(AnnotationSystem):
    """Exactly k vertices carry the counted color.

    A canonical spanning tree of the whole triangulation is annotated as in
    the connectedness system; every vertex also carries the number of counted
    vertices in its subtree, and running sums around each vertex (edge
    payloads, counterclockwise from straight up) keep the subtree counts
    honest.  The root's count is pinned to k.
    """

    def __init__(self, ps: PointSet, k: int, vcolors=("green", "white"), counted="green"):
        if k > len(ps):
            raise ValueError("k exceeds the number of points")
        super().__init__(ps, vcolors, ())
        self.k = k
        self.counted = counted
        self.root = min(ps.ids, key=ps.label)
        self.hull = _HullInfo(ps)
        n = len(ps)
        self.size_bound = (n * (n - 1) * (n - 2) // 6) * n**9

    def _vertex_candidates(self, v):
        n = len(self.ps)
        out = []
        for c in self.vcolors:
            if v == self.root:
                out.append((c, (0, None, self.k)))
            else:
                out.extend(
                    (c, (d, p, s))
                    for d in range(1, n)
                    for p in self.ps.ids
                    if p != v
                    for s in range(0, self.k + 1)
                )
        return out

    def _edge_candidates(self, e):
        return [("", (i, j)) for i in range(self.k + 1) for j in range(self.k + 1)]

    def check(self, tri, vtoks, etoks, strict):
        ps = self.ps
        dep = [None if t is None else payload_of(t)[0] for t in vtoks]
        par = [None if t is None else payload_of(t)[1] for t in vtoks]
        sub = [None if t is None else payload_of(t)[2] for t in vtoks]
        col = [None if t is None else color_of(t) for t in vtoks]
        for k in range(3):
            x, y, z = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
            ky = (k + 1) % 3
            if dep[k] is not None and dep[ky] is not None:
                if abs(dep[k] - dep[ky]) > 1:
                    return False
                for ka, kb, b in ((k, ky, y), (ky, k, x)):
                    if par[ka] == b and dep[kb] != dep[ka] - 1:
                        return False
                    if (
                        par[ka] is not None
                        and par[ka] != b
                        and dep[kb] == dep[ka] - 1
                        and ps.label(b) < ps.label(par[ka])
                    ):
                        return False
            if par[k] is not None and par[k] not in tri and wedge_blocks(ps, x, y, z, par[k]):
                return False
        # running sums of child subtree counts, counterclockwise from up
        for k in range(3):
            a = tri[k]
            first, second = corner_pair(ps, tri, k, cw=False)
            kf = [m for m in range(3) if {tri[m], tri[(m + 1) % 3]} == {a, first}][0]
            ks = [m for m in range(3) if {tri[m], tri[(m + 1) % 3]} == {a, second}][0]
            s1 = self._sum_at(etoks, tri, kf, a)
            s2 = self._sum_at(etoks, tri, ks, a)
            c1 = self._contrib(tri, vtoks, a, first)
            c2 = self._contrib(tri, vtoks, a, second)
            ka = k
            own = None
            if sub[ka] is not None and col[ka] is not None:
                own = sub[ka] - (1 if col[ka] == self.counted else 0)
                if own < 0:
                    return False
            anchor = self.hull.sweep_anchor(a, cw=False)
            if anchor is not None:
                if norm_edge(a, first) in self.hull.hull_edges and first != anchor:
                    return False
                if (
                    norm_edge(a, second) in self.hull.hull_edges
                    and second != self.hull.sweep_end(a, cw=False)
                ):
                    return False
                if norm_edge(a, first) in self.hull.hull_edges and s1 is not None and c1 is not None and s1 != c1:
                    return False
                if (
                    norm_edge(a, second) in self.hull.hull_edges
                    and s2 is not None
                    and own is not None
                    and s2 != own
                ):
                    return False
                if s1 is not None and s2 is not None and c2 is not None and s2 != s1 + c2:
                    return False
            else:
                pa = ps.coords(a)
                d1 = tuple(c - p for c, p in zip(ps.coords(first), pa))
                d2 = tuple(c - p for c, p in zip(ps.coords(second), pa))
                if dir_before(d1, d2, cw=False):
                    if s1 is not None and s2 is not None and c2 is not None and s2 != s1 + c2:
                        return False
                else:
                    if s2 is not None and c2 is not None and s2 != c2:
                        return False
                    if s1 is not None and own is not None and s1 != own:
                        return False
        return True

    def _sum_at(self, etoks, tri, k, v):
        tok = etoks[k]
        if tok is None:
            return None
        i, j = payload_of(tok)
        lo, hi = norm_edge(tri[k], tri[(k + 1) % 3])
        return i if v == lo else j

    def _contrib(self, tri, vtoks, a, child):
        kc = tri.index(child)
        t = vtoks[kc]
        if t is None:
            return None
        d, p, s = payload_of(t)
        return s if p == a else 0


def build_count_vertices_annotation(ps: PointSet, k: int, vcolors=("green", "white")) -> AnnotationSystem:
    return CountVerticesSystem(ps, k, vcolors)


# ---------------------------------------------------------------------------
# solver-side machinery


class SystemOps:
    """Candidate access plus cached triangle completion for one system.

    The solvers guess tokens only through this object, so the completion
    cache is shared across all subproblems of a run.
    """

    def __init__(self, ps: PointSet, system: AnnotationSystem):
        self.ps = ps
        self.system = system
        self._complete: Dict = {}

    def vertex_candidates(self, v: int):
        return self.system.vertex_candidates(v)

    def edge_candidates(self, e):
        return self.system.edge_candidates(norm_edge(*e))

    def complete_triangle(self, tri, fixed: Dict):
        """All full token assignments of the triangle extending `fixed`.

        Keys are elements ('v', id) / ('e', edge); the result dicts contain
        only the newly assigned elements.
        """
        key = (tuple(tri), tuple(sorted(fixed.items())))
        got = self._complete.get(key)
        if got is None:
            got = tuple(self._complete_iter(tuple(tri), fixed))
            self._complete[key] = got
        return got

    def _complete_iter(self, tri, fixed):
        sys = self.system
        vslots = [("v", tri[k]) for k in range(3)]
        eslots = [("e", norm_edge(tri[k], tri[(k + 1) % 3])) for k in range(3)]

        assign = dict(fixed)

        def toks():
            vt = [assign.get(s) for s in vslots]
            et = [assign.get(s) for s in eslots]
            return vt, et

        free = [s for s in eslots + vslots if s not in fixed]
        vt, et = toks()
        if not sys.check(tri, vt, et, strict=not free):
            return
        out = []

        def rec(k):
            if k == len(free):
                out.append({s: assign[s] for s in free})
                return
            s = free[k]
            cands = sys.vertex_candidates(s[1]) if s[0] == "v" else sys.edge_candidates(s[1])
            for tok in cands:
                assign[s] = tok
                vt, et = toks()
                if sys.check(tri, vt, et, strict=(k + 1 == len(free))):
                    rec(k + 1)
                del assign[s]

        rec(0)
        yield from out
