"""The layer-separator dynamic program over ring subproblems, and the solver.

Peeling guesses the outermost small cactus layer of a triangulation, splits
the ring there, and constrains the peeled-off outer part so that no earlier
layer could have been small; thin rings are handed to the nibbling DP.  The
Solver owns both memo tables and the shared annotation machinery, and the
module ends with the user-facing counting entry points (full plane via the
bounding-triangle trick, and thin-plane counts).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .annotations import EMPTY, AnnotationSystem, SystemOps
from .cdt import constrained_delaunay
from .geometry import PointSet, bounding_triangle, interior_point_scaled, point_in_polygon_scaled
from .nibbling import (
    Constraints,
    Edge,
    Element,
    Nibbled,
    Terminal,
    add_constraints,
    combine_profiles,
    constraint_total,
    constraints_from_dict,
    enumerate_compatible_constraints,
    enumerate_separator_structures,
    path_constraint_vector,
    split_by_path,
)
from .plane_graph import EmbeddedGraph, is_cactus, norm_edge


class Ring:
    """A ring subproblem: triangulate between an outer cactus of polygons and
    an inner cactus, with layer indices and optional exact per-layer sizes."""

    __slots__ = (
        "ps", "polys", "qin_vertices", "qin_edges", "out_index", "in_index",
        "free", "ann", "constraints", "_key", "_skey",
    )

    def __init__(self, ps, polys, qin_vertices, qin_edges, out_index, in_index,
                 free, ann, constraints=None):
        self.ps = ps
        self.polys = tuple(tuple(p) for p in polys)
        self.qin_vertices = frozenset(qin_vertices)
        self.qin_edges = frozenset(norm_edge(*e) for e in qin_edges)
        self.out_index = out_index
        self.in_index = in_index
        self.free = frozenset(free)
        self.ann = dict(ann)
        self.constraints = constraints
        self._key = None
        self._skey = None
        for el in self.elements():
            assert el in self.ann, f"missing annotation on {el}"

    @property
    def simple(self) -> bool:
        return len(self.polys) == 1

    def width(self) -> int:
        return self.in_index - self.out_index + 1

    def poly_edges(self) -> Set[Edge]:
        out = set()
        for p in self.polys:
            for i in range(len(p)):
                out.add(norm_edge(p[i], p[(i + 1) % len(p)]))
        return out

    def all_edges(self) -> Set[Edge]:
        return self.poly_edges() | set(self.qin_edges)

    def elements(self) -> List[Element]:
        vs = {v for p in self.polys for v in p} | set(self.qin_vertices)
        out: List[Element] = [("v", v) for v in sorted(vs)]
        out += [("e", e) for e in sorted(self.all_edges())]
        return out

    def boundary_vertices(self) -> Set[int]:
        return {v for p in self.polys for v in p} | set(self.qin_vertices)

    def vertex_count(self) -> int:
        return len(self.boundary_vertices() | self.free)

    def structural_key(self):
        if self._skey is None:
            self._skey = (
                self.polys,
                tuple(sorted(self.qin_vertices)),
                tuple(sorted(self.qin_edges)),
                self.out_index,
                self.in_index,
            )
        return self._skey

    def canonical_key(self):
        if self._key is None:
            self._key = (
                self.structural_key(),
                tuple(sorted(self.ann.items())),
                self.constraints,
            )
        return self._key


def qin_components(ps: PointSet, qin_vertices, qin_edges) -> List[Set[int]]:
    adj: Dict[int, Set[int]] = {v: set() for v in qin_vertices}
    for a, b in qin_edges:
        adj[a].add(b)
        adj[b].add(a)
    comps, seen = [], set()
    for v in sorted(qin_vertices):
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def ring_to_nibbled(ring: Ring) -> Nibbled:
    """Cut the outer polygon at its lexicographically smallest edge."""
    assert ring.simple, "only simple ring subproblems can be nibbled"
    poly = ring.polys[0]
    n = len(poly)
    best_i = min(range(n), key=lambda i: norm_edge(poly[i], poly[(i + 1) % n]))
    baseA, baseB = poly[best_i], poly[(best_i + 1) % n]
    qout = tuple(poly[(best_i + 1 + k) % n] for k in range(n))
    return Nibbled(
        ring.ps,
        (baseA, baseB),
        (baseB,),
        (baseB,),
        qout,
        (baseA,),
        (baseA,),
        ring.qin_vertices,
        ring.qin_edges,
        ring.out_index,
        ring.in_index,
        ring.free,
        ring.ann,
        ring.constraints,
    )


def first_small_layer(ps: PointSet, layer_sizes: Dict[int, int], out_index: int, m: int, bound: int) -> int:
    """Smallest peripheral index whose layer has at most `bound` vertices."""
    for i in range(out_index + 1, out_index + m + 1):
        if layer_sizes.get(i, 0) <= bound:
            return i
    raise AssertionError("pigeonhole violated: no small peripheral layer")


@dataclass
class Stats:
    subproblems: int = 0
    memo_hits: int = 0


class Solver:
    """Shared state for one counting run: memo tables, annotation machinery, m."""

    def __init__(self, ps: PointSet, system: AnnotationSystem, m: Optional[int] = None,
                 memo: bool = True, threads: int = 1, free_hint: Optional[int] = None):
        self.ps = ps
        self.system = system
        self.ops = SystemOps(ps, system)
        nfree = free_hint if free_hint is not None else len(ps)
        self.m = m if m is not None else max(1, math.isqrt(max(1, nfree)))
        self.memo_enabled = memo
        self.threads = threads
        self.stats = Stats()
        self._nibble_memo: Dict = {}
        self._peel_memo: Dict = {}
        self._struct_sep: Dict = {}
        self._struct_cacti: Dict = {}
        self._split_cache: Dict = {}

    # -- nibbling -------------------------------------------------------------

    def separator_structures(self, sp: Nibbled):
        key = sp.structural_key()
        got = self._struct_sep.get(key)
        if got is None:
            got = enumerate_separator_structures(sp)
            self._struct_sep[key] = got
        return got

    def _child_profiles(self, child) -> Dict:
        if isinstance(child, Terminal):
            return {child.profile: 1}
        return self.nibble_profiles(child)

    def nibble_profiles(self, sp: Nibbled) -> Dict:
        """Counts of valid triangulations keyed by their exact layer profile.

        Constraints on the subproblem are ignored here; a constrained count is
        a single lookup into this map.  This is the memoised core of the
        nibbling DP: the sum over compatible constraint splits collapses into
        a profile convolution.
        """
        if sp.zero_by_indices():
            return {}
        key = (sp.structural_key(), sp.ann_key())
        if self.memo_enabled:
            got = self._nibble_memo.get(key)
            if got is not None:
                self.stats.memo_hits += 1
                return got
        self.stats.subproblems += 1
        total: Dict = {}
        skey, akey = key
        for w1, path in self.separator_structures(sp):
            for new_ann in self._annotation_products(sp, w1, path):
                ckey = (skey, akey, w1, path, tuple(sorted(new_ann.items())))
                cached = self._split_cache.get(ckey)
                if cached is None:
                    ann = dict(sp.ann)
                    ann.update(new_ann)
                    cached = split_by_path(sp, w1, path, ann)
                    self._split_cache[ckey] = cached
                right, left, shared = cached
                pr = self._child_profiles(right)
                if not pr:
                    continue
                pl = self._child_profiles(left)
                for q1, n1 in pr.items():
                    for q2, n2 in pl.items():
                        q = combine_profiles(q1, q2, shared)
                        if q is not None:
                            total[q] = total.get(q, 0) + n1 * n2
        if self.memo_enabled:
            self._nibble_memo[key] = total
        return total

    def nibble_count(self, sp: Nibbled) -> int:
        """t(SP): the constrained count is the profile-map entry of its vector."""
        if sp.zero_by_indices():
            return 0
        profiles = self.nibble_profiles(sp)
        if sp.constraints is None:
            return sum(profiles.values())
        return profiles.get(sp.constraints, 0)

    def _annotation_products(self, sp: Nibbled, w1: int, path: Tuple[int, ...]):
        """All token assignments for the new elements of one separator path."""
        bA, bB = sp.base
        tri = (bA, bB, w1)
        existing = sp.all_edges()
        fixed: Dict[Element, object] = {}
        for el in (("v", bA), ("v", bB), ("v", w1),
                   ("e", norm_edge(bA, bB)), ("e", norm_edge(bA, w1)), ("e", norm_edge(bB, w1))):
            if el in sp.ann:
                fixed[el] = sp.ann[el]
        new_path_elems: List[Element] = []
        for v in path[1:]:
            if ("v", v) not in sp.ann:
                new_path_elems.append(("v", v))
        for i in range(len(path) - 1):
            e = norm_edge(path[i], path[i + 1])
            if e not in existing:
                new_path_elems.append(("e", e))

        for delta_tokens in self.ops.complete_triangle(tri, fixed):
            def rec(k: int, acc: Dict[Element, object]):
                if k == len(new_path_elems):
                    yield dict(acc)
                    return
                el = new_path_elems[k]
                cands = (
                    self.ops.vertex_candidates(el[1])
                    if el[0] == "v"
                    else self.ops.edge_candidates(el[1])
                )
                for tok in cands:
                    acc[el] = tok
                    yield from rec(k + 1, acc)
                    del acc[el]

            base_acc = dict(delta_tokens)
            yield from rec(0, base_acc)

    # -- peeling ----------------------------------------------------------------

    def peel_count(self, ring: Ring) -> int:
        if not ring.polys:
            assert not ring.qin_vertices and not ring.free
            return 1 if ring.constraints in (None, ()) else 0
        key = ring.canonical_key()
        if self.memo_enabled:
            got = self._peel_memo.get(key)
            if got is not None:
                self.stats.memo_hits += 1
                return got
        self.stats.subproblems += 1
        w = ring.width()
        if ring.simple and ring.constraints is None and w >= self.m + 2:
            total = self._split_by_layers(ring)
        elif not ring.simple and ring.constraints is None:
            total = self._split_by_components(ring)
        elif ring.simple and w <= self.m + 1:
            total = self.nibble_count(ring_to_nibbled(ring))
        else:
            raise AssertionError("unreachable ring subproblem shape")
        if self.memo_enabled:
            self._peel_memo[key] = total
        return total

    def cactus_structures(self, ring: Ring, bound: int):
        """Cacti on at most `bound` free points, non-crossing with the ring,
        each paired with its separation data (bounded faces, enclosed test)."""
        key = (ring.structural_key(), tuple(sorted(ring.free)), bound)
        got = self._struct_cacti.get(key)
        if got is not None:
            return got
        ps = self.ps
        ring_edges = ring.all_edges()
        free = sorted(ring.free)
        results = []
        comps = qin_components(ps, ring.qin_vertices, ring.qin_edges)
        reps = [min(c) for c in comps]

        def separation_ok(faces):
            for r in reps:
                x, y = ps.coords(r)
                if not any(
                    point_in_polygon_scaled(x, y, 1, [ps.coords(v) for v in f]) for f in faces
                ):
                    return False
            return True

        for l in range(0, bound + 1):
            for vsub in itertools.combinations(free, l):
                vset = set(vsub)
                cand = []
                for i in range(l):
                    for j in range(i + 1, l):
                        e = (vsub[i], vsub[j])
                        if not any(ps.segments_properly_cross(*e, *o) for o in ring_edges):
                            cand.append(e)
                cross = [
                    [ps.segments_properly_cross(*cand[i], *cand[j]) for j in range(len(cand))]
                    for i in range(len(cand))
                ]
                maxe = max(0, 2 * l - 3)

                def subsets(k: int, chosen: List[int]):
                    if len(chosen) <= maxe:
                        yield [cand[i] for i in chosen]
                    if k == len(cand) or len(chosen) >= maxe:
                        return
                    for nk in range(k, len(cand)):
                        if all(not cross[nk][c] for c in chosen):
                            yield from subsets(nk + 1, chosen + [nk])

                for esub in subsets(0, []):
                    if not is_cactus(vsub, esub, ps):
                        continue
                    if esub:
                        g = EmbeddedGraph(vsub, esub, ps)
                        faces = [tuple(f) for f in g.bounded_face_polygons()]
                    else:
                        faces = []
                    if not separation_ok(faces):
                        continue
                    results.append((vsub, tuple(norm_edge(*e) for e in esub), faces))
        self._struct_cacti[key] = results
        return results

    def outer_constraints(self, ring: Ring, l_size: int, ind: int, bound: int, avail: int):
        """Constraint vectors for the peeled-off outer problem.

        Every middle layer must be strictly larger than the separator bound,
        which is what makes the guessed layer the outermost small one.
        """
        base = {ring.out_index: sum(len(p) for p in ring.polys)}
        if l_size:
            base[ind] = l_size
        middles = list(range(ring.out_index + 1, ind))
        lo = bound + 1

        def rec(k: int, used: int, acc: Dict[int, int]):
            if k == len(middles):
                yield constraints_from_dict({**base, **acc})
                return
            j = middles[k]
            for v in range(lo, avail - used + 1):
                acc[j] = v
                yield from rec(k + 1, used + v, acc)
                del acc[j]

        if any(True for _ in middles) and lo > avail:
            return
        yield from rec(0, 0, {})

    def _split_by_layers(self, ring: Ring) -> int:
        ps = self.ps
        n_sp = len(ring.free)
        bound = n_sp // self.m
        total = 0
        for vsub, esub, faces in self.cactus_structures(ring, bound):
            if ring.qin_vertices and not faces:
                continue
            face_polys = [[ps.coords(v) for v in f] for f in faces]

            def inside_faces(x, y):
                return any(point_in_polygon_scaled(x, y, 1, fp) for fp in face_polys)

            in_pts = frozenset(
                v for v in ring.free if v not in vsub and inside_faces(*ps.coords(v))
            )
            out_pts = frozenset(v for v in ring.free if v not in vsub and v not in in_pts)
            l_elems: List[Element] = [("v", v) for v in vsub] + [("e", e) for e in esub]
            for ind in range(ring.out_index + 1, ring.out_index + self.m + 1):
                for l_ann in self._element_products(l_elems):
                    sp_in = self._make_inner(ring, vsub, esub, faces, in_pts, ind, l_ann)
                    inner = self.peel_count(sp_in)
                    if inner == 0:
                        continue
                    sp_out_base = self._make_outer(ring, vsub, esub, out_pts, ind, l_ann)
                    sp_out = Ring(ps, ring.polys, vsub, esub, ring.out_index, ind,
                                  out_pts, sp_out_base, None)
                    total += inner * self._outer_sum(sp_out, ring, len(vsub), ind, bound)
        return total

    def _outer_sum(self, sp_out: Ring, ring: Ring, l_size: int, ind: int, bound: int) -> int:
        """Sum of constrained outer counts over all admissible outer constraints.

        Realised layer profiles stand in for explicit constraint vectors: the
        admissible ones pin the outer and separator layers and force every
        middle layer strictly above the separator size bound.
        """
        profiles = self.nibble_profiles(ring_to_nibbled(sp_out))
        out_size = sum(len(p) for p in ring.polys)
        s2 = 0
        for q, cnt in profiles.items():
            qd = dict(q)
            if qd.get(ring.out_index, 0) != out_size:
                continue
            if qd.get(ind, 0) != l_size:
                continue
            if all(qd.get(j, 0) >= bound + 1 for j in range(ring.out_index + 1, ind)):
                s2 += cnt
        return s2

    def _element_products(self, elems: List[Element]):
        def rec(k: int, acc: Dict[Element, object]):
            if k == len(elems):
                yield dict(acc)
                return
            el = elems[k]
            cands = self.ops.vertex_candidates(el[1]) if el[0] == "v" else self.ops.edge_candidates(el[1])
            for tok in cands:
                acc[el] = tok
                yield from rec(k + 1, acc)
                del acc[el]

        yield from rec(0, {})

    def _make_inner(self, ring: Ring, vsub, esub, faces, in_pts, ind, l_ann):
        ann: Dict[Element, object] = {}
        face_vs = {v for f in faces for v in f}
        face_es = {norm_edge(f[i], f[(i + 1) % len(f)]) for f in faces for i in range(len(f))}
        for v in face_vs:
            ann[("v", v)] = l_ann[("v", v)]
        for e in face_es:
            ann[("e", e)] = l_ann[("e", e)]
        for v in ring.qin_vertices:
            ann[("v", v)] = ring.ann[("v", v)]
        for e in ring.qin_edges:
            ann[("e", e)] = ring.ann[("e", e)]
        return Ring(
            self.ps, faces, ring.qin_vertices, ring.qin_edges, ind, ring.in_index,
            in_pts, ann, None,
        )

    def _make_outer(self, ring: Ring, vsub, esub, out_pts, ind, l_ann) -> Dict[Element, object]:
        ann: Dict[Element, object] = {}
        for p in ring.polys:
            for i, v in enumerate(p):
                ann[("v", v)] = ring.ann[("v", v)]
                ann[("e", norm_edge(v, p[(i + 1) % len(p)]))] = ring.ann[("e", norm_edge(v, p[(i + 1) % len(p)]))]
        for v in vsub:
            ann[("v", v)] = l_ann[("v", v)]
        for e in esub:
            ann[("e", e)] = l_ann[("e", e)]
        return ann

    def _split_by_components(self, ring: Ring) -> int:
        ps = self.ps
        comps = qin_components(ps, ring.qin_vertices, ring.qin_edges)
        total = 1
        for poly in ring.polys:
            coords = [ps.coords(v) for v in poly]
            qv: Set[int] = set()
            qe: Set[Edge] = set()
            for comp in comps:
                rep = min(comp)
                x, y = ps.coords(rep)
                if point_in_polygon_scaled(x, y, 1, coords):
                    qv |= comp
                    qe |= {e for e in ring.qin_edges if e[0] in comp}
            pts = frozenset(
                v for v in ring.free if point_in_polygon_scaled(*ps.coords(v), 1, coords)
            )
            ann: Dict[Element, object] = {}
            for i, v in enumerate(poly):
                ann[("v", v)] = ring.ann[("v", v)]
                ann[("e", norm_edge(v, poly[(i + 1) % len(poly)]))] = ring.ann[
                    ("e", norm_edge(v, poly[(i + 1) % len(poly)]))
                ]
            for v in qv:
                ann[("v", v)] = ring.ann[("v", v)]
            for e in qe:
                ann[("e", e)] = ring.ann[("e", e)]
            sub = Ring(ps, (poly,), qv, qe, ring.out_index, ring.in_index, pts, ann, None)
            total *= self.peel_count(sub)
            if total == 0:
                return 0
        return total


# ---------------------------------------------------------------------------
# the triangle trick and the counting entry points


class LiftedSystem(AnnotationSystem):
    """The input system extended over the bounding triangle.

    Triangles touching the three added points are feasible only as triangles
    of the fixed annulus triangulation, with empty tokens on every element
    outside the original hull; the original system rules unchanged inside.
    """

    def __init__(self, inner: AnnotationSystem, ps_plus: PointSet, plus_ids, tstar_tris):
        super().__init__(ps_plus, inner.vcolors, inner.ecolors)
        self.inner = inner
        self.plus_ids = frozenset(plus_ids)
        self.tstar = frozenset(frozenset(t) for t in tstar_tris)
        if inner.size_bound is not None:
            self.size_bound = 2 * inner.size_bound

    def _is_plus_element(self, el: Element) -> bool:
        if el[0] == "v":
            return el[1] in self.plus_ids
        return bool(self.plus_ids.intersection(el[1]))

    def _vertex_candidates(self, v):
        if v in self.plus_ids:
            return [EMPTY]
        return self.inner.vertex_candidates(v)

    def _edge_candidates(self, e):
        if self.plus_ids.intersection(e):
            return [EMPTY]
        return self.inner.edge_candidates(e)

    def check(self, tri, vtoks, etoks, strict):
        touched = [v for v in tri if v in self.plus_ids]
        if not touched:
            return self.inner.check(tri, vtoks, etoks, strict)
        if frozenset(tri) not in self.tstar:
            return False
        for k in range(3):
            if tri[k] in self.plus_ids and vtoks[k] not in (None, EMPTY):
                return False
            e = (tri[k], tri[(k + 1) % 3])
            if self.plus_ids.intersection(e) and etoks[k] not in (None, EMPTY):
                return False
        return True


def _ccw(ps: PointSet, cycle: Sequence[int]) -> Tuple[int, ...]:
    from .geometry import polygon_area2

    if polygon_area2([ps.coords(v) for v in cycle]) < 0:
        return tuple(reversed(cycle))
    return tuple(cycle)


def build_plane_problem(ps: PointSet, system: AnnotationSystem, m=None, memo=True, threads=1):
    """The initial disk problem for counting over the whole point set."""
    tri = bounding_triangle(ps)
    ps_plus = ps.extend(tri)
    plus_ids = [len(ps), len(ps) + 1, len(ps) + 2]
    hull = ps.convex_hull()
    constraints = set(ps.hull_edge_set())
    for i in range(3):
        constraints.add(norm_edge(plus_ids[i], plus_ids[(i + 1) % 3]))
    tstar_all = constrained_delaunay(ps_plus, constraints)
    tstar_tris = [t for t in tstar_all.triangle_faces() if any(v in plus_ids for v in t)]
    lifted = LiftedSystem(system, ps_plus, plus_ids, tstar_tris)
    solver = Solver(ps_plus, lifted, m=m, memo=memo, threads=threads, free_hint=len(ps))
    outer = _ccw(ps_plus, plus_ids)
    ann: Dict[Element, object] = {}
    for i, v in enumerate(outer):
        ann[("v", v)] = EMPTY
        ann[("e", norm_edge(v, outer[(i + 1) % 3]))] = EMPTY
    ring = Ring(ps_plus, (outer,), frozenset(), frozenset(), 0, len(ps) + 1,
                frozenset(ps.ids), ann, None)
    return solver, ring


def count_annotated(ps: PointSet, system: AnnotationSystem, m=None, memo=True, threads=1,
                    stats_out: Optional[Stats] = None) -> int:
    """Number of valid annotated triangulations of the point set."""
    solver, ring = build_plane_problem(ps, system, m=m, memo=memo, threads=threads)
    if threads > 1:
        result = _peel_parallel(solver, ring, threads)
    else:
        result = solver.peel_count(ring)
    if stats_out is not None:
        stats_out.subproblems = solver.stats.subproblems
        stats_out.memo_hits = solver.stats.memo_hits
    return result


def count_triangulations(ps: PointSet, m=None, memo=True, threads=1, stats_out=None) -> int:
    from .annotations import build_trivial_annotation

    return count_annotated(ps, build_trivial_annotation(ps), m=m, memo=memo,
                           threads=threads, stats_out=stats_out)


def count_thin_at_most(ps: PointSet, k: int, m=None, memo=True) -> int:
    """Triangulations with at most k cactus layers."""
    from .annotations import build_trivial_annotation

    if k <= 0:
        return 0
    hull = ps.convex_hull()
    system = build_trivial_annotation(ps)
    solver = Solver(ps, system, m=m, memo=memo, free_hint=len(ps))
    ann: Dict[Element, object] = {}
    for i, v in enumerate(hull):
        ann[("v", v)] = EMPTY
        ann[("e", norm_edge(v, hull[(i + 1) % len(hull)]))] = EMPTY
    interior = frozenset(set(ps.ids) - set(hull))
    ring = Ring(ps, (hull,), frozenset(), frozenset(), 1, k + 1, interior, ann, None)
    return solver.peel_count(ring)


def count_thin(ps: PointSet, k: int, m=None, memo=True) -> int:
    """Triangulations with outerplanar index exactly k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return count_thin_at_most(ps, k, m=m, memo=memo) - count_thin_at_most(ps, k - 1, m=m, memo=memo)


def _peel_parallel(solver: Solver, ring: Ring, threads: int) -> int:
    """Parallel mode: distribute the top-level branches over a thread pool.

    The memo is shared; concurrent recomputation of a subproblem is harmless
    because every computation of a key yields the same value.
    """
    from concurrent.futures import ThreadPoolExecutor

    w = ring.width()
    if not (ring.simple and ring.constraints is None and w >= solver.m + 2):
        return solver.peel_count(ring)
    n_sp = len(ring.free)
    bound = n_sp // solver.m
    structures = solver.cactus_structures(ring, bound)

    # branch over separator structures, reusing the sequential code per branch
    def work(item):
        vsub, esub, faces = item
        total = 0
        ps = solver.ps
        if ring.qin_vertices and not faces:
            return 0
        face_polys = [[ps.coords(v) for v in f] for f in faces]
        in_pts = frozenset(
            v for v in ring.free
            if v not in vsub and any(point_in_polygon_scaled(*ps.coords(v), 1, fp) for fp in face_polys)
        )
        out_pts = frozenset(v for v in ring.free if v not in vsub and v not in in_pts)
        l_elems = [("v", v) for v in vsub] + [("e", e) for e in esub]
        for ind in range(ring.out_index + 1, ring.out_index + solver.m + 1):
            for l_ann in solver._element_products(l_elems):
                sp_in = solver._make_inner(ring, vsub, esub, faces, in_pts, ind, l_ann)
                inner = solver.peel_count(sp_in)
                if inner == 0:
                    continue
                base_ann = solver._make_outer(ring, vsub, esub, out_pts, ind, l_ann)
                s2 = 0
                for c in solver.outer_constraints(ring, len(vsub), ind, bound, len(out_pts)):
                    mid_total = constraint_total(c) - sum(len(p) for p in ring.polys) - len(vsub)
                    if mid_total != len(out_pts):
                        continue
                    s2 += solver.peel_count(
                        Ring(ps, ring.polys, vsub, esub, ring.out_index, ind, out_pts, base_ann, c)
                    )
                total += inner * s2
        return total

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(work, structures))
