"""Brute-force ground truth for small instances.

Everything here is correctness scaffolding: plain region-splitting
enumeration of triangulations, exhaustive enumeration of non-crossing edge
subsets, and a CSP-style counter for annotation assignments.  None of it is
meant to scale past n ~ 12.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .geometry import PointSet, point_in_polygon_scaled
from .plane_graph import EmbeddedGraph, Triangulation, norm_edge

Edge = Tuple[int, int]

DEFAULT_TRI_CAP = 12
DEFAULT_STRUCT_CAP = 10


class CapExceeded(ValueError):
    pass


# ---------------------------------------------------------------------------
# triangulation enumeration by region splitting


def _canon_cycle(cycle: Tuple[int, ...]) -> Tuple[int, ...]:
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def _region_interior(ps: PointSet, cycle: Sequence[int], candidates: Iterable[int]) -> frozenset:
    poly = [ps.coords(v) for v in cycle]
    out = set()
    for p in candidates:
        if p in cycle:
            continue
        x, y = ps.coords(p)
        if point_in_polygon_scaled(x, y, 1, poly):
            out.add(p)
    return frozenset(out)


def _base_edge(cycle: Tuple[int, ...]) -> int:
    """Position i of the lexicographically smallest boundary edge (cycle[i], cycle[i+1])."""
    best, besti = None, 0
    n = len(cycle)
    for i in range(n):
        e = norm_edge(cycle[i], cycle[(i + 1) % n])
        if best is None or e < best:
            best, besti = e, i
    return besti


def _apex_valid(ps: PointSet, cycle: Sequence[int], interior: frozenset, u: int, v: int, t: int) -> bool:
    if ps.orient(u, v, t) != 1:
        return False
    pts = set(cycle) | interior
    for p in pts:
        if p in (u, v, t):
            continue
        if ps.point_in_triangle(u, v, t, p):
            return False
    n = len(cycle)
    bedges = [(cycle[i], cycle[(i + 1) % n]) for i in range(n)]
    bset = {norm_edge(*e) for e in bedges}
    for side in ((u, t), (v, t)):
        if norm_edge(*side) in bset:
            continue
        for be in bedges:
            if ps.segments_properly_cross(*side, *be):
                return False
    return True


def _split_regions(ps: PointSet, cycle: Tuple[int, ...], interior: frozenset, i: int, t: int):
    """Sub-regions after placing the triangle on base edge (cycle[i], cycle[i+1])."""
    n = len(cycle)
    u, v = cycle[i], cycle[(i + 1) % n]
    if t in cycle:
        j = cycle.index(t)
        a = []
        k = (i + 1) % n
        while True:
            a.append(cycle[k])
            if k == j:
                break
            k = (k + 1) % n
        b = []
        k = j
        while True:
            b.append(cycle[k])
            if k == i:
                break
            k = (k + 1) % n
        regions = []
        for cyc in (tuple(a), tuple(b)):
            if len(cyc) >= 3:
                regions.append((cyc, _region_interior(ps, cyc, interior)))
        return regions
    cyc = cycle[i + 1 :] + cycle[: i + 1] + (t,)
    return [(cyc, interior - {t})]


def enumerate_triangulations(ps: PointSet, cap: int = DEFAULT_TRI_CAP) -> Iterator[frozenset]:
    """Every triangulation of the point set exactly once, as an edge frozenset."""
    if len(ps) > cap:
        raise CapExceeded(f"{len(ps)} points exceeds cap {cap}")
    hull = ps.convex_hull()
    hull_edges = frozenset(norm_edge(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))
    interior = frozenset(set(ps.ids) - set(hull))

    def rec(cycle: Tuple[int, ...], inner: frozenset) -> Iterator[frozenset]:
        if len(cycle) == 3 and not inner:
            yield frozenset()
            return
        i = _base_edge(cycle)
        u, v = cycle[i], cycle[(i + 1) % len(cycle)]
        for t in list(cycle) + sorted(inner):
            if t in (u, v) or not _apex_valid(ps, cycle, inner, u, v, t):
                continue
            add = frozenset({norm_edge(u, t), norm_edge(v, t)})
            subs = _split_regions(ps, cycle, inner, i, t)
            if not subs:
                yield add
            elif len(subs) == 1:
                for e1 in rec(*subs[0]):
                    yield add | e1
            else:
                for e1 in rec(*subs[0]):
                    for e2 in rec(*subs[1]):
                        yield add | e1 | e2

    for es in rec(hull, interior):
        yield es | hull_edges


def count_triangulations_bruteforce(ps: PointSet, cap: int = DEFAULT_TRI_CAP) -> int:
    """Fast memoized count over the same region recursion as the enumerator."""
    if len(ps) > cap:
        raise CapExceeded(f"{len(ps)} points exceeds cap {cap}")
    hull = ps.convex_hull()
    interior = frozenset(set(ps.ids) - set(hull))
    memo: Dict[Tuple[int, ...], int] = {}

    def rec(cycle: Tuple[int, ...], inner: frozenset) -> int:
        if len(cycle) == 3 and not inner:
            return 1
        key = _canon_cycle(cycle)
        if key in memo:
            return memo[key]
        i = _base_edge(cycle)
        u, v = cycle[i], cycle[(i + 1) % len(cycle)]
        total = 0
        for t in list(cycle) + sorted(inner):
            if t in (u, v) or not _apex_valid(ps, cycle, inner, u, v, t):
                continue
            prod = 1
            for sub in _split_regions(ps, cycle, inner, i, t):
                prod *= rec(*sub)
            total += prod
        memo[key] = total
        return total

    return rec(hull, interior)


# ---------------------------------------------------------------------------
# non-crossing edge subset enumeration


def all_segments(ps: PointSet) -> List[Edge]:
    ids = sorted(ps.ids)
    return [(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :]]


def crossing_masks(ps: PointSet, segs: Sequence[Edge]) -> List[int]:
    m = len(segs)
    masks = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if ps.segments_properly_cross(*segs[i], *segs[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def iter_noncrossing_subsets(ps: PointSet, cap: int = DEFAULT_STRUCT_CAP) -> Iterator[List[Edge]]:
    """All non-crossing edge subsets (the empty one included)."""
    if len(ps) > cap:
        raise CapExceeded(f"{len(ps)} points exceeds cap {cap}")
    segs = all_segments(ps)
    masks = crossing_masks(ps, segs)
    m = len(segs)
    chosen: List[Edge] = []

    def rec(k: int, banned: int) -> Iterator[List[Edge]]:
        if k == m:
            yield chosen
            return
        yield from rec(k + 1, banned)
        if not (banned >> k) & 1:
            chosen.append(segs[k])
            yield from rec(k + 1, banned | masks[k])
            chosen.pop()

    yield from rec(0, 0)


def count_structures_bruteforce(
    ps: PointSet, pred: Callable[[List[Edge], Dict[int, int]], bool], cap: int = DEFAULT_STRUCT_CAP
) -> int:
    return sum(1 for _ in iter_matching_subsets(ps, pred, cap))


def iter_matching_subsets(ps, pred, cap=DEFAULT_STRUCT_CAP) -> Iterator[List[Edge]]:
    for edges in iter_noncrossing_subsets(ps, cap):
        deg: Dict[int, int] = {i: 0 for i in ps.ids}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        if pred(edges, deg):
            yield list(edges)


def count_structures_multi(
    ps: PointSet,
    preds: Dict[str, Callable[[List[Edge], Dict[int, int]], bool]],
    cap: int = DEFAULT_STRUCT_CAP,
) -> Dict[str, int]:
    """Evaluate many predicates in a single sweep over all non-crossing subsets."""
    counts = {name: 0 for name in preds}
    for edges in iter_noncrossing_subsets(ps, cap):
        deg: Dict[int, int] = {i: 0 for i in ps.ids}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        for name, pred in preds.items():
            if pred(edges, deg):
                counts[name] += 1
    return counts


# ---------------------------------------------------------------------------
# structure predicates (shared by oracle and verification harness)


def _connected(ids: Iterable[int], edges: Sequence[Edge]) -> bool:
    ids = list(ids)
    if not ids:
        return True
    adj: Dict[int, List[int]] = {v: [] for v in ids}
    for a, b in edges:
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(ids)


def _quad_faces_ok(ps: PointSet, edges: Sequence[Edge], d: int) -> bool:
    """Every bounded face is a simple d-cycle and no component is enclosed by another."""
    vs = sorted({v for e in edges for v in e})
    if not vs:
        return True
    g = EmbeddedGraph(vs, edges, ps)
    comps, outer, bounded = g._component_info()
    for group in bounded:
        for walk in group:
            if len(walk) != d or len(set(walk)) != d:
                return False
    for i, c in enumerate(comps):
        rep = next(iter(c))
        rx, ry = ps.coords(rep)
        for j in range(len(comps)):
            if i == j:
                continue
            for walk in bounded[j]:
                if point_in_polygon_scaled(rx, ry, 1, [ps.coords(v) for v in walk]):
                    return False
    return True


def structure_predicates(ps: PointSet) -> Dict[str, Callable]:
    n = len(ps)
    hull_edges = ps.hull_edge_set()

    def all_graphs(edges, deg):
        return True

    def perfect_matchings(edges, deg):
        return all(d == 1 for d in deg.values())

    def cycle_decompositions(edges, deg):
        return all(d == 2 for d in deg.values())

    def hamilton_cycles(edges, deg):
        return all(d == 2 for d in deg.values()) and _connected(ps.ids, edges)

    def hamilton_paths(edges, deg):
        return (
            len(edges) == n - 1
            and all(d in (1, 2) for d in deg.values())
            and _connected(ps.ids, edges)
        )

    def euler_tours(edges, deg):
        if any(d % 2 for d in deg.values()):
            return False
        touched = [v for v, d in deg.items() if d > 0]
        return _connected(touched, edges)

    def spanning_trees(edges, deg):
        return len(edges) == n - 1 and _connected(ps.ids, edges)

    def quadrangulations(edges, deg):
        es = set(edges)
        if not hull_edges <= es:
            return False
        if any(d == 0 for d in deg.values()):
            return False
        return _quad_faces_ok(ps, list(es), 4)

    def two_regular(edges, deg):
        return all(d == 2 for d in deg.values())

    return {
        "all_graphs": all_graphs,
        "perfect_matchings": perfect_matchings,
        "cycle_decompositions": cycle_decompositions,
        "hamilton_cycles": hamilton_cycles,
        "hamilton_paths": hamilton_paths,
        "euler_tours": euler_tours,
        "spanning_trees": spanning_trees,
        "quadrangulations": quadrangulations,
        "2_regular": two_regular,
    }


def d_regular_predicate(d: int) -> Callable:
    def pred(edges, deg):
        return all(x == d for x in deg.values())

    return pred


def face_degree_predicate(ps: PointSet, d: int) -> Callable:
    hull_edges = ps.hull_edge_set()

    def pred(edges, deg):
        es = set(edges)
        if not hull_edges <= es:
            return False
        if any(x == 0 for x in deg.values()):
            return False
        return _quad_faces_ok(ps, list(es), d)

    return pred


# ---------------------------------------------------------------------------
# triangulation-class oracles


def is_three_colorable(ps: PointSet, edges: frozenset) -> bool:
    adj: Dict[int, Set[int]] = {v: set() for v in ps.ids}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    ids = sorted(ps.ids)
    color: Dict[int, int] = {}

    def rec(k: int) -> bool:
        if k == len(ids):
            return True
        v = ids[k]
        for c in range(3):
            if all(color.get(w) != c for w in adj[v]):
                color[v] = c
                if rec(k + 1):
                    del color[v]
                    return True
                del color[v]
        return False

    return rec(0)


def degree_profile(ps: PointSet, edges: frozenset) -> Dict[int, int]:
    deg = {v: 0 for v in ps.ids}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return deg


# ---------------------------------------------------------------------------
# annotation assignment counting (CSP over the triangles of one triangulation)


def iter_annotations(
    ps: PointSet,
    tri_edges: frozenset,
    system,
    token_filter: Optional[Callable] = None,
) -> Iterator[Dict]:
    """All full token assignments making every triangle of T feasible.

    Elements are ('v', id) and ('e', (a, b)).  `token_filter(elem, token)`
    restricts candidate tokens (used to pin colors when counting annotations
    of one fixed colored graph).
    """
    tri = Triangulation(ps, tri_edges)
    faces = tri.triangle_faces()
    elems: List[Tuple] = [("v", v) for v in sorted(ps.ids)]
    elems += [("e", e) for e in sorted(tri_edges)]
    elem_faces: Dict[Tuple, List[int]] = {el: [] for el in elems}
    face_elems: List[List[Tuple]] = []
    for fi, (a, b, c) in enumerate(faces):
        fe = [("v", a), ("v", b), ("v", c), ("e", norm_edge(a, b)), ("e", norm_edge(b, c)), ("e", norm_edge(c, a))]
        face_elems.append(fe)
        for el in fe:
            elem_faces[el].append(fi)

    # order: face by face, edge slots before vertex slots, so the strongest
    # partial rules (apex naming, color coupling) prune before the branchy
    # vertex payloads are enumerated
    order: List[Tuple] = []
    seen = set()
    for fe in face_elems:
        for el in fe[3:] + fe[:3]:
            if el not in seen:
                seen.add(el)
                order.append(el)
    for el in elems:
        if el not in seen:
            seen.add(el)
            order.append(el)

    def candidates(el):
        if el[0] == "v":
            cands = system.vertex_candidates(el[1])
        else:
            cands = system.edge_candidates(el[1])
        if token_filter is not None:
            cands = [t for t in cands if token_filter(el, t)]
        return cands

    assign: Dict[Tuple, object] = {}

    def face_ok(fi: int) -> bool:
        a, b, c = faces[fi]
        fe = face_elems[fi]
        toks = [assign.get(el) for el in fe]
        return system.check(
            (a, b, c), toks[0:3], toks[3:6], strict=all(t is not None for t in toks)
        )

    def rec(k: int) -> Iterator[Dict]:
        if k == len(order):
            yield dict(assign)
            return
        el = order[k]
        for tok in candidates(el):
            assign[el] = tok
            if all(face_ok(fi) for fi in elem_faces[el]):
                yield from rec(k + 1)
            del assign[el]

    yield from rec(0)


def count_annotations(ps, tri_edges, system, token_filter=None) -> int:
    return sum(1 for _ in iter_annotations(ps, tri_edges, system, token_filter))


def count_annotated_bruteforce(ps: PointSet, system, cap: int = DEFAULT_TRI_CAP) -> int:
    """Number of valid annotated triangulations, by exhaustive double enumeration."""
    total = 0
    for es in enumerate_triangulations(ps, cap):
        total += count_annotations(ps, es, system)
    return total
