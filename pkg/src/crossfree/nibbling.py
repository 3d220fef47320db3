"""The path-separator dynamic program over nibbled ring subproblems.

A nibbled ring subproblem is the unit of recursion: its boundary polygon
decomposes into a base edge, two boundary paths, an outer-layer chain and
optionally a connected arc of the inner layer.  Counting branches over all
separator paths (a feasible apex triangle on the base edge plus an
index-decreasing path to the outer layer obeying the order-label minimality
rule), splits along the path, and distributes layer constraints; constraint
vectors are only ever tested at the two-vertex terminal subproblems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .geometry import PointSet, interior_point_scaled, point_in_polygon_scaled, polygon_area2
from .plane_graph import EmbeddedGraph, norm_edge

Edge = Tuple[int, int]
Element = Tuple[str, object]
Constraints = Optional[Tuple[Tuple[int, int], ...]]  # sparse ((index, count), ...)


def constraints_from_dict(d: Dict[int, int]) -> Constraints:
    return tuple(sorted((i, c) for i, c in d.items() if c))


@dataclass(frozen=True)
class Terminal:
    """A closed-off subproblem: two boundary vertices, one edge, no region.

    It has exactly one triangulation; validity reduces to the layer-constraint
    vector matching the realised per-index vertex counts (this is the only
    place constraints are ever checked).
    """

    profile: Tuple[Tuple[int, int], ...]

    def count(self, constraints: Constraints) -> int:
        if constraints is None:
            return 1
        return 1 if constraints == self.profile else 0


class Nibbled:
    """A nibbled ring subproblem over a shared PointSet.

    Boundary cycle (counterclockwise): baseA, baseB, arcB, path1, qout,
    reversed path2, reversed arcA.  Arcs are inner-layer stretches on the
    boundary between the base edge and the path starts; both are trivial
    (single vertex) in the common case.
    """

    __slots__ = (
        "ps", "base", "arcB", "path1", "qout", "path2", "arcA",
        "qin_vertices", "qin_edges", "out_index", "in_index", "free",
        "ann", "constraints", "cycle", "cycle_edges", "index_of",
        "_poly", "_qin_faces", "_forbidden", "_adj", "_key", "_skey",
        "_alledges", "_nverts",
    )

    def __init__(self, ps, base, arcB, path1, qout, path2, arcA,
                 qin_vertices, qin_edges, out_index, in_index, free, ann,
                 constraints=None):
        self.ps = ps
        self.base = base
        self.arcB = tuple(arcB)
        self.path1 = tuple(path1)
        self.qout = tuple(qout)
        self.path2 = tuple(path2)
        self.arcA = tuple(arcA)
        self.qin_vertices = frozenset(qin_vertices)
        self.qin_edges = frozenset(norm_edge(*e) for e in qin_edges)
        self.out_index = out_index
        self.in_index = in_index
        self.free = frozenset(free)
        self.ann = dict(ann)
        self.constraints = constraints
        self._poly = None
        self._qin_faces = None
        self._forbidden = None
        self._adj = None
        self._key = None
        self._skey = None
        self._alledges = None
        self._nverts = None
        self._build()

    def _build(self):
        bA, bB = self.base
        assert self.arcB[0] == bB and self.arcB[-1] == self.path1[0]
        assert self.arcA[0] == self.path2[0] and self.arcA[-1] == bA
        assert self.qout[0] == self.path1[-1] and self.qout[-1] == self.path2[-1]
        assert abs(len(self.path1) - len(self.path2)) <= 1
        cyc = _compose_cycle(bA, bB, self.arcB, self.path1, self.qout, self.path2, self.arcA)
        self.cycle = tuple(cyc)
        assert len(set(self.cycle)) == len(self.cycle), "boundary polygon must be simple"
        assert polygon_area2([self.ps.coords(v) for v in self.cycle]) > 0, "boundary must be CCW"
        self.cycle_edges = frozenset(
            norm_edge(self.cycle[i], self.cycle[(i + 1) % len(self.cycle)])
            for i in range(len(self.cycle))
        )
        idx: Dict[int, int] = {}
        for v in self.qout:
            idx[v] = self.out_index
        for path in (self.path1, self.path2):
            m = len(path)
            for k, v in enumerate(path):
                want = self.out_index + (m - 1 - k)
                got = idx.setdefault(v, want)
                assert got == want, "inconsistent path index"
        for v in self.qin_vertices:
            got = idx.setdefault(v, self.in_index)
            assert got == self.in_index, "inner-layer vertex off the inner index"
        self.index_of = idx

    # -- derived geometry ---------------------------------------------------

    def poly_coords(self):
        if self._poly is None:
            self._poly = [self.ps.coords(v) for v in self.cycle]
        return self._poly

    def qin_faces(self) -> List[Tuple[int, ...]]:
        if self._qin_faces is None:
            if not self.qin_edges:
                self._qin_faces = []
            else:
                g = EmbeddedGraph(sorted(self.qin_vertices), self.qin_edges, self.ps)
                self._qin_faces = [tuple(w) for w in g.bounded_face_polygons()]
        return self._qin_faces

    def forbidden_faces(self) -> List[Tuple[int, ...]]:
        """Inner-layer faces lying inside the boundary polygon."""
        if self._forbidden is None:
            out = []
            for f in self.qin_faces():
                qx, qy, sc = interior_point_scaled([self.ps.coords(v) for v in f])
                if point_in_polygon_scaled(qx, qy, sc, self.poly_coords()):
                    out.append(f)
            self._forbidden = out
        return self._forbidden

    def in_free_region(self, qx: int, qy: int, scale: int) -> bool:
        if not point_in_polygon_scaled(qx, qy, scale, self.poly_coords()):
            return False
        for f in self.forbidden_faces():
            if point_in_polygon_scaled(qx, qy, scale, [self.ps.coords(v) for v in f]):
                return False
        return True

    # -- elements and adjacency ---------------------------------------------

    def all_edges(self) -> FrozenSet[Edge]:
        if self._alledges is None:
            self._alledges = self.cycle_edges | self.qin_edges
        return self._alledges

    def elements(self) -> List[Element]:
        vs = set(self.cycle) | set(self.qin_vertices)
        out: List[Element] = [("v", v) for v in sorted(vs)]
        out += [("e", e) for e in sorted(self.all_edges())]
        return out

    def vertices(self) -> Set[int]:
        return set(self.cycle) | set(self.qin_vertices) | set(self.free)

    def adj(self) -> Dict[int, Set[int]]:
        if self._adj is None:
            m: Dict[int, Set[int]] = {}
            for a, b in self.all_edges():
                m.setdefault(a, set()).add(b)
                m.setdefault(b, set()).add(a)
            self._adj = m
        return self._adj

    def width(self) -> int:
        return self.in_index - self.out_index + 1

    def vertex_count(self) -> int:
        if self._nverts is None:
            self._nverts = len(set(self.cycle) | set(self.qin_vertices) | self.free)
        return self._nverts

    # -- keys and quick rejections -------------------------------------------

    def structural_key(self):
        if self._skey is None:
            self._skey = (
                self.base, self.arcB, self.path1, self.qout, self.path2, self.arcA,
                tuple(sorted(self.qin_vertices)), tuple(sorted(self.qin_edges)),
                self.out_index, self.in_index,
            )
        return self._skey

    def ann_key(self):
        return tuple(sorted(self.ann.items()))

    def canonical_key(self):
        if self._key is None:
            self._key = (
                self.structural_key(),
                self.ann_key(),
                self.constraints,
            )
        return self._key

    def zero_by_indices(self) -> bool:
        """True iff no valid triangulation can exist for index reasons alone.

        Only inner-layer vertices may carry the inner index; with an empty
        inner layer every index stays strictly below it.
        """
        for v, i in self.index_of.items():
            if i > self.in_index or i < self.out_index:
                return True
            if i == self.in_index and v not in self.qin_vertices:
                return True
        if self.constraints is not None:
            for j, c in self.constraints:
                if not (self.out_index <= j <= self.in_index):
                    return True
        return False


def combine_profiles(p1, p2, shared_indices) -> Optional[Tuple[Tuple[int, int], ...]]:
    """Layer profile of a reassembled triangulation: sum minus shared path vertices."""
    d: Dict[int, int] = dict(p1)
    for j, v in p2:
        d[j] = d.get(j, 0) + v
    for j in shared_indices:
        d[j] = d.get(j, 0) - 1
        if d[j] < 0:
            return None
        if d[j] == 0:
            del d[j]
    return tuple(sorted(d.items()))

    def with_constraints(self, constraints: Constraints) -> "Nibbled":
        # shares every derived field; only the constraint vector differs
        other = object.__new__(Nibbled)
        for slot in Nibbled.__slots__:
            object.__setattr__(other, slot, getattr(self, slot))
        other.constraints = constraints
        other._key = None
        return other


# ---------------------------------------------------------------------------
# separator path enumeration (structural part)


def _delta_ok(sp: Nibbled, w1: int, verts=None) -> bool:
    ps = sp.ps
    bA, bB = sp.base
    if w1 in (bA, bB):
        return False
    for p in (verts if verts is not None else sp.vertices()):
        if p in (bA, bB, w1):
            continue
        if ps.point_in_triangle(bA, bB, w1, p):
            return False
    edges = sp.all_edges()
    for side in ((bA, w1), (bB, w1)):
        se = norm_edge(*side)
        if se in edges:
            if se[0] in sp.qin_vertices and se[1] in sp.qin_vertices and se not in sp.qin_edges:
                return False
            continue
        if se[0] in sp.qin_vertices and se[1] in sp.qin_vertices:
            return False
        for e in edges:
            if ps.segments_properly_cross(*se, *e):
                return False
    ax, ay = ps.coords(bA)
    bx, by = ps.coords(bB)
    wx, wy = ps.coords(w1)
    return sp.in_free_region(ax + bx + wx, ay + by + wy, 3)


def _edge_ok(sp: Nibbled, new_edges: List[Edge], a: int, b: int) -> bool:
    ps = sp.ps
    e = norm_edge(a, b)
    if e in sp.all_edges():
        return True
    for other in sp.all_edges():
        if ps.segments_properly_cross(*e, *other):
            return False
    for other in new_edges:
        if ps.segments_properly_cross(*e, *other):
            return False
    xa, ya = ps.coords(a)
    xb, yb = ps.coords(b)
    return sp.in_free_region(xa + xb, ya + yb, 2)


def enumerate_separator_structures(sp: Nibbled) -> List[Tuple[int, Tuple[int, ...]]]:
    """All (apex, path) pairs passing the geometric and index conditions.

    Annotation assignment happens separately; this part depends only on the
    subproblem's shape and is cached per structural key by the solver.
    """
    out_idx, in_idx = sp.out_index, sp.in_index
    w = sp.width()
    qout_set = set(sp.qout)
    qin = sp.qin_vertices
    bA, bB = sp.base
    verts = sorted(sp.vertices())
    results: List[Tuple[int, Tuple[int, ...]]] = []

    for w1 in verts:
        if w1 in (bA, bB) or not _delta_ok(sp, w1, verts):
            continue
        base_new = [e for e in (norm_edge(bA, w1), norm_edge(bB, w1)) if e not in sp.all_edges()]

        def extend(seq: List[int], new_edges: List[Edge]):
            cur = seq[-1]
            if cur in qout_set:
                results.append((w1, tuple(seq)))
                return
            if len(seq) >= w:
                return
            cur_idx = sp.index_of.get(cur)
            for y in verts:
                if y in seq:
                    continue
                if y in qin:
                    continue  # only the apex may sit on the inner layer
                y_idx = sp.index_of.get(y)
                if cur_idx is not None:
                    if y_idx is not None and y_idx != cur_idx - 1:
                        continue
                    if y_idx is None and cur_idx - 1 <= out_idx:
                        continue  # a free point can never reach the outer index
                if not _edge_ok(sp, new_edges, cur, y):
                    continue
                e = norm_edge(cur, y)
                added = [] if e in sp.all_edges() else [e]
                extend(seq + [y], new_edges + added)

        extend([w1], list(base_new))

    return [cand for cand in results if _battery(sp, *cand)]


def path_indices(sp: Nibbled, path: Tuple[int, ...]) -> Dict[int, int]:
    idx = dict(sp.index_of)
    a = len(path)
    for k, v in enumerate(path):
        idx.setdefault(v, sp.out_index + (a - 1 - k))
    return idx


def _battery(sp: Nibbled, w1: int, path: Tuple[int, ...]) -> bool:
    """Replaced outward condition, index caps, and order-label minimality."""
    ps = sp.ps
    bA, bB = sp.base
    a = len(path)
    idx = dict(sp.index_of)
    for k, v in enumerate(path):
        target = sp.out_index + (a - 1 - k)
        if v in idx:
            if idx[v] != target:
                return False
        else:
            idx[v] = target
    if idx[w1] > sp.in_index or (idx[w1] == sp.in_index and w1 not in sp.qin_vertices):
        return False
    for v in path:
        if v not in sp.index_of:
            if not (sp.out_index + 1 <= idx[v] <= sp.in_index - 1):
                return False

    new_adj: Dict[int, Set[int]] = {}

    def add(u, v):
        new_adj.setdefault(u, set()).add(v)
        new_adj.setdefault(v, set()).add(u)

    add(bA, w1)
    add(bB, w1)
    for i in range(a - 1):
        add(path[i], path[i + 1])
    for u, vs in new_adj.items():
        if u not in idx:
            continue
        for v in vs:
            if v in idx and abs(idx[u] - idx[v]) > 1:
                return False

    base_adj = sp.adj()

    def g_neighbors(v):
        return base_adj.get(v, set()) | new_adj.get(v, set())

    for chain in (sp.path1, sp.path2, path):
        for i in range(len(chain) - 1):
            v, succ = chain[i], chain[i + 1]
            cands = [u for u in g_neighbors(v) if u in idx and idx[u] == idx[v] - 1]
            if succ not in cands or min(cands, key=ps.label) != succ:
                return False
    return True


# ---------------------------------------------------------------------------
# extracting the canonical outgoing path from a concrete triangulation
# (test-side oracle)


def triangulation_distances(sp: Nibbled, tri_edges: FrozenSet[Edge]) -> Dict[int, int]:
    adj: Dict[int, Set[int]] = {v: set() for v in sp.vertices()}
    for x, y in tri_edges:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    dist = {v: sp.out_index for v in sp.qout}
    frontier = list(sp.qout)
    while frontier:
        nxt = []
        for v in frontier:
            for u in adj.get(v, ()):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def canonical_outgoing_path(sp: Nibbled, tri_edges: FrozenSet[Edge]) -> Tuple[int, Tuple[int, ...]]:
    """The unique outgoing path of a valid triangulation of the subproblem."""
    ps = sp.ps
    bA, bB = sp.base
    adj: Dict[int, Set[int]] = {}
    for x, y in tri_edges:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    apex = None
    for v in sorted(adj.get(bA, set()) & adj.get(bB, set())):
        if any(ps.point_in_triangle(bA, bB, v, u) for u in adj if u not in (bA, bB, v)):
            continue
        x1, y1 = ps.coords(bA)
        x2, y2 = ps.coords(bB)
        x3, y3 = ps.coords(v)
        if sp.in_free_region(x1 + x2 + x3, y1 + y2 + y3, 3):
            apex = v
            break
    assert apex is not None, "no base triangle in the given triangulation"
    dist = triangulation_distances(sp, tri_edges)
    path = [apex]
    while dist[path[-1]] > sp.out_index:
        v = path[-1]
        cands = [u for u in adj[v] if u in dist and dist[u] == dist[v] - 1]
        path.append(min(cands, key=ps.label))
    return apex, tuple(path)


# ---------------------------------------------------------------------------
# splitting along a separator path


def _first_shared(path: Sequence[int], other: Sequence[int]) -> Optional[int]:
    oset = set(other)
    for i, v in enumerate(path):
        if v in oset:
            return i
    return None


def _qout_portion(sp: Nibbled, frm: int, to: int) -> Tuple[int, ...]:
    q = sp.qout
    i, j = q.index(frm), q.index(to)
    assert i <= j, "outer-layer portion must follow the chain order"
    return q[i : j + 1]


def _face_walk(face: Tuple[int, ...], frm: int, to: int) -> List[int]:
    """The long way from `frm` to `to` around a face cycle (avoiding the direct edge)."""
    k = len(face)
    i = face.index(frm)
    fwd = [face[(i + m) % k] for m in range(k)] + [frm]
    j = fwd.index(to, 1)
    route1 = fwd[: j + 1]
    bwd = [face[(i - m) % k] for m in range(k)] + [frm]
    j2 = bwd.index(to, 1)
    route2 = bwd[: j2 + 1]
    return route1 if len(route1) > 2 else route2


def _compose_cycle(baseA, baseB, arcB, path1, qout, path2, arcA):
    # the full boundary walk returns to baseA at its end; drop that repeat
    walk = [baseA, baseB]
    walk += list(arcB[1:])
    walk += list(path1[1:])
    walk += list(qout[1:])
    walk += list(reversed(path2))[1:]
    walk += list(arcA[1:])
    assert walk[-1] == baseA
    return walk[:-1]


def split_by_path(sp: Nibbled, w1: int, path: Tuple[int, ...], ann: Dict[Element, object]):
    """The two layer-unconstrained children cut off by the separator path.

    `ann` must cover every element of the parent plus the separator triangle
    and path.  Returns (child_right, child_left, shared_path_indices) where
    the right child inherits path1.
    """
    idx = path_indices(sp, path)
    iR = _first_shared(path, sp.path1)
    iL = _first_shared(path, sp.path2)
    bound = min(x for x in (iR, iL, len(path) - 1) if x is not None)
    shared_indices = tuple(sorted({idx[v] for v in path[: bound + 1]}))
    right = _make_child(sp, w1, path, ann, idx, "right", iR)
    left = _make_child(sp, w1, path, ann, idx, "left", iL)
    return right, left, shared_indices


def _make_child(sp: Nibbled, w1, path, ann, idx, side: str, merge_at: Optional[int]):
    ps = sp.ps
    bA, bB = sp.base
    attach = bB if side == "right" else bA
    old_path = sp.path1 if side == "right" else sp.path2
    old_arc = sp.arcB if side == "right" else sp.arcA

    if merge_at is not None:
        s = path[merge_at]
        new_path = path[: merge_at + 1]
        old_cut = old_path[: old_path.index(s) + 1]
        qout = (s,)
        out_index = idx[s]
    else:
        new_path = path
        old_cut = old_path
        if side == "right":
            qout = _qout_portion(sp, old_path[-1], path[-1])
        else:
            qout = _qout_portion(sp, path[-1], old_path[-1])
        out_index = sp.out_index

    # the connecting chain runs, in this child's cycle order, from the start
    # of its path2 to the start of its path1; the base edge is chosen on it
    side_edge = norm_edge(w1, attach)
    deleted: Set[Edge] = set()
    face = None
    if side_edge in sp.qin_edges:
        for f in sp.forbidden_faces():
            fe = {norm_edge(f[i], f[(i + 1) % len(f)]) for i in range(len(f))}
            if side_edge in fe:
                face = f
                break
    if face is not None:
        # the triangle side bounds a forbidden face on this child's side:
        # route the boundary around the face and drop the consumed edge
        fw = _face_walk(face, w1, attach)  # w1 .. attach avoiding the direct edge
        deleted.add(side_edge)
        if side == "right":
            chain = fw + list(old_arc[1:])
            allowed = range(0, len(fw) - 1)
        else:
            chain = list(old_arc) + list(reversed(fw))[1:]
            allowed = range(len(old_arc) - 1, len(chain) - 1)
    elif side_edge in sp.cycle_edges and w1 in old_arc:
        # the side coincides with an inner-layer arc edge of the boundary:
        # the arc is cut at the apex and the side edge leaves this child
        j = old_arc.index(w1)
        if side == "right":
            chain = list(old_arc[j:])
        else:
            chain = list(old_arc[: j + 1])
        allowed = range(0, len(chain) - 1)
    else:
        if side == "right":
            chain = [w1, attach] + list(old_arc[1:])
            allowed = range(0, 1)
        else:
            chain = list(old_arc) + [w1]
            allowed = range(len(chain) - 2, len(chain) - 1)

    path1_c = tuple(old_cut) if side == "right" else tuple(new_path)
    path2_c = tuple(new_path) if side == "right" else tuple(old_cut)

    verts_c = set(qout) | set(path1_c) | set(path2_c) | set(chain)
    if len(verts_c) <= 2:
        prof: Dict[int, int] = {}
        for v in verts_c:
            prof[idx[v]] = prof.get(idx[v], 0) + 1
        return Terminal(tuple(sorted(prof.items())))

    assert chain[0] == path2_c[0] and chain[-1] == path1_c[0]
    bpos = min(allowed, key=lambda i: norm_edge(chain[i], chain[i + 1]))
    baseA_c, baseB_c = chain[bpos], chain[bpos + 1]
    arcA_c = tuple(chain[: bpos + 1])
    arcB_c = tuple(chain[bpos + 1 :])

    cyc = _compose_cycle(baseA_c, baseB_c, arcB_c, path1_c, qout, path2_c, arcA_c)
    poly_coords = [ps.coords(v) for v in cyc]
    poly_edges = {norm_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}

    qin_e: Set[Edge] = set()
    for e in sp.qin_edges:
        if e in deleted:
            continue
        if e in poly_edges:
            qin_e.add(e)
            continue
        x1, y1 = ps.coords(e[0])
        x2, y2 = ps.coords(e[1])
        if point_in_polygon_scaled(x1 + x2, y1 + y2, 2, poly_coords):
            qin_e.add(e)
    qin_v: Set[int] = {v for e in qin_e for v in e}
    cycset = set(cyc)
    for v in sp.qin_vertices:
        if v in qin_v:
            continue
        if v in cycset:
            # inner-layer vertices on the child boundary stay on the inner layer
            qin_v.add(v)
            continue
        x, y = ps.coords(v)
        if point_in_polygon_scaled(x, y, 1, poly_coords):
            qin_v.add(v)

    pathset = set(path)
    free_c = set()
    for v in sp.free:
        if v in pathset:
            continue
        x, y = ps.coords(v)
        if point_in_polygon_scaled(x, y, 1, poly_coords):
            free_c.add(v)

    child_ann: Dict[Element, object] = {}
    for v in cycset | qin_v:
        child_ann[("v", v)] = ann[("v", v)]
    for e in poly_edges | qin_e:
        child_ann[("e", e)] = ann[("e", e)]

    return Nibbled(
        ps, (baseA_c, baseB_c), arcB_c, path1_c, qout, path2_c, arcA_c,
        qin_v, qin_e, out_index, sp.in_index, free_c, child_ann, None,
    )


# ---------------------------------------------------------------------------
# layer-constraint handling


def add_constraints(c1: Constraints, c2: Constraints) -> Constraints:
    d: Dict[int, int] = {}
    for c in (c1 or (), c2 or ()):
        for i, v in c:
            d[i] = d.get(i, 0) + v
    return constraints_from_dict(d)


def path_constraint_vector(shared_indices: Tuple[int, ...]) -> Constraints:
    return tuple((i, 1) for i in sorted(shared_indices))


def enumerate_compatible_constraints(target: Constraints, win1, win2, nmax: int,
                                     tot1: Optional[int] = None, tot2: Optional[int] = None):
    """All splits c1 + c2 = target, each side supported in its index window.

    When the per-side grand totals are known (each side's triangulation has a
    fixed number of vertices) they are used to prune; this is pure pruning and
    cannot change any count.
    """
    items = list(target or ())
    lo1, hi1 = win1
    lo2, hi2 = win2

    def rec(k, acc1, acc2, s1, s2):
        if k == len(items):
            if (tot1 is None or s1 == tot1) and (tot2 is None or s2 == tot2):
                yield tuple(acc1), tuple(acc2)
            return
        j, total = items[k]
        in1 = lo1 <= j <= hi1
        in2 = lo2 <= j <= hi2
        if not in1 and not in2:
            return
        if in1 and in2:
            lo = 0 if tot2 is None else max(0, total - (tot2 - s2))
            hi = total if tot1 is None else min(total, tot1 - s1)
            choices = range(lo, hi + 1)
        elif in1:
            choices = (total,)
        else:
            choices = (0,)
        for a in choices:
            b = total - a
            if a > nmax or b > nmax:
                continue
            if tot1 is not None and s1 + a > tot1:
                continue
            if tot2 is not None and s2 + b > tot2:
                continue
            yield from rec(k + 1, acc1 + ([(j, a)] if a else []),
                           acc2 + ([(j, b)] if b else []), s1 + a, s2 + b)

    yield from rec(0, [], [], 0, 0)


def constraint_total(c: Constraints) -> int:
    return sum(v for _, v in (c or ()))
