"""Plane straight-line graphs, triangulations, and cactus-layer decompositions.

The embedding always comes from the point coordinates: rotation orders are
derived with exact angular comparisons, never stored, so a graph can never
disagree with its own geometry.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Set, Tuple

from .geometry import PointSet, point_in_polygon_scaled, polygon_area2

Edge = Tuple[int, int]


def norm_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def is_plane(edges: Sequence[Edge], ps: PointSet) -> bool:
    """True iff no two edges properly cross."""
    es = [norm_edge(*e) for e in edges]
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            if ps.segments_properly_cross(*es[i], *es[j]):
                return False
    return True


def rotation(ps: PointSet, v: int, neighbors: Sequence[int]) -> List[int]:
    """Neighbors of v sorted counterclockwise by exact angle."""
    vx, vy = ps.coords(v)

    def half(u):
        ux, uy = ps.coords(u)
        dx, dy = ux - vx, uy - vy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        o = ps.orient(v, a, b)
        return -o

    return sorted(neighbors, key=functools.cmp_to_key(cmp))


class EmbeddedGraph:
    """A plane graph with its faces, derived from a PointSet embedding."""

    def __init__(self, vertex_ids: Sequence[int], edges: Sequence[Edge], ps: PointSet):
        self.ps = ps
        self.vertices = tuple(sorted(set(vertex_ids)))
        self.edges = frozenset(norm_edge(*e) for e in edges)
        self.adj: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            self.adj[a].append(b)
            self.adj[b].append(a)
        self.rot = {v: rotation(ps, v, self.adj[v]) for v in self.vertices}
        self._faces = None
        self._outer = None

    def components(self) -> List[Set[int]]:
        seen, comps = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = {v}, [v]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def face_walks(self) -> List[List[int]]:
        """All face boundary walks (vertex sequences, one entry per directed edge).

        Each walk traces the face lying to the left of its directed edges.
        Isolated vertices yield no walk.
        """
        if self._faces is not None:
            return self._faces
        nxt = {}
        for v in self.vertices:
            ring = self.rot[v]
            k = len(ring)
            for i, u in enumerate(ring):
                # face to the left of (u, v) continues with the CW-successor of u at v
                nxt[(u, v)] = (v, ring[(i - 1) % k])
        walks = []
        seen = set()
        for start in nxt:
            if start in seen:
                continue
            walk = []
            e = start
            while e not in seen:
                seen.add(e)
                walk.append(e[0])
                e = nxt[e]
            walks.append(walk)
        self._faces = walks
        return walks

    def _component_info(self):
        """Per component: (vertex set, outer walk, bounded face walks)."""
        comps = self.components()
        compof = {}
        for idx, c in enumerate(comps):
            for v in c:
                compof[v] = idx
        outer = [None] * len(comps)
        bounded: List[List[List[int]]] = [[] for _ in comps]
        for walk in self.face_walks():
            idx = compof[walk[0]]
            area = polygon_area2([self.ps.coords(v) for v in walk])
            if area > 0:
                bounded[idx].append(walk)
            else:
                outer[idx] = walk
        for idx, c in enumerate(comps):
            if outer[idx] is None:
                # tree or isolated vertex: the single zero-area walk is the outer one
                if bounded[idx]:
                    raise AssertionError("component with bounded faces lacks an outer walk")
                outer[idx] = []
        return comps, outer, bounded

    def outer_face_incidence(self) -> Tuple[Set[int], Set[Edge]]:
        """Vertices and edges incident to the global unbounded face."""
        if self._outer is not None:
            return self._outer
        comps, outer, bounded = self._component_info()
        nested = [False] * len(comps)
        for i, c in enumerate(comps):
            rep = next(iter(c))
            rx, ry = self.ps.coords(rep)
            for j in range(len(comps)):
                if i == j or nested[i]:
                    continue
                for walk in bounded[j]:
                    poly = [self.ps.coords(v) for v in walk]
                    if point_in_polygon_scaled(rx, ry, 1, poly):
                        nested[i] = True
                        break
        vs: Set[int] = set()
        es: Set[Edge] = set()
        for i, c in enumerate(comps):
            if nested[i]:
                continue
            if not outer[i] and len(c) == 1:
                vs |= c
                continue
            walk = outer[i] if outer[i] else sorted(c)
            if outer[i]:
                vs.update(walk)
                for k in range(len(walk)):
                    es.add(norm_edge(walk[k], walk[(k + 1) % len(walk)]))
            else:
                # tree component: everything borders the unbounded face
                vs |= c
                es.update(e for e in self.edges if e[0] in c)
        self._outer = (vs, es)
        return self._outer

    def bounded_face_polygons(self) -> List[List[int]]:
        """Bounded faces as vertex cycles (CCW)."""
        _, _, bounded = self._component_info()
        return [w for group in bounded for w in group]


def is_cactus(vertex_ids: Sequence[int], edges: Sequence[Edge], ps: PointSet) -> bool:
    """True iff every vertex and every edge touches the unbounded face."""
    g = EmbeddedGraph(vertex_ids, edges, ps)
    vs, es = g.outer_face_incidence()
    return set(g.vertices) <= vs and set(g.edges) <= es


@dataclass
class LayerDecomposition:
    layers: List[Tuple[Set[int], Set[Edge]]]  # 1-based conceptually; layers[0] is layer 1
    index_of: Dict[int, int]

    @property
    def outerplanar_index(self) -> int:
        return len(self.layers)


class Triangulation:
    """A maximal plane graph on the full point set."""

    def __init__(self, ps: PointSet, edges: Sequence[Edge]):
        self.ps = ps
        self.edges = frozenset(norm_edge(*e) for e in edges)
        self.graph = EmbeddedGraph(ps.ids, self.edges, ps)
        self._tri_faces = None
        self._layers = None

    def triangle_faces(self) -> List[Tuple[int, int, int]]:
        if self._tri_faces is None:
            faces = []
            for walk in self.graph.face_walks():
                if polygon_area2([self.ps.coords(v) for v in walk]) > 0:
                    if len(walk) != 3:
                        raise ValueError("bounded face of a triangulation is not a triangle")
                    faces.append(tuple(walk))
            self._tri_faces = faces
        return self._tri_faces

    def edge_apexes(self) -> Dict[Edge, List[int]]:
        out: Dict[Edge, List[int]] = {}
        for a, b, c in self.triangle_faces():
            for e, apex in ((norm_edge(a, b), c), (norm_edge(b, c), a), (norm_edge(c, a), b)):
                out.setdefault(e, []).append(apex)
        return out

    def is_maximal(self) -> bool:
        n = len(self.ps)
        h = len(self.ps.convex_hull())
        return len(self.edges) == 3 * n - h - 3

    def layer_index(self) -> Dict[int, int]:
        """Index of the cactus layer containing each vertex.

        Computed as 1 + BFS distance to the hull, which matches iterative
        peeling (each vertex on layer i > 1 has a neighbor on layer i-1 and
        none below).
        """
        hull = set(self.ps.convex_hull())
        dist = {v: 1 for v in hull}
        frontier = list(hull)
        while frontier:
            nxt = []
            for v in frontier:
                for w in self.graph.adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def cactus_layers(self) -> LayerDecomposition:
        if self._layers is not None:
            return self._layers
        idx = self.layer_index()
        k = max(idx.values())
        apexes = self.edge_apexes()
        layers = []
        for i in range(1, k + 1):
            vs = {v for v, d in idx.items() if d == i}
            if i == 1:
                hull = self.ps.convex_hull()
                es = {norm_edge(hull[j], hull[(j + 1) % len(hull)]) for j in range(len(hull))}
            else:
                es = {
                    e
                    for e in self.edges
                    if idx[e[0]] == i and idx[e[1]] == i and any(idx[a] == i - 1 for a in apexes[e])
                }
            layers.append((vs, es))
        self._layers = LayerDecomposition(layers, idx)
        return self._layers

    def cactus_layers_by_peeling(self) -> LayerDecomposition:
        """Test oracle: literally peel the outer-face-incident part, round by round."""
        verts = set(self.ps.ids)
        edges = set(self.edges)
        layers = []
        index_of = {}
        i = 0
        while verts:
            i += 1
            g = EmbeddedGraph(sorted(verts), edges, self.ps)
            vs, es = g.outer_face_incidence()
            layers.append((set(vs), set(es)))
            for v in vs:
                index_of[v] = i
            verts -= vs
            edges = {e for e in edges if e[0] in verts and e[1] in verts}
        return LayerDecomposition(layers, index_of)

    def canonical_parent(self, v: int) -> int:
        """Neighbor one layer further out with the smallest order label."""
        idx = self.layer_index()
        if idx[v] <= 1:
            raise ValueError("vertex on the first layer has no parent")
        cands = [w for w in self.graph.adj[v] if idx[w] == idx[v] - 1]
        return min(cands, key=self.ps.label)

    def degree(self, v: int) -> int:
        return len(self.graph.adj[v])
