"""Exact geometric primitives over integer coordinates.

Every predicate is computed with arbitrary-precision integer arithmetic;
there are no tolerances and no floating point anywhere.  A single
misclassified sign would corrupt a count, so exactness is non-negotiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

CCW = 1
COLLINEAR = 0
CW = -1

INSIDE = 1
COCIRCULAR = 0
OUTSIDE = -1


@dataclass(frozen=True)
class Point:
    """Immutable point with an exact integer position and a distinct order label."""

    id: int
    x: int
    y: int
    label: int

    def __post_init__(self):
        if not isinstance(self.x, int) or not isinstance(self.y, int):
            raise TypeError("coordinates must be exact integers")


def orient_coords(ax, ay, bx, by, cx, cy) -> int:
    """Sign of the cross product (b-a) x (c-a)."""
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def in_circle_det(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    """Sign of the lifted 4x4 in-circle determinant (no orientation fixup)."""
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = (
        ad * (bdx * cdy - bdy * cdx)
        - bd * (adx * cdy - ady * cdx)
        + cd * (adx * bdy - ady * bdx)
    )
    return (det > 0) - (det < 0)


class PointSet:
    """An ordered set of labelled integer points with cached exact predicates.

    Points are addressed by their integer id throughout the package; this class
    is the single source of coordinates and of all geometric predicate results.
    """

    def __init__(self, points: Sequence[Point]):
        self.points = tuple(points)
        self.by_id = {p.id: p for p in self.points}
        if len(self.by_id) != len(self.points):
            raise ValueError("duplicate point ids")
        if len({(p.x, p.y) for p in self.points}) != len(self.points):
            raise ValueError("duplicate coordinates")
        if sorted(p.label for p in self.points) != list(range(1, len(self.points) + 1)):
            raise ValueError("order labels must be a permutation of 1..n")
        self.ids = tuple(p.id for p in self.points)
        self._orient = {}
        self._incircle = {}
        self._cross = {}
        self._empty = {}
        self._hull = None

    @staticmethod
    def from_coords(coords: Iterable[tuple], labels: Optional[Sequence[int]] = None) -> "PointSet":
        coords = list(coords)
        if labels is None:
            labels = range(1, len(coords) + 1)
        return PointSet([Point(i, int(x), int(y), l) for i, ((x, y), l) in enumerate(zip(coords, labels))])

    def __len__(self):
        return len(self.points)

    def coords(self, i: int) -> tuple:
        p = self.by_id[i]
        return p.x, p.y

    def label(self, i: int) -> int:
        return self.by_id[i].label

    def extend(self, coords: Sequence[tuple]) -> "PointSet":
        """New PointSet with extra points appended (fresh ids and labels)."""
        n = len(self.points)
        extra = [Point(n + k, int(x), int(y), n + 1 + k) for k, (x, y) in enumerate(coords)]
        return PointSet(self.points + tuple(extra))

    # -- predicates -------------------------------------------------------

    def orient(self, a: int, b: int, c: int) -> int:
        key = (a, b, c)
        v = self._orient.get(key)
        if v is None:
            pa, pb, pc = self.by_id[a], self.by_id[b], self.by_id[c]
            v = orient_coords(pa.x, pa.y, pb.x, pb.y, pc.x, pc.y)
            self._orient[key] = v
        return v

    def in_circle(self, a: int, b: int, c: int, d: int) -> int:
        """INSIDE iff d lies strictly inside the circle through a,b,c.

        The sign is normalised so the answer does not depend on the
        orientation of the triangle a,b,c (which must not be collinear).
        """
        key = (a, b, c, d)
        v = self._incircle.get(key)
        if v is None:
            pa, pb, pc, pd = self.by_id[a], self.by_id[b], self.by_id[c], self.by_id[d]
            v = in_circle_det(pa.x, pa.y, pb.x, pb.y, pc.x, pc.y, pd.x, pd.y)
            o = self.orient(a, b, c)
            if o == 0:
                raise ValueError("in_circle needs a non-degenerate triangle")
            v *= o
            self._incircle[key] = v
        return v

    def segments_properly_cross(self, p: int, q: int, r: int, s: int) -> bool:
        """True iff the open segments pq and rs intersect.

        Sharing an endpoint is not a crossing.  Under general position a
        segment can never pass through a third point, so only the proper
        transversal case exists.
        """
        e1 = (p, q) if p < q else (q, p)
        e2 = (r, s) if r < s else (s, r)
        if e1 > e2:
            e1, e2 = e2, e1
        key = (e1, e2)
        v = self._cross.get(key)
        if v is None:
            a, b = e1
            c, d = e2
            if len({a, b, c, d}) < 4:
                v = False
            else:
                o1 = self.orient(a, b, c)
                o2 = self.orient(a, b, d)
                o3 = self.orient(c, d, a)
                o4 = self.orient(c, d, b)
                v = o1 != o2 and o3 != o4 and o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0
            self._cross[key] = v
        return v

    def point_in_triangle(self, a: int, b: int, c: int, d: int) -> bool:
        """True iff point d is strictly inside triangle abc."""
        o = self.orient(a, b, c)
        if o == 0:
            raise ValueError("degenerate triangle")
        return (
            self.orient(a, b, d) == o
            and self.orient(b, c, d) == o
            and self.orient(c, a, d) == o
        )

    def triangle_empty(self, a: int, b: int, c: int) -> bool:
        """True iff no point of the set lies strictly inside triangle abc."""
        key = tuple(sorted((a, b, c)))
        v = self._empty.get(key)
        if v is None:
            v = True
            for p in self.ids:
                if p in key:
                    continue
                if self.point_in_triangle(a, b, c, p):
                    v = False
                    break
            self._empty[key] = v
        return v

    def convex_hull(self) -> tuple:
        """CCW boundary cycle of the convex hull, as point ids."""
        if self._hull is None:
            if len(self.points) < 3:
                raise ValueError("convex hull needs at least 3 points")
            pts = sorted(self.points, key=lambda p: (p.x, p.y))

            def half(seq):
                out = []
                for p in seq:
                    while len(out) >= 2 and orient_coords(
                        out[-2].x, out[-2].y, out[-1].x, out[-1].y, p.x, p.y
                    ) <= 0:
                        out.pop()
                    out.append(p)
                return out

            lower = half(pts)
            upper = half(reversed(pts))
            self._hull = tuple(p.id for p in lower[:-1] + upper[:-1])
        return self._hull

    def hull_edge_set(self) -> frozenset:
        h = self.convex_hull()
        return frozenset(
            (h[i], h[(i + 1) % len(h)]) if h[i] < h[(i + 1) % len(h)] else (h[(i + 1) % len(h)], h[i])
            for i in range(len(h))
        )

    # -- general position --------------------------------------------------

    def validate_general_position(self):
        """None if no three points are collinear and no four cocircular.

        Otherwise returns ('collinear', (a,b,c)) or ('cocircular', (a,b,c,d))
        for the first violating tuple in id order.
        """
        ids = sorted(self.ids)
        n = len(ids)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if self.orient(ids[i], ids[j], ids[k]) == 0:
                        return ("collinear", (ids[i], ids[j], ids[k]))
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for l in range(k + 1, n):
                        if self.in_circle(ids[i], ids[j], ids[k], ids[l]) == 0:
                            return ("cocircular", (ids[i], ids[j], ids[k], ids[l]))
        return None

    def point_ok_against(self, x: int, y: int, others: Sequence[int]) -> bool:
        """Would adding (x, y) keep general position relative to `others`?"""
        pts = [self.by_id[i] for i in others]
        for i in range(len(pts)):
            if (pts[i].x, pts[i].y) == (x, y):
                return False
            for j in range(i + 1, len(pts)):
                if orient_coords(pts[i].x, pts[i].y, pts[j].x, pts[j].y, x, y) == 0:
                    return False
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                for k in range(j + 1, len(pts)):
                    a, b, c = pts[i], pts[j], pts[k]
                    if in_circle_det(a.x, a.y, b.x, b.y, c.x, c.y, x, y) == 0:
                        return False
        return True


def bounding_triangle(ps: PointSet) -> list:
    """Three integer points strictly containing the set, in general position with it.

    Candidates are derived from the bounding box; a deterministic nudge loop
    bumps the corners until the extended set validates.  The loop terminates
    because each violation pins the new points to a measure-zero curve.
    """
    xs = [p.x for p in ps.points]
    ys = [p.y for p in ps.points]
    minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)
    w = max(maxx - minx, maxy - miny, 1)
    ids = list(ps.ids)
    for k in range(10000):
        m = 3 * w + 3 + k
        cand = [
            (minx - m, miny - m - k),
            (maxx + m + 2 * k, miny - m),
            ((minx + maxx) // 2 + k, maxy + 2 * m + k),
        ]
        ok = all(
            orient_coords(*cand[0], *cand[1], *cand[2]) != 0
            and _strictly_inside_triangle(cand, p.x, p.y)
            for p in ps.points
        )
        if not ok:
            continue
        ext = ps.extend(cand)
        new_ids = [len(ps), len(ps) + 1, len(ps) + 2]
        if _new_points_ok(ext, ids, new_ids):
            return cand
    raise RuntimeError("bounding triangle search did not terminate")


def _strictly_inside_triangle(tri, x, y) -> bool:
    (ax, ay), (bx, by), (cx, cy) = tri
    o = orient_coords(ax, ay, bx, by, cx, cy)
    return (
        orient_coords(ax, ay, bx, by, x, y) == o
        and orient_coords(bx, by, cx, cy, x, y) == o
        and orient_coords(cx, cy, ax, ay, x, y) == o
    )


def _new_points_ok(ext: PointSet, old_ids, new_ids) -> bool:
    # only tuples touching a new point need checking; the old set is assumed valid
    allids = list(old_ids) + list(new_ids)
    n = len(allids)
    newset = set(new_ids)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                t = (allids[i], allids[j], allids[k])
                if not newset.intersection(t):
                    continue
                if ext.orient(*t) == 0:
                    return False
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(k + 1, n):
                    q = (allids[i], allids[j], allids[k], allids[l])
                    if not newset.intersection(q):
                        continue
                    if ext.in_circle(*q) == 0:
                        return False
    return True


def point_in_polygon_scaled(qx: int, qy: int, scale: int, cycle_coords: Sequence[tuple]) -> bool:
    """Strict point-in-polygon with the query given at `scale` times the grid.

    The polygon coordinates are multiplied by `scale`, so midpoints (scale 2)
    and centroids (scale 3) of lattice segments/triangles can be tested
    exactly.  The query must not lie on the boundary; callers guarantee that.
    """
    n = len(cycle_coords)
    inside = False
    for i in range(n):
        ax, ay = cycle_coords[i]
        bx, by = cycle_coords[(i + 1) % n]
        ax, ay, bx, by = ax * scale, ay * scale, bx * scale, by * scale
        if (ay <= qy) and (by > qy):
            if orient_coords(ax, ay, bx, by, qx, qy) > 0:
                inside = not inside
        elif (by <= qy) and (ay > qy):
            if orient_coords(ax, ay, bx, by, qx, qy) < 0:
                inside = not inside
    return inside


def polygon_area2(cycle_coords: Sequence[tuple]) -> int:
    """Twice the signed area of the polygon (positive for CCW)."""
    s = 0
    n = len(cycle_coords)
    for i in range(n):
        ax, ay = cycle_coords[i]
        bx, by = cycle_coords[(i + 1) % n]
        s += ax * by - bx * ay
    return s


def interior_point_scaled(cycle_coords: Sequence[tuple]) -> tuple:
    """A point strictly inside a simple polygon, as (qx, qy, scale).

    Uses the classic construction: take the convex corner at the
    lexicographically smallest vertex; if the corner triangle is empty of
    other polygon vertices its centroid works, otherwise the midpoint of the
    diagonal to the deepest contained vertex does.
    """
    n = len(cycle_coords)
    vi = min(range(n), key=lambda i: cycle_coords[i])
    prev = cycle_coords[(vi - 1) % n]
    v = cycle_coords[vi]
    nxt = cycle_coords[(vi + 1) % n]
    contained = []
    for i in range(n):
        c = cycle_coords[i]
        if c in (prev, v, nxt):
            continue
        if _strictly_inside_triangle((prev, v, nxt), c[0], c[1]):
            contained.append(c)
    if not contained:
        return (prev[0] + v[0] + nxt[0], prev[1] + v[1] + nxt[1], 3)
    best = max(
        contained,
        key=lambda c: abs(
            (nxt[0] - prev[0]) * (c[1] - prev[1]) - (nxt[1] - prev[1]) * (c[0] - prev[0])
        ),
    )
    return (v[0] + best[0], v[1] + best[1], 2)
