"""Constrained Delaunay triangulation by greedy completion and edge flips.

Uniqueness is what matters here: for a fixed plane constraint graph the flip
fixed point is independent of both the initial completion and the flip order,
because cocircular quadruples are rejected at ingestion.  This is the device
that gives every non-crossing structure exactly one triangulated
representative.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .geometry import INSIDE, PointSet
from .plane_graph import Triangulation, norm_edge

Edge = Tuple[int, int]


def delaunay_condition(tri: Triangulation, e: Edge) -> bool:
    """True iff neither adjacent triangle's circumcircle contains the other apex.

    Hull edges satisfy the condition by convention.
    """
    e = norm_edge(*e)
    if e not in tri.edges:
        raise ValueError(f"edge {e} not in triangulation")
    apexes = tri.edge_apexes().get(e, [])
    if len(apexes) <= 1:
        return True
    a, b = e
    x, y = apexes
    return tri.ps.in_circle(a, b, x, y) != INSIDE


def is_cdt(tri: Triangulation, constrained: Iterable[Edge]) -> bool:
    cons = {norm_edge(*e) for e in constrained}
    if not cons <= tri.edges:
        raise ValueError("constrained edges must be part of the triangulation")
    return all(delaunay_condition(tri, e) for e in tri.edges if e not in cons)


def complete_to_triangulation(
    ps: PointSet, edges: Iterable[Edge], order: Optional[Sequence[Edge]] = None
) -> Set[Edge]:
    """Extend a plane edge set to a maximal one by greedy insertion."""
    cur: Set[Edge] = {norm_edge(*e) for e in edges}
    from .oracle import all_segments

    cands = list(order) if order is not None else all_segments(ps)
    for c in cands:
        c = norm_edge(*c)
        if c in cur:
            continue
        if any(ps.segments_properly_cross(*c, *e) for e in cur):
            continue
        cur.add(c)
    return cur


def constrained_delaunay(
    ps: PointSet,
    constrained: Iterable[Edge],
    completion_order: Optional[Sequence[Edge]] = None,
    flip_order_seed: Optional[int] = None,
) -> Triangulation:
    """The unique triangulation extending `constrained` whose free edges are Delaunay.

    The optional order arguments only perturb the intermediate states; the
    fixed point is the same for all of them (asserted by the test suite).
    """
    cons = {norm_edge(*e) for e in constrained}
    cur = complete_to_triangulation(ps, cons, completion_order)
    import random

    rng = random.Random(flip_order_seed) if flip_order_seed is not None else None
    guard = 0
    limit = 4 * len(cur) ** 2 + 100
    while True:
        tri = Triangulation(ps, cur)
        apexes = tri.edge_apexes()
        bad = []
        for e in sorted(cur):
            if e in cons:
                continue
            ap = apexes.get(e, [])
            if len(ap) == 2 and ps.in_circle(e[0], e[1], ap[0], ap[1]) == INSIDE:
                bad.append((e, ap))
        if not bad:
            return tri
        if rng is not None:
            rng.shuffle(bad)
        e, ap = bad[0]
        cur.remove(e)
        cur.add(norm_edge(*ap))
        guard += 1
        if guard > limit:
            raise RuntimeError("flip loop failed to terminate")
