import random

import pytest

from crossfree.geometry import PointSet
from crossfree.oracle import (
    CapExceeded,
    count_structures_multi,
    count_triangulations_bruteforce,
    enumerate_triangulations,
    structure_predicates,
)


def convex(n, r=1000):
    # integer points close to a circle, nudged into general position
    import math

    pts = []
    k = 0
    while len(pts) < n:
        ang = 2 * math.pi * len(pts) / n
        x = round(r * math.cos(ang)) + k
        y = round(r * math.sin(ang)) + len(pts) * k
        cand = pts + [(x, y)]
        s = PointSet.from_coords(cand)
        if len(cand) < 3 or s.validate_general_position() is None:
            pts.append((x, y))
            k = 0
        else:
            k += 1
    s = PointSet.from_coords(pts)
    assert s.validate_general_position() is None
    assert len(s.convex_hull()) == n
    return s


def random_set(n, seed, lo=0, hi=60):
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        c = (rng.randint(lo, hi), rng.randint(lo, hi))
        cand = pts + [c]
        if len(cand) >= 3:
            if PointSet.from_coords(cand).validate_general_position() is not None:
                continue
        if c not in pts:
            pts.append(c)
    return PointSet.from_coords(pts)


def catalan(k):
    c = [1]
    for i in range(1, k + 1):
        c.append(sum(c[j] * c[i - 1 - j] for j in range(i)))
    return c[k]


def test_catalan_counts():
    for n in range(3, 11):
        s = convex(n)
        assert count_triangulations_bruteforce(s) == catalan(n - 2)


def test_enumeration_matches_count_and_is_duplicate_free():
    for n, seed in [(5, 1), (6, 2), (7, 3)]:
        s = random_set(n, seed)
        tris = list(enumerate_triangulations(s))
        assert len(set(tris)) == len(tris)
        assert len(tris) == count_triangulations_bruteforce(s)


def test_triangle_with_interior_point():
    s = PointSet.from_coords([(0, 0), (6, 0), (3, 5), (3, 2)])
    assert count_triangulations_bruteforce(s) == 1


def test_cap():
    s = convex(6)
    with pytest.raises(CapExceeded):
        count_triangulations_bruteforce(s, cap=5)


def test_structure_counts_convex():
    s4 = convex(4)
    s6 = convex(6)
    c4 = count_structures_multi(s4, structure_predicates(s4))
    c6 = count_structures_multi(s6, structure_predicates(s6))
    assert c4["perfect_matchings"] == 2
    assert c6["perfect_matchings"] == 5
    assert c4["hamilton_cycles"] == 1
    assert c6["hamilton_cycles"] == 1
    # non-crossing spanning trees of a convex polygon: known closed form for n=3
    s3 = convex(3)
    c3 = count_structures_multi(s3, structure_predicates(s3))
    assert c3["spanning_trees"] == 3
    # the hull is the one quadrangulation of a convex quad
    assert c4["quadrangulations"] == 1
    assert c4["all_graphs"] == sum(1 for _ in __import__("crossfree.oracle", fromlist=["x"]).iter_noncrossing_subsets(s4))


def test_hamilton_paths_and_cycles_disjoint():
    s = random_set(6, 9)
    c = count_structures_multi(s, structure_predicates(s))
    # a Hamilton path has n-1 edges, a Hamilton cycle n; the classes are disjoint
    assert c["hamilton_paths"] >= 1
    assert c["hamilton_cycles"] >= 0
