import random

import pytest

from crossfree.geometry import PointSet
from crossfree.oracle import count_triangulations_bruteforce, enumerate_triangulations
from crossfree.plane_graph import EmbeddedGraph, Triangulation, is_cactus, is_plane, norm_edge


def ps(*coords):
    return PointSet.from_coords(coords)


SQUARE = ps((0, 0), (4, 0), (4, 4), (0, 4))
TRI_CENTER = ps((0, 0), (6, 0), (3, 5), (3, 2))


def test_is_plane():
    assert not is_plane([(0, 2), (1, 3)], SQUARE)  # both diagonals
    assert is_plane([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], SQUARE)
    assert is_plane([], SQUARE)


def test_is_maximal_triangulation():
    quad = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
    assert Triangulation(SQUARE, quad).is_maximal()
    assert not Triangulation(SQUARE, quad[:4]).is_maximal()
    star = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    assert Triangulation(TRI_CENTER, star).is_maximal()


def test_faces_of_square_triangulation():
    t = Triangulation(SQUARE, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    faces = t.triangle_faces()
    assert len(faces) == 2
    assert {frozenset(f) for f in faces} == {frozenset({0, 1, 2}), frozenset({0, 2, 3})}


def test_layers_fan():
    # fan triangulation of convex points: single layer
    pent = ps((0, 0), (4, 0), (5, 3), (2, 6), (-1, 3))
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(0, 2), (0, 3)]
    t = Triangulation(pent, edges)
    dec = t.cactus_layers()
    assert dec.outerplanar_index == 1
    assert set(dec.index_of.values()) == {1}


def test_layers_triangle_with_center():
    star = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    t = Triangulation(TRI_CENTER, star)
    dec = t.cactus_layers()
    assert dec.index_of == {0: 1, 1: 1, 2: 1, 3: 2}
    assert t.canonical_parent(3) == 0  # all three corners are on layer 1; label order wins


def test_peel_equals_bfs_on_random_triangulations():
    rng = random.Random(5)
    for trial in range(6):
        while True:
            coords = set()
            while len(coords) < 7:
                coords.add((rng.randint(0, 40), rng.randint(0, 40)))
            s = PointSet.from_coords(sorted(coords))
            if s.validate_general_position() is None:
                break
        for es in enumerate_triangulations(s):
            t = Triangulation(s, es)
            a = t.cactus_layers()
            b = t.cactus_layers_by_peeling()
            assert a.index_of == b.index_of
            assert [l[0] for l in a.layers] == [l[0] for l in b.layers]
            assert [l[1] for l in a.layers] == [l[1] for l in b.layers]
            # each layer is a cactus; parents exist; index bound
            for vs, layer_es in a.layers:
                assert is_cactus(sorted(vs), layer_es, s)
            assert a.outerplanar_index <= len(s) // 3 + 1
            for v in s.ids:
                if a.index_of[v] > 1:
                    nb_idx = [a.index_of[w] for w in t.graph.adj[v]]
                    assert a.index_of[v] - 1 in nb_idx
                    assert min(nb_idx) >= a.index_of[v] - 1


def test_is_cactus():
    assert is_cactus([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (3, 0)], SQUARE)
    # interior vertex joined to all corners of a triangle: corner edges enclosed
    star = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    assert not is_cactus([0, 1, 2, 3], star, TRI_CENTER)
    two = ps((0, 0), (1, 0), (0, 1), (10, 0), (11, 0), (10, 1))
    assert is_cactus(
        list(two.ids), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], two
    )
    # a vertex enclosed by a cycle of another component is not on the outer face
    boxed = ps((0, 0), (8, 0), (8, 8), (0, 8), (4, 4))
    assert not is_cactus([0, 1, 2, 3, 4], [(0, 1), (1, 2), (2, 3), (3, 0)], boxed)


def test_embedded_graph_outer_face_tree():
    path = ps((0, 0), (3, 1), (6, 0))
    g = EmbeddedGraph([0, 1, 2], [(0, 1), (1, 2)], path)
    vs, es = g.outer_face_incidence()
    assert vs == {0, 1, 2}
    assert es == {(0, 1), (1, 2)}
