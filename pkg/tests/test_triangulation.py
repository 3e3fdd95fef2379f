from __future__ import annotations

import pytest

from oneplanar import (
    AbstractGraph,
    OnePlanarDrawing,
    canonical_triangulate,
    gen_random_oneplanar,
    is_canonical,
    named_instance,
    trace_faces,
)
from oneplanar.model import normalize_edge
from oneplanar.triangulation import TriangulationError

from test_model import QUAD_KITE


def test_kite_triangulates_fully():
    T = canonical_triangulate(named_instance("kite"))
    d = T.drawing
    # the four quad edges around the old crossing are all present
    for e in ((0, 2), (1, 2), (1, 3), (0, 3)):
        assert e in d.base.edges
    # original edges survive
    assert (0, 1) in d.base.edges and (2, 3) in d.base.edges
    assert all(len(f) == 3 for f in trace_faces(d.rotation).faces)
    assert is_canonical(d)
    assert set(T.added_kite_edges) == {(0, 2), (1, 2), (1, 3), (0, 3)}
    assert T.temporarily_removed == ((2, 3),)
    # the removed edge came back as a plane chord, so the crossing is gone
    assert (2, 3) in T.added_fill_edges
    assert d.num_crossings == 0


def test_plane_triangulation_is_fixed_point():
    octa = named_instance("octahedron")
    T = canonical_triangulate(octa)
    assert T.drawing == octa
    assert T.added_kite_edges == ()
    assert T.removed_duplicates == ()
    assert T.temporarily_removed == ()
    assert T.added_fill_edges == ()


def test_idempotence():
    for name in ("kite", "k6_1planar", "octahedron", "icosahedron"):
        T = canonical_triangulate(named_instance(name))
        assert canonical_triangulate(T.drawing).drawing == T.drawing


def test_original_edges_survive(corpus_drawings):
    drawings, _ = corpus_drawings
    for d in drawings[:40]:
        T = canonical_triangulate(d)
        assert d.base.edges <= T.drawing.base.edges
        assert T.drawing.n == d.n


def test_corpus_capsule(corpus_drawings):
    drawings, _ = corpus_drawings
    for d in drawings[:60]:
        T = canonical_triangulate(d)
        assert is_canonical(T.drawing)
        fl = trace_faces(T.drawing.rotation)
        assert all(len(f) == 3 for f in fl.faces)
        for i in range(T.drawing.num_crossings):
            assert len(T.drawing.rotation[T.drawing.n + i]) == 4


def test_triangulated_graph_respects_edge_bound(corpus_drawings):
    from oneplanar import edge_bound_check

    drawings, _ = corpus_drawings
    for d in drawings[:60]:
        T = canonical_triangulate(d)
        assert edge_bound_check(T.drawing).passed


def test_is_canonical_false_on_quad_face():
    assert not is_canonical(QUAD_KITE)


def test_is_canonical_true_on_triangulations():
    assert is_canonical(named_instance("octahedron"))
    assert is_canonical(named_instance("k6_1planar"))
    assert not is_canonical(named_instance("kite"))


def test_quad_kite_triangulates_to_planar_k4():
    # quad edges exist, crossing removed, outer face chorded by the removed edge
    T = canonical_triangulate(QUAD_KITE)
    assert is_canonical(T.drawing)
    assert T.drawing.num_crossings == 0
    assert T.drawing.base.num_edges == 6


def test_disconnected_input_rejected():
    g = AbstractGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    d = OnePlanarDrawing(g, [], [[1, 2], [2, 0], [0, 1], [4, 5], [5, 3], [3, 4]])
    with pytest.raises(TriangulationError):
        canonical_triangulate(d)


def test_kite_quads_present_around_every_crossing(corpus_drawings):
    drawings, _ = corpus_drawings
    for d in drawings[:40]:
        T = canonical_triangulate(d)
        out = T.drawing
        for i in range(out.num_crossings):
            order = out.rotation[out.n + i]
            for k in range(4):
                assert normalize_edge(order[k], order[(k + 1) % 4]) in out.base.edges
