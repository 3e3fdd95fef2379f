from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oneplanar import (
    AbstractGraph,
    Graph6Error,
    DrawingFormatError,
    OnePlanarError,
    XorShift64Star,
    edge_bound_check,
    gen_plane_triangulation,
    gen_random_oneplanar,
    named_instance,
    parse_graph6,
    read_drawing_json,
    trace_faces,
    validate_drawing,
    write_drawing_json,
    write_graph6,
)
from oneplanar.corpus import NAMED_INSTANCES, GenerationError

DATA = Path(__file__).parent / "data"


def test_xorshift_recurrence_golden():
    # frozen first outputs of xorshift64* for seed 1; guards the recurrence
    rng = XorShift64Star(1)
    first = [rng.next_u64() for _ in range(3)]
    x = 1
    expect = []
    m = (1 << 64) - 1
    for _ in range(3):
        x ^= x >> 12
        x = (x ^ (x << 25)) & m
        x ^= x >> 27
        expect.append((x * 0x2545F4914F6CDD1D) & m)
    assert first == expect
    assert XorShift64Star(0).state != 0


def test_gen_plane_triangulation_k3_k4():
    d3 = gen_plane_triangulation(3, 0)
    assert d3.n == 3 and d3.base.num_edges == 3
    assert len(trace_faces(d3.rotation).faces) == 2
    d4 = gen_plane_triangulation(4, 123)
    assert d4.base.num_edges == 6  # the unique maximal planar graph on 4 vertices


def test_gen_plane_triangulation_counts_and_faces():
    d = gen_plane_triangulation(50, 7)
    assert d.base.num_edges == 144 == 3 * 50 - 6
    fl = trace_faces(d.rotation)
    assert all(len(f) == 3 for f in fl.faces)
    assert validate_drawing(d).valid


def test_gen_plane_triangulation_rejects_small():
    with pytest.raises(GenerationError):
        gen_plane_triangulation(2, 0)


def test_gen_random_oneplanar_fraction_zero_is_planar():
    d = gen_random_oneplanar(30, 0, 5)
    assert d.num_crossings == 0
    assert validate_drawing(d).valid


def test_gen_random_oneplanar_n4_is_k4():
    # K4 is complete: no non-adjacent pair exists, so no crossing can be
    # inserted and the simple-graph cap of 6 edges already binds
    d = gen_random_oneplanar(4, Fraction(1, 2), 3)
    assert d.base.num_edges == 6 and d.num_crossings == 0


def test_gen_random_oneplanar_validates():
    d = gen_random_oneplanar(100, Fraction(1, 4), 42)
    assert validate_drawing(d).valid
    assert edge_bound_check(d).passed
    assert d.num_crossings > 0
    for c in d.crossings:
        assert len(set(c.endpoints())) == 4


def test_generator_determinism_bytes():
    a = write_drawing_json(gen_random_oneplanar(60, Fraction(1, 4), 9))
    b = write_drawing_json(gen_random_oneplanar(60, Fraction(1, 4), 9))
    assert a == b
    c = write_drawing_json(gen_random_oneplanar(60, Fraction(1, 4), 10))
    assert a != c


def test_named_instance_counts():
    expect = {
        "k3": (3, 3, 0),
        "k4": (4, 6, 0),
        "octahedron": (6, 12, 0),
        "icosahedron": (12, 30, 0),
        "k6_1planar": (6, 15, 3),
        "kite": (4, 2, 1),
    }
    for name, (n, e, x) in expect.items():
        d = named_instance(name)
        assert (d.n, d.base.num_edges, d.num_crossings) == (n, e, x)
        assert validate_drawing(d).valid


def test_icosahedron_is_five_regular():
    g = named_instance("icosahedron").base
    assert set(g.degrees()) == {5}
    assert len(trace_faces(named_instance("icosahedron").rotation).faces) == 20


def test_unknown_named_instance():
    with pytest.raises(OnePlanarError):
        named_instance("dodecahedron")


def test_graph6_k3():
    k3 = AbstractGraph(3, [(0, 1), (1, 2), (0, 2)])
    assert write_graph6(k3) == "Bw"
    assert parse_graph6("Bw") == k3


def test_graph6_header_and_whitespace():
    k3 = AbstractGraph(3, [(0, 1), (1, 2), (0, 2)])
    assert parse_graph6(">>graph6<<Bw\n") == k3


def test_graph6_roundtrip_named():
    for name in NAMED_INSTANCES:
        g = named_instance(name).base
        assert parse_graph6(write_graph6(g)) == g


def test_graph6_long_form():
    g = AbstractGraph(100, [(i, i + 1) for i in range(99)])
    s = write_graph6(g)
    assert s.startswith(chr(126))
    assert parse_graph6(s) == g


def test_graph6_truncated_rejected():
    with pytest.raises(Graph6Error):
        parse_graph6("Bwx")  # extra payload
    with pytest.raises(Graph6Error):
        parse_graph6(chr(63 + 10))  # n=10 with no payload
    with pytest.raises(Graph6Error):
        parse_graph6("")


@given(st.integers(min_value=0, max_value=40), st.data())
@settings(max_examples=60, deadline=None)
def test_graph6_roundtrip_random(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = AbstractGraph(n, [e for e, keep in zip(pairs, mask) if keep])
    assert parse_graph6(write_graph6(g)) == g


def test_drawing_json_roundtrip_bytes():
    for name in NAMED_INSTANCES:
        d = named_instance(name)
        s = write_drawing_json(d)
        d2 = read_drawing_json(s)
        assert d2 == d
        assert write_drawing_json(d2) == s


def test_drawing_json_golden_k6():
    golden = (DATA / "k6_1planar.drawing.json").read_text(encoding="utf-8")
    d = read_drawing_json(golden)
    assert d == named_instance("k6_1planar")
    assert write_drawing_json(d) == golden
    assert validate_drawing(d).valid


def test_drawing_json_unknown_field_rejected():
    s = write_drawing_json(named_instance("kite"))
    import json

    doc = json.loads(s)
    doc["comment"] = "hello"
    with pytest.raises(DrawingFormatError) as exc:
        read_drawing_json(json.dumps(doc))
    assert "comment" in str(exc.value)


def test_drawing_json_nonexistent_edge_named():
    import json

    doc = json.loads(write_drawing_json(named_instance("k3")))
    doc["rotation"]["0"] = [[0, 1, "whole"], [0, 9, "whole"]]
    with pytest.raises(DrawingFormatError) as exc:
        read_drawing_json(json.dumps(doc))
    assert "rotation.0[1]" in str(exc.value)


def test_drawing_json_bad_slot_and_keys():
    import json

    base = json.loads(write_drawing_json(named_instance("kite")))
    bad = dict(base)
    bad["rotation"] = dict(base["rotation"])
    bad["rotation"]["0"] = [[0, 1, "half3"]]
    with pytest.raises(DrawingFormatError):
        read_drawing_json(json.dumps(bad))
    missing = dict(base)
    missing["rotation"] = {k: v for k, v in base["rotation"].items() if k != "4"}
    with pytest.raises(DrawingFormatError):
        read_drawing_json(json.dumps(missing))


def test_drawing_json_whole_token_for_crossed_edge():
    import json

    doc = json.loads(write_drawing_json(named_instance("kite")))
    doc["rotation"]["0"] = [[0, 1, "whole"]]
    with pytest.raises(DrawingFormatError):
        read_drawing_json(json.dumps(doc))
