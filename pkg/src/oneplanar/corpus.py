"""Drawing generators, named instances, and graph6 / drawing-JSON I/O.

Determinism contract: every generator is a pure function of its arguments.
The PRNG is xorshift64* (Marsaglia/Vigna), fixed here by its recurrence so
output is reproducible across platforms and reimplementations:

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
    output = (x * 0x2545F4914F6CDD1D) mod 2^64

A zero seed is remapped to the splitmix64 increment constant (the state
must never be zero).  Sampling below n uses plain modulo reduction.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from .embedding import MutableEmbedding
from .model import (
    AbstractGraph,
    Crossing,
    Edge,
    MalformedDrawingError,
    OnePlanarDrawing,
    OnePlanarError,
    normalize_edge,
)

_MASK64 = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D
_ZERO_SEED = 0x9E3779B97F4A7C15


class XorShift64Star:
    """xorshift64* with 64-bit state; see module docstring for the recurrence."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = (seed & _MASK64) or _ZERO_SEED

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * _MULT) & _MASK64

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n


class GenerationError(OnePlanarError):
    pass


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

_K3_ROT = [[1, 2], [2, 0], [0, 1]]


def _grow_triangulation(n: int, rng: XorShift64Star) -> MutableEmbedding:
    emb = MutableEmbedding(_K3_ROT)
    live = sorted(emb.faces)  # two faces of the seed triangle
    for v in range(3, n):
        k = rng.below(len(live))
        f1, f2, f3 = emb.insert_vertex_in_face(live[k], v)
        live[k] = f1
        live.append(f2)
        live.append(f3)
    return emb


def _drawing_from_embedding(
    n: int, emb: MutableEmbedding, graph_edges: Iterable[Edge], crossings: list[Crossing]
) -> OnePlanarDrawing:
    base = AbstractGraph(n, graph_edges)
    rotation = emb.rotations(range(n + len(crossings)))
    return OnePlanarDrawing(base, crossings, rotation)


def gen_plane_triangulation(n: int, seed: int) -> OnePlanarDrawing:
    """Random maximal planar graph (e = 3n - 6) with its rotation system.

    Built by repeatedly inserting a fresh vertex into a face chosen by the
    seeded PRNG, starting from a triangle.  No crossings.
    """
    if n < 3:
        raise GenerationError(f"plane triangulation needs n >= 3, got {n}")
    emb = _grow_triangulation(n, XorShift64Star(seed))
    edges = [normalize_edge(u, v) for u in emb.rot for v in emb.rot[u] if u < v]
    return _drawing_from_embedding(n, emb, edges, [])


def gen_random_oneplanar(
    n: int, crossing_fraction: Fraction | int | str, seed: int
) -> OnePlanarDrawing:
    """Random 1-planar drawing: a plane triangulation plus crossing chords.

    Each crossing replaces an uncrossed edge b-d flanked by two triangles
    abd, bcd (a, c real and non-adjacent) with the chord a-c drawn across
    it, which preserves validity by construction.  The target number of
    crossings is floor(fraction * (n - 2)); the fraction is best effort and
    the achieved count is whatever the drawing reports.
    """
    if n < 4:
        raise GenerationError(f"random 1-planar generation needs n >= 4, got {n}")
    frac = Fraction(crossing_fraction)
    if not 0 <= frac <= 1:
        raise GenerationError(f"crossing fraction {frac} outside [0, 1]")
    rng = XorShift64Star(seed)
    emb = _grow_triangulation(n, rng)
    gadj: set[Edge] = {normalize_edge(u, v) for u in emb.rot for v in emb.rot[u] if u < v}
    candidates = sorted(gadj)
    crossed: set[Edge] = set()
    crossings: list[Crossing] = []
    target = int(frac * (n - 2))
    attempts = 0
    max_attempts = 30 * target + 30
    while len(crossings) < target and attempts < max_attempts:
        attempts += 1
        b, d = candidates[rng.below(len(candidates))]
        if (b, d) in crossed:
            continue
        f1 = emb.edge_face[(b, d)]
        f2 = emb.edge_face[(d, b)]
        if len(emb.faces[f1]) != 3 or len(emb.faces[f2]) != 3:
            continue
        a = emb.triangle_third(f1, b, d)
        c = emb.triangle_third(f2, d, b)
        if a >= n or c >= n or a == c:
            continue  # flanking face belongs to an earlier crossing
        chord = normalize_edge(a, c)
        if chord in gadj:
            continue
        z = n + len(crossings)
        emb.insert_crossing(b, d, z)
        gadj.add(chord)
        crossed.add(chord)
        crossed.add((b, d))
        crossings.append(Crossing(chord, (b, d)))
    return _drawing_from_embedding(n, emb, gadj, crossings)


# --------------------------------------------------------------------------
# named instances
# --------------------------------------------------------------------------

_K4_ROT = [[1, 2, 3], [2, 0, 3], [0, 1, 3], [0, 2, 1]]

# triangular antiprism: outer triangle 0,1,2; inner triangle 3,4,5
_OCTAHEDRON_ROT = [
    [1, 3, 5, 2],
    [2, 4, 3, 0],
    [0, 5, 4, 1],
    [5, 0, 1, 4],
    [5, 3, 1, 2],
    [0, 3, 4, 2],
]

# top pole 0, upper ring 1-5, lower ring 6-10, bottom pole 11
_ICOSAHEDRON_ROT = [
    [3, 4, 5, 1, 2],
    [10, 6, 2, 0, 5],
    [6, 7, 3, 0, 1],
    [7, 8, 4, 0, 2],
    [8, 9, 5, 0, 3],
    [9, 10, 1, 0, 4],
    [10, 11, 7, 2, 1],
    [6, 11, 8, 3, 2],
    [7, 11, 9, 4, 3],
    [8, 11, 10, 5, 4],
    [9, 11, 6, 1, 5],
    [9, 8, 7, 6, 10],
]


def _build_k3() -> OnePlanarDrawing:
    return OnePlanarDrawing(AbstractGraph(3, [(0, 1), (1, 2), (0, 2)]), [], _K3_ROT)


def _build_k4() -> OnePlanarDrawing:
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return OnePlanarDrawing(AbstractGraph(4, edges), [], _K4_ROT)


def _build_octahedron() -> OnePlanarDrawing:
    edges = [normalize_edge(u, v) for u in range(6) for v in _OCTAHEDRON_ROT[u] if u < v]
    return OnePlanarDrawing(AbstractGraph(6, edges), [], _OCTAHEDRON_ROT)


def _build_icosahedron() -> OnePlanarDrawing:
    edges = [normalize_edge(u, v) for u in range(12) for v in _ICOSAHEDRON_ROT[u] if u < v]
    return OnePlanarDrawing(AbstractGraph(12, edges), [], _ICOSAHEDRON_ROT)


def _build_kite() -> OnePlanarDrawing:
    """Two edges crossing once: the minimal 1-planar drawing with a crossing."""
    base = AbstractGraph(4, [(0, 1), (2, 3)])
    rotation = [[4], [4], [4], [4], [0, 2, 1, 3]]
    return OnePlanarDrawing(base, [Crossing((0, 1), (2, 3))], rotation)


def _build_k6_1planar() -> OnePlanarDrawing:
    """K6 drawn as the octahedron plus its three diagonals, one crossing each."""
    emb = MutableEmbedding(_OCTAHEDRON_ROT)
    crossings: list[Crossing] = []
    for b, d in [(1, 3), (2, 4), (0, 5)]:
        z = 6 + len(crossings)
        a, c = emb.insert_crossing(b, d, z)
        crossings.append(Crossing(normalize_edge(a, c), (b, d)))
    edges = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    return _drawing_from_embedding(6, emb, edges, crossings)


_NAMED = {
    "k3": _build_k3,
    "k4": _build_k4,
    "octahedron": _build_octahedron,
    "icosahedron": _build_icosahedron,
    "k6_1planar": _build_k6_1planar,
    "kite": _build_kite,
}

NAMED_INSTANCES = tuple(sorted(_NAMED))


def named_instance(name: str) -> OnePlanarDrawing:
    try:
        builder = _NAMED[name]
    except KeyError:
        raise OnePlanarError(
            f"unknown named instance {name!r}; known: {', '.join(NAMED_INSTANCES)}"
        ) from None
    return builder()


# --------------------------------------------------------------------------
# graph6
# --------------------------------------------------------------------------


class Graph6Error(OnePlanarError):
    pass


def write_graph6(g: AbstractGraph) -> str:
    n = g.n
    out: list[int] = []
    if n <= 62:
        out.append(63 + n)
    elif n <= 258047:
        out.append(126)
        out.extend(63 + ((n >> s) & 63) for s in (12, 6, 0))
    elif n <= 68719476735:
        out.extend((126, 126))
        out.extend(63 + ((n >> s) & 63) for s in (30, 24, 18, 12, 6, 0))
    else:
        raise Graph6Error(f"n={n} too large for graph6")
    acc = 0
    nbits = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (1 if g.has_edge(i, j) else 0)
            nbits += 1
            if nbits == 6:
                out.append(63 + acc)
                acc, nbits = 0, 0
    if nbits:
        out.append(63 + (acc << (6 - nbits)))
    return "".join(chr(b) for b in out)


def parse_graph6(text: str) -> AbstractGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise Graph6Error("empty graph6 string")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= b <= 63 for b in data):
        raise Graph6Error("graph6 byte outside printable range")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] != 63:
        if len(data) < 4:
            raise Graph6Error("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        if len(data) < 8:
            raise Graph6Error("truncated graph6 size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | b
        pos = 8
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos != need:
        raise Graph6Error(
            f"graph6 payload for n={n} needs {need} bytes, found {len(data) - pos}"
        )
    bits = []
    for b in data[pos:]:
        bits.extend((b >> s) & 1 for s in (5, 4, 3, 2, 1, 0))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return AbstractGraph(n, edges)


# --------------------------------------------------------------------------
# drawing JSON
# --------------------------------------------------------------------------


class DrawingFormatError(OnePlanarError):
    """Drawing file violates the schema; the message names the bad field."""


_SLOTS = ("whole", "half1", "half2")


def _edge_token(d: OnePlanarDrawing, w: int, x: int) -> list:
    """Serialize the rotation entry 'neighbor x of w' as an edge-end token."""
    n = d.n
    if w < n and x < n:
        e = normalize_edge(w, x)
        if d.crossing_of_edge(*e) is not None:
            raise MalformedDrawingError(
                f"rotation[{w}] lists {x} directly but edge {e} is crossed"
            )
        return [e[0], e[1], "whole"]
    if w < n <= x:
        real, z = w, x
    elif x < n <= w:
        real, z = x, w
    else:
        raise MalformedDrawingError(f"adjacent crossing ids {w}, {x}")
    c = d.crossings[z - n]
    if real in c.e1:
        e = c.e1
    elif real in c.e2:
        e = c.e2
    else:
        raise MalformedDrawingError(f"crossing {z} not incident to vertex {real}")
    return [e[0], e[1], "half1" if real == e[0] else "half2"]


def drawing_to_doc(d: OnePlanarDrawing) -> dict:
    rotation = {}
    for w in range(d.planarization_size):
        rotation[str(w)] = [_edge_token(d, w, x) for x in d.rotation[w]]
    return {
        "n": d.n,
        "edges": [list(e) for e in d.base.sorted_edges()],
        "crossings": [{"e1": list(c.e1), "e2": list(c.e2)} for c in d.crossings],
        "rotation": rotation,
    }


def write_drawing_json(d: OnePlanarDrawing) -> str:
    return json.dumps(drawing_to_doc(d), separators=(",", ":")) + "\n"


def _expect_int(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DrawingFormatError(f"{where}: expected integer, got {value!r}")
    return value


def _expect_pair(value, where: str) -> Edge:
    if not isinstance(value, list) or len(value) != 2:
        raise DrawingFormatError(f"{where}: expected [u, v]")
    return (_expect_int(value[0], where), _expect_int(value[1], where))


def drawing_from_doc(doc) -> OnePlanarDrawing:
    if not isinstance(doc, dict):
        raise DrawingFormatError("top level: expected object")
    unknown = set(doc) - {"n", "edges", "crossings", "rotation"}
    if unknown:
        raise DrawingFormatError(f"top level: unknown field {sorted(unknown)[0]!r}")
    for key in ("n", "edges", "crossings", "rotation"):
        if key not in doc:
            raise DrawingFormatError(f"top level: missing field {key!r}")
    n = _expect_int(doc["n"], "n")
    if not isinstance(doc["edges"], list):
        raise DrawingFormatError("edges: expected list")
    try:
        base = AbstractGraph(
            n, [_expect_pair(e, f"edges[{i}]") for i, e in enumerate(doc["edges"])]
        )
    except MalformedDrawingError as exc:
        raise DrawingFormatError(f"edges: {exc}") from None
    if not isinstance(doc["crossings"], list):
        raise DrawingFormatError("crossings: expected list")
    crossings = []
    for i, rec in enumerate(doc["crossings"]):
        where = f"crossings[{i}]"
        if not isinstance(rec, dict) or set(rec) != {"e1", "e2"}:
            raise DrawingFormatError(f"{where}: expected object with fields e1, e2")
        e1 = _expect_pair(rec["e1"], where + ".e1")
        e2 = _expect_pair(rec["e2"], where + ".e2")
        crossings.append(Crossing(normalize_edge(*e1), normalize_edge(*e2)))

    edge_cross: dict[Edge, int] = {}
    for i, c in enumerate(crossings):
        for e in (c.e1, c.e2):
            edge_cross.setdefault(e, n + i)

    rot_doc = doc["rotation"]
    if not isinstance(rot_doc, dict):
        raise DrawingFormatError("rotation: expected object")
    total = n + len(crossings)
    expected_keys = {str(w) for w in range(total)}
    if set(rot_doc) != expected_keys:
        missing = sorted(expected_keys - set(rot_doc))
        extra = sorted(set(rot_doc) - expected_keys)
        raise DrawingFormatError(
            f"rotation: keys mismatch (missing {missing[:3]}, unexpected {extra[:3]})"
        )

    rotation: list[list[int]] = []
    for w in range(total):
        tokens = rot_doc[str(w)]
        if not isinstance(tokens, list):
            raise DrawingFormatError(f"rotation.{w}: expected list of tokens")
        entry = []
        for k, tok in enumerate(tokens):
            where = f"rotation.{w}[{k}]"
            if not isinstance(tok, list) or len(tok) != 3:
                raise DrawingFormatError(f"{where}: expected [u, v, slot]")
            u = _expect_int(tok[0], where)
            v = _expect_int(tok[1], where)
            slot = tok[2]
            if slot not in _SLOTS:
                raise DrawingFormatError(f"{where}: unknown slot {slot!r}")
            try:
                e = normalize_edge(u, v)
            except MalformedDrawingError:
                raise DrawingFormatError(f"{where}: loop token {tok}") from None
            if e not in base.edges:
                raise DrawingFormatError(f"{where}: references nonexistent edge {list(e)}")
            z = edge_cross.get(e)
            if slot == "whole":
                if z is not None:
                    raise DrawingFormatError(f"{where}: edge {list(e)} is crossed, not whole")
                if w == e[0]:
                    entry.append(e[1])
                elif w == e[1]:
                    entry.append(e[0])
                else:
                    raise DrawingFormatError(f"{where}: token not incident to vertex {w}")
            else:
                if z is None:
                    raise DrawingFormatError(f"{where}: edge {list(e)} is not crossed")
                end = e[0] if slot == "half1" else e[1]
                if w == end:
                    entry.append(z)
                elif w == z:
                    entry.append(end)
                else:
                    raise DrawingFormatError(f"{where}: token not incident to vertex {w}")
        rotation.append(entry)
    try:
        return OnePlanarDrawing(base, crossings, rotation)
    except MalformedDrawingError as exc:
        raise DrawingFormatError(str(exc)) from None


def read_drawing_json(text: str) -> OnePlanarDrawing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DrawingFormatError(f"not valid JSON: {exc}") from None
    return drawing_from_doc(doc)


def load_drawing(path) -> OnePlanarDrawing:
    with open(path, "r", encoding="utf-8") as fh:
        return read_drawing_json(fh.read())


def save_drawing(d: OnePlanarDrawing, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_drawing_json(d))
