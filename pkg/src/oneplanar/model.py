"""Core graph and drawing data model.

Graphs are simple and undirected with dense integer vertex ids 0..n-1.
A drawing is stored in planarized form: each crossing point is a degree-4
vertex whose id sits above the real-vertex range (crossing i has id n+i),
and the embedding is a rotation system over all planarization vertices.
Faces are recovered by rotation traversal, which makes "each edge crossed
at most once" and the genus-0 certificate structural checks instead of
geometric ones.

All types here are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

Edge = tuple[int, int]


class OnePlanarError(Exception):
    """Base class for errors raised by this package."""


class MalformedDrawingError(OnePlanarError):
    """Structurally unusable input: ids out of range, non-simple graph, bad tokens."""


class InvalidDrawingError(OnePlanarError):
    """A drawing failed invariant validation.  Carries the validation report."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid drawing: " + "; ".join(v.code for v in report.violations))
        self.report = report


def normalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise MalformedDrawingError(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


class AbstractGraph:
    """Simple undirected graph over vertex ids 0..n-1."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise MalformedDrawingError(f"negative vertex count {n}")
        self.n = n
        seen: set[Edge] = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            e = normalize_edge(u, v)
            if not (0 <= e[0] and e[1] < n):
                raise MalformedDrawingError(f"edge {e} out of range for n={n}")
            if e in seen:
                raise MalformedDrawingError(f"duplicate edge {e}")
            seen.add(e)
            adj[e[0]].add(e[1])
            adj[e[1]].add(e[0])
        self.edges: frozenset[Edge] = frozenset(seen)
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and v in self._adj[u]

    def min_degree(self) -> int:
        return min((len(s) for s in self._adj), default=0)

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj), default=0)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbstractGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"AbstractGraph(n={self.n}, e={self.num_edges})"


class Crossing(NamedTuple):
    """One crossing point: the two graph edges that cross there."""

    e1: Edge
    e2: Edge

    def endpoints(self) -> tuple[int, int, int, int]:
        return (*self.e1, *self.e2)


class OnePlanarDrawing:
    """A 1-planar drawing: base graph, crossing records, planarization rotation.

    rotation[w] lists the planarization neighbors of w in cyclic order;
    index w runs over real ids 0..n-1 followed by crossing ids n..n+k-1.
    Construction checks only structural well-formedness (ids in range);
    invariant checking is ``validate_drawing``'s job so that invalid
    drawings can be represented and reported on.
    """

    __slots__ = ("base", "crossings", "rotation", "_edge_crossing")

    def __init__(
        self,
        base: AbstractGraph,
        crossings: Iterable[Crossing | tuple[Edge, Edge]],
        rotation: Sequence[Sequence[int]],
    ):
        self.base = base
        n = base.n
        xs = []
        for c in crossings:
            e1, e2 = c
            xs.append(Crossing(normalize_edge(*e1), normalize_edge(*e2)))
            for u in (*e1, *e2):
                if not 0 <= u < n:
                    raise MalformedDrawingError(f"crossing endpoint {u} out of range")
        self.crossings: tuple[Crossing, ...] = tuple(xs)
        total = n + len(self.crossings)
        if len(rotation) != total:
            raise MalformedDrawingError(
                f"rotation has {len(rotation)} entries, expected {total}"
            )
        rot = []
        for w, order in enumerate(rotation):
            for x in order:
                if not 0 <= x < total:
                    raise MalformedDrawingError(f"rotation[{w}] references id {x} out of range")
            rot.append(tuple(order))
        self.rotation: tuple[tuple[int, ...], ...] = tuple(rot)
        ec: dict[Edge, int] = {}
        for i, c in enumerate(self.crossings):
            for e in (c.e1, c.e2):
                ec.setdefault(e, n + i)
        self._edge_crossing = ec

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @property
    def planarization_size(self) -> int:
        return self.base.n + len(self.crossings)

    def is_crossing_id(self, w: int) -> bool:
        return w >= self.base.n

    def crossing_of_edge(self, u: int, v: int) -> int | None:
        """Planarization id of the crossing on edge uv, if it is crossed."""
        return self._edge_crossing.get(normalize_edge(u, v))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OnePlanarDrawing):
            return NotImplemented
        return (
            self.base == other.base
            and self.crossings == other.crossings
            and self.rotation == other.rotation
        )

    def __hash__(self) -> int:
        return hash((self.base, self.crossings, self.rotation))

    def __repr__(self) -> str:
        return (
            f"OnePlanarDrawing(n={self.n}, e={self.base.num_edges}, "
            f"crossings={self.num_crossings})"
        )


@dataclass(frozen=True)
class FaceList:
    """Faces traced from a rotation system.

    Each face is the cyclic vertex sequence of one boundary walk; every
    directed edge appears in exactly one face, so the face lengths sum to
    2e.  ``euler_ok`` records whether every connected component satisfies
    v - e + f = 2 (genus 0); ``genus`` sums the per-component genus.
    """

    faces: tuple[tuple[int, ...], ...]
    components: int
    genus: int
    euler_ok: bool

    def lengths(self) -> list[int]:
        return [len(f) for f in self.faces]

    @property
    def total_length(self) -> int:
        return sum(len(f) for f in self.faces)


def trace_faces(rotation: Sequence[Sequence[int]]) -> FaceList:
    """Trace all faces of a rotation system.

    The successor convention: having arrived at w along (u -> w), the walk
    leaves along (w -> x) where x follows u in rotation[w].  Raises
    MalformedDrawingError if the rotation is not symmetric or lists a
    neighbor twice (both break the traversal).
    """
    succ: list[dict[int, int]] = []
    for w, order in enumerate(rotation):
        if len(set(order)) != len(order):
            raise MalformedDrawingError(f"rotation[{w}] repeats a neighbor")
        succ.append({u: order[(k + 1) % len(order)] for k, u in enumerate(order)})
    for w, order in enumerate(rotation):
        for u in order:
            if w not in succ[u]:
                raise MalformedDrawingError(
                    f"rotation is asymmetric: {u} in rotation[{w}] but not conversely"
                )

    seen: set[tuple[int, int]] = set()
    faces: list[tuple[int, ...]] = []
    for u in range(len(rotation)):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            walk: list[int] = []
            cur = (u, v)
            while cur not in seen:
                seen.add(cur)
                walk.append(cur[0])
                cur = (cur[1], succ[cur[1]][cur[0]])
            faces.append(tuple(walk))

    # per-component Euler check; an isolated vertex counts one face
    comp = [-1] * len(rotation)
    components = 0
    for s in range(len(rotation)):
        if comp[s] >= 0:
            continue
        stack = [s]
        comp[s] = components
        while stack:
            w = stack.pop()
            for x in rotation[w]:
                if comp[x] < 0:
                    comp[x] = components
                    stack.append(x)
        components += 1
    cv = [0] * components
    ce = [0] * components
    cf = [0] * components
    for w in range(len(rotation)):
        cv[comp[w]] += 1
        ce[comp[w]] += len(rotation[w])
    for f in faces:
        cf[comp[f[0]]] += 1
    genus = 0
    euler_ok = True
    for i in range(components):
        e = ce[i] // 2
        f = cf[i] if ce[i] else 1
        chi = cv[i] - e + f
        if chi != 2:
            euler_ok = False
        genus += (2 - chi) // 2
    return FaceList(tuple(faces), components, genus, euler_ok)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    stats: Mapping[str, int]

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def _expected_planarization(d: OnePlanarDrawing) -> list[set[int]] | None:
    """Expected neighbor sets in the planarization, or None if ambiguous."""
    n = d.n
    counts: dict[Edge, int] = {}
    for c in d.crossings:
        for e in (c.e1, c.e2):
            counts[e] = counts.get(e, 0) + 1
    if any(k > 1 for k in counts.values()):
        return None
    if any(e not in d.base.edges for e in counts):
        return None
    expected: list[set[int]] = [set() for _ in range(d.planarization_size)]
    for u, v in d.base.edges:
        z = d.crossing_of_edge(u, v)
        if z is None:
            expected[u].add(v)
            expected[v].add(u)
        else:
            expected[u].add(z)
            expected[v].add(z)
            expected[z].add(u)
            expected[z].add(v)
    return expected


def validate_drawing(d: OnePlanarDrawing) -> ValidationReport:
    """Check every drawing invariant; an empty report means valid.

    Ids out of range are a hard error at construction time, never reported
    here.  When the crossing records are ambiguous (an edge crossed twice,
    or a crossing on a non-edge) the dependent rotation and Euler checks
    are skipped since the planarization is not well defined.
    """
    n = d.n
    out: list[Violation] = []

    for i, c in enumerate(d.crossings):
        if len(set(c.endpoints())) != 4:
            out.append(
                Violation(
                    "crossing-endpoints-not-distinct",
                    f"crossing {n + i} on edges {c.e1} x {c.e2} repeats an endpoint",
                )
            )
    counts: dict[Edge, list[int]] = {}
    for i, c in enumerate(d.crossings):
        for e in (c.e1, c.e2):
            counts.setdefault(e, []).append(n + i)
            if e not in d.base.edges:
                out.append(
                    Violation(
                        "crossed-edge-missing",
                        f"crossing {n + i} references non-edge {e}",
                    )
                )
    for e, zs in counts.items():
        if len(zs) > 1:
            out.append(
                Violation(
                    "edge-crossed-twice",
                    f"edge {e} appears in crossings {zs}; each edge may be crossed at most once",
                )
            )

    stats: dict[str, int] = {
        "n": n,
        "e": d.base.num_edges,
        "crossings": d.num_crossings,
        "e_planarization": d.base.num_edges + 2 * d.num_crossings,
        "genus": 0,
        "components": 0,
        "faces": 0,
    }

    expected = _expected_planarization(d)
    if expected is None:
        return ValidationReport(tuple(out), stats)

    coverage_ok = True
    for w in range(d.planarization_size):
        order = d.rotation[w]
        if len(set(order)) != len(order) or set(order) != expected[w]:
            coverage_ok = False
            out.append(
                Violation(
                    "rotation-coverage",
                    f"rotation[{w}] = {list(order)} does not match incident "
                    f"planarization edges {sorted(expected[w])}",
                )
            )
    for i, c in enumerate(d.crossings):
        z = n + i
        order = d.rotation[z]
        if len(order) != 4:
            out.append(
                Violation(
                    "crossing-degree",
                    f"crossing {z} has degree {len(order)}, expected 4",
                )
            )
            continue
        in_e1 = [x in c.e1 for x in order]
        if set(order) == set(c.endpoints()) and (
            in_e1 == [True, False, True, False] or in_e1 == [False, True, False, True]
        ):
            continue
        out.append(
            Violation(
                "crossing-rotation-alternation",
                f"rotation at crossing {z} = {list(order)} does not alternate "
                f"between ends of {c.e1} and {c.e2}",
            )
        )

    if coverage_ok:
        fl = trace_faces(d.rotation)
        stats["genus"] = fl.genus
        stats["components"] = fl.components
        stats["faces"] = len(fl.faces)
        if not fl.euler_ok:
            out.append(
                Violation(
                    "euler-genus",
                    f"face tracing gives genus {fl.genus}; drawing is not plane",
                )
            )
    return ValidationReport(tuple(out), stats)


@dataclass(frozen=True)
class EdgeBoundReport:
    passed: bool
    vacuous: bool
    v: int
    e: int
    bound: int


def edge_bound_check(d: OnePlanarDrawing) -> EdgeBoundReport:
    """Check e <= 4v - 8; vacuously true for v < 3 where the bound is negative."""
    v = d.n
    e = d.base.num_edges
    bound = 4 * v - 8
    if v < 3:
        return EdgeBoundReport(True, True, v, e, bound)
    return EdgeBoundReport(e <= bound, False, v, e, bound)


def associated_plane_graph(
    d: OnePlanarDrawing,
) -> tuple[AbstractGraph, tuple[tuple[int, ...], ...]]:
    """Planarization as a plane-embedded simple graph plus its rotation.

    Vertices >= d.n are the crossing markers; real vertices keep their
    base-graph degree.  Raises InvalidDrawingError when the drawing fails
    validation.
    """
    report = validate_drawing(d)
    if not report.valid:
        raise InvalidDrawingError(report)
    edges: list[Edge] = []
    for u, v in d.base.edges:
        z = d.crossing_of_edge(u, v)
        if z is None:
            edges.append((u, v))
        else:
            edges.append(normalize_edge(u, z))
            edges.append(normalize_edge(z, v))
    g = AbstractGraph(d.planarization_size, edges)
    return g, d.rotation


def planarization_components(d: OnePlanarDrawing) -> int:
    """Number of connected components of the planarization (drawing pieces)."""
    total = d.planarization_size
    seen = [False] * total
    comps = 0
    for s in range(total):
        if seen[s]:
            continue
        comps += 1
        seen[s] = True
        stack = [s]
        while stack:
            w = stack.pop()
            for x in d.rotation[w]:
                if not seen[x]:
                    seen[x] = True
                    stack.append(x)
    return comps


def iter_planarization_edges(d: OnePlanarDrawing) -> Iterator[Edge]:
    for u, v in d.base.edges:
        z = d.crossing_of_edge(u, v)
        if z is None:
            yield (u, v)
        else:
            yield normalize_edge(u, z)
            yield normalize_edge(z, v)
