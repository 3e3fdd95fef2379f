"""Neighborhood structure of canonical triangulations and the unavoidable
small-degree configurations.

For a real vertex v of a canonical triangulation, each crossing adjacent
to v in the planarization stands for a crossed edge v-w; w is the mirror
neighbor, the two rotation neighbors flanking the crossing are the image
neighbors, and everything else is normal.  Replacing each crossing by its
mirror vertex turns v's planarization rotation into the cyclic neighbor
order in the triangulated graph itself.  Maximal alternating image/mirror
runs form segments; the mirror triangle of a crossing is (mirror vertex,
image pair) and is light when all three degrees are at most 7.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .model import AbstractGraph, Edge, OnePlanarError, normalize_edge
from .triangulation import CanonicalTriangulation

LIGHT_DEGREE_MAX = 7

# neighbor-degree ceilings per center degree; unlisted neighbors are unbounded
CONFIG_BOUNDS: dict[int, tuple[int, ...]] = {
    3: (35,),
    4: (19, 35),
    5: (14, 19, 35),
    6: (11, 14, 19, 35),
    7: (8, 11, 14, 19, 35),
}

CONFIG_KINDS = ("C1", "C2", "C3", "C4", "C5", "C6")


class ConfigurationNotFound(OnePlanarError):
    """No vertex matches any configuration; the graph cannot be 1-planar."""


class MinDegreeError(OnePlanarError):
    pass


@dataclass(frozen=True)
class Configuration:
    kind: str
    center: int
    neighbors: tuple[int, ...]
    neighbor_degrees: tuple[int, ...]


def _kind_for_degree(deg: int) -> str:
    return "C1" if deg <= 2 else f"C{deg - 1}"


def _sorted_neighbors(g: AbstractGraph, v: int) -> list[int]:
    return sorted(g.neighbors(v), key=lambda u: (g.degree(u), u))


def matches_configuration(g: AbstractGraph, v: int) -> bool:
    deg = g.degree(v)
    if deg <= 2:
        return True
    bounds = CONFIG_BOUNDS.get(deg)
    if bounds is None:
        return False
    degs = sorted(g.degree(u) for u in g.neighbors(v))
    return all(degs[i] <= b for i, b in enumerate(bounds))


def find_configuration(g: AbstractGraph) -> Configuration:
    """Smallest-id vertex whose neighborhood matches a configuration.

    The kind is determined by the vertex degree; neighbors are listed in
    ascending degree order with ties broken by id.
    """
    for v in range(g.n):
        if matches_configuration(g, v):
            nbrs = _sorted_neighbors(g, v)
            return Configuration(
                kind=_kind_for_degree(g.degree(v)),
                center=v,
                neighbors=tuple(nbrs),
                neighbor_degrees=tuple(g.degree(u) for u in nbrs),
            )
    raise ConfigurationNotFound(
        "no vertex matches any configuration; the input is not 1-planar (or a bug)"
    )


def find_light_path3(g: AbstractGraph) -> tuple[int, int, int]:
    """A path u-v-w with all three degrees at most 35, for min degree >= 4."""
    if g.min_degree() < 4:
        raise MinDegreeError(f"light 3-path needs minimum degree 4, got {g.min_degree()}")
    cfg = find_configuration(g)
    u, w = cfg.neighbors[0], cfg.neighbors[1]
    path = (u, cfg.center, w)
    assert all(g.degree(x) <= 35 for x in path)
    return path


def find_light_star3(g: AbstractGraph) -> tuple[int, tuple[int, int, int]]:
    """A center with three neighbors, all four degrees at most 35, for min degree >= 5."""
    if g.min_degree() < 5:
        raise MinDegreeError(f"light 3-star needs minimum degree 5, got {g.min_degree()}")
    cfg = find_configuration(g)
    leaves = cfg.neighbors[:3]
    assert g.degree(cfg.center) <= 35 and all(g.degree(x) <= 35 for x in leaves)
    return cfg.center, tuple(leaves)


# --------------------------------------------------------------------------
# per-vertex census
# --------------------------------------------------------------------------


def classify_mirror_triangle(d_mirror: int, d_image1: int, d_image2: int) -> str:
    """Class of a mirror triangle from its degrees.

    heavy: some degree exceeds 7.  Among light triangles: class II when an
    image vertex has degree <= 5, class I when the mirror does but both
    images are >= 6, class III when all three are >= 6.
    """
    if max(d_mirror, d_image1, d_image2) > LIGHT_DEGREE_MAX:
        return "heavy"
    if min(d_image1, d_image2) <= 5:
        return "II"
    if d_mirror <= 5:
        return "I"
    return "III"


@dataclass(frozen=True)
class MirrorTriangle:
    crossing: int
    mirror: int
    images: tuple[int, int]
    label: str


@dataclass(frozen=True)
class Segment:
    """Maximal alternating image/mirror run on the associated cycle.

    vertices has length 2*scope + 1; when the run wraps the whole cycle
    (every other neighbor a mirror) the first vertex is repeated at the end
    and wraps is set.
    """

    vertices: tuple[int, ...]
    scope: int
    wraps: bool


@dataclass(frozen=True)
class StructureCensus:
    center: int
    cyclic_neighbors: tuple[int, ...]
    labels: tuple[str, ...]
    mirror_triangles: tuple[MirrorTriangle, ...]
    segments: tuple[Segment, ...]
    intervals: tuple[tuple[int, ...], ...]
    crossing_count: int
    mirror_triangle_count: int
    light_count: int
    heavy_count: int
    class1_count: int
    class2_count: int
    class3_count: int
    degree_counts: dict[int, int] = field(repr=False)

    def n_of_degree(self, k: int) -> int:
        return self.degree_counts.get(k, 0)

    def n_of_degree_at_least(self, k: int) -> int:
        return sum(c for d, c in self.degree_counts.items() if d >= k)


def classify_neighbors(T: CanonicalTriangulation, v: int) -> StructureCensus:
    """Full neighbor census of a real vertex in a canonical triangulation."""
    d = T.drawing
    n = d.n
    if not 0 <= v < n:
        raise OnePlanarError(f"vertex {v} is not a real vertex (n={n})")
    g = d.base
    rot = d.rotation[v]
    deg = len(rot)

    neighbors: list[int] = []
    labels: list[str] = ["normal"] * deg
    mirror_slots: list[int] = []
    triangles: list[MirrorTriangle] = []
    for k, x in enumerate(rot):
        if x < n:
            neighbors.append(x)
            continue
        c = d.crossings[x - n]
        if v in c.e1:
            own, other = c.e1, c.e2
        elif v in c.e2:
            own, other = c.e2, c.e1
        else:
            raise OnePlanarError(f"crossing {x} in rotation of {v} but not incident")
        mirror = own[0] if own[1] == v else own[1]
        neighbors.append(mirror)
        labels[k] = "mirror"
        mirror_slots.append(k)
        prev_n, next_n = rot[(k - 1) % deg], rot[(k + 1) % deg]
        if {prev_n, next_n} != set(other):
            raise OnePlanarError(
                f"rotation at {v} around crossing {x} is not flanked by {other}"
            )
        triangles.append(
            MirrorTriangle(
                crossing=x,
                mirror=mirror,
                images=other,
                label=classify_mirror_triangle(
                    g.degree(mirror), g.degree(other[0]), g.degree(other[1])
                ),
            )
        )
    for k in mirror_slots:
        for j in ((k - 1) % deg, (k + 1) % deg):
            labels[j] = "image"

    segments: list[Segment] = []
    intervals: list[tuple[int, ...]] = []
    c_count = len(mirror_slots)
    if c_count and 2 * c_count == deg:
        # fully alternating cycle: one wrapping segment, no gaps
        start = (mirror_slots[0] - 1) % deg
        verts = tuple(neighbors[(start + t) % deg] for t in range(deg + 1))
        segments.append(Segment(verts, c_count, True))
    elif c_count:
        # chain mirror slots whose cyclic distance is 2 (shared image vertex)
        slots = mirror_slots
        breaks = [
            i
            for i in range(len(slots))
            if (slots[i] - slots[i - 1]) % deg != 2
        ]
        chains: list[list[int]] = []
        for b, start in enumerate(breaks):
            end = breaks[(b + 1) % len(breaks)]
            chain = []
            i = start
            while True:
                chain.append(slots[i])
                if i == (end - 1) % len(slots):
                    break
                i = (i + 1) % len(slots)
            chains.append(chain)
        for chain in chains:
            first, last = chain[0], chain[-1]
            length = 2 * len(chain) + 1
            verts = tuple(neighbors[(first - 1 + t) % deg] for t in range(length))
            segments.append(Segment(verts, len(chain), False))
        for i in range(len(segments)):
            # gap from the end slot of segment i to the start slot of the next,
            # both endpoints included
            end_slot = (chains[i][-1] + 1) % deg
            start_slot = (chains[(i + 1) % len(chains)][0] - 1) % deg
            gap = []
            t = end_slot
            while True:
                gap.append(neighbors[t])
                if t == start_slot:
                    break
                t = (t + 1) % deg
            intervals.append(tuple(gap))

    labels_by = Counter(t.label for t in triangles)
    heavy = labels_by.get("heavy", 0)
    c1 = labels_by.get("I", 0)
    c2 = labels_by.get("II", 0)
    c3 = labels_by.get("III", 0)
    return StructureCensus(
        center=v,
        cyclic_neighbors=tuple(neighbors),
        labels=tuple(labels),
        mirror_triangles=tuple(triangles),
        segments=tuple(segments),
        intervals=tuple(intervals),
        crossing_count=c_count,
        mirror_triangle_count=len(triangles),
        light_count=c1 + c2 + c3,
        heavy_count=heavy,
        class1_count=c1,
        class2_count=c2,
        class3_count=c3,
        degree_counts=dict(Counter(g.degree(u) for u in neighbors)),
    )


def mirror_triangle_census(T: CanonicalTriangulation, v: int) -> dict[str, int]:
    """Counts of v's mirror triangles by class."""
    c = classify_neighbors(T, v)
    return {
        "heavy": c.heavy_count,
        "I": c.class1_count,
        "II": c.class2_count,
        "III": c.class3_count,
    }


# --------------------------------------------------------------------------
# observation report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ObservationFinding:
    item: int
    level: str  # "warning" | "error"
    vertex: int
    message: str


@dataclass(frozen=True)
class ObservationReport:
    findings: tuple[ObservationFinding, ...]

    @property
    def errors(self) -> tuple[ObservationFinding, ...]:
        return tuple(f for f in self.findings if f.level == "error")

    @property
    def warnings(self) -> tuple[ObservationFinding, ...]:
        return tuple(f for f in self.findings if f.level == "warning")

    @property
    def ok(self) -> bool:
        return not self.errors


def check_observations(T: CanonicalTriangulation) -> ObservationReport:
    """Check the local degree/crossing-count facts a proper drawing must obey.

    Item 1 (no two crossing vertices adjacent) can only fail for inputs
    that are not crossing-minimal and is reported as a warning; items 2-4
    bound the number of crossings around a vertex by its degree and are
    reported as errors.  Nothing is thrown; callers read the report.
    """
    d = T.drawing
    n = d.n
    findings: list[ObservationFinding] = []
    for i in range(d.num_crossings):
        z = n + i
        for x in d.rotation[z]:
            if x >= n:
                findings.append(
                    ObservationFinding(
                        1, "warning", z, f"crossing vertices {z} and {x} are adjacent"
                    )
                )
    for v in range(n):
        deg = d.base.degree(v)
        c = sum(1 for x in d.rotation[v] if x >= n)
        if deg == 3 and c != 0:
            findings.append(
                ObservationFinding(2, "error", v, f"degree-3 vertex has {c} crossings")
            )
        elif deg == 4 and c > 1:
            findings.append(
                ObservationFinding(3, "error", v, f"degree-4 vertex has {c} crossings")
            )
        elif deg >= 5 and 2 * c > deg:
            findings.append(
                ObservationFinding(
                    4, "error", v, f"degree-{deg} vertex has {c} > {deg}/2 crossings"
                )
            )
    return ObservationReport(tuple(findings))
