"""Mutable rotation-system embedding with incremental face bookkeeping.

Used by the triangulation pipeline and the generators.  Faces are kept as
explicit vertex cycles indexed by directed edge, and every surgery (chord
insertion, edge deletion, vertex insertion, crossing insertion/removal)
updates rotations and faces locally, so a full retrace is never needed.

Face-walk convention throughout: having arrived at w along (u -> w), the
walk leaves along (w -> x) where x is the successor of u in rotation[w].
A face is stored as the vertex cycle [w0, w1, ..., w_{L-1}] standing for
the directed edges (w0,w1), (w1,w2), ..., (w_{L-1},w0).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .model import MalformedDrawingError, OnePlanarError


class EmbeddingError(OnePlanarError):
    """A surgery was applied in a state where it is not defined."""


class MutableEmbedding:
    def __init__(self, rotations: Sequence[Sequence[int]] | dict[int, Sequence[int]]):
        if isinstance(rotations, dict):
            items = rotations.items()
        else:
            items = enumerate(rotations)
        self.rot: dict[int, list[int]] = {w: list(order) for w, order in items}
        self.faces: dict[int, list[int]] = {}
        self.edge_face: dict[tuple[int, int], int] = {}
        self._next_fid = 0
        self._trace_all()

    # -- construction ------------------------------------------------------

    def _trace_all(self) -> None:
        self.faces.clear()
        self.edge_face.clear()
        self._next_fid = 0
        succ = {
            w: {u: order[(k + 1) % len(order)] for k, u in enumerate(order)}
            for w, order in self.rot.items()
        }
        for w, order in self.rot.items():
            if len(set(order)) != len(order):
                raise MalformedDrawingError(f"rotation[{w}] repeats a neighbor")
            for u in order:
                if w not in succ.get(u, {}):
                    raise MalformedDrawingError(f"rotation asymmetric at edge ({w},{u})")
        seen: set[tuple[int, int]] = set()
        for u in self.rot:
            for v in self.rot[u]:
                if (u, v) in seen:
                    continue
                walk: list[int] = []
                cur = (u, v)
                while cur not in seen:
                    seen.add(cur)
                    walk.append(cur[0])
                    cur = (cur[1], succ[cur[1]][cur[0]])
                self._register_face(walk)

    def _register_face(self, walk: list[int]) -> int:
        fid = self._next_fid
        self._next_fid += 1
        self.faces[fid] = walk
        L = len(walk)
        for i in range(L):
            self.edge_face[(walk[i], walk[(i + 1) % L])] = fid
        return fid

    def _drop_face(self, fid: int) -> None:
        del self.faces[fid]

    # -- queries -----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.rot.get(u, ())

    def degree(self, w: int) -> int:
        return len(self.rot[w])

    def face_vertices(self, fid: int) -> list[int]:
        return self.faces[fid]

    def rotations(self, order: Iterable[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.rot[w]) for w in order)

    def connected(self) -> bool:
        if not self.rot:
            return True
        it = iter(self.rot)
        start = next(it)
        seen = {start}
        stack = [start]
        while stack:
            w = stack.pop()
            for x in self.rot[w]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return len(seen) == len(self.rot)

    def triangle_third(self, fid: int, u: int, v: int) -> int:
        """Third vertex of a triangular face containing directed edge (u, v)."""
        face = self.faces[fid]
        if len(face) != 3:
            raise EmbeddingError(f"face {fid} has length {len(face)}, not 3")
        for w in face:
            if w != u and w != v:
                return w
        raise EmbeddingError(f"face {fid} is degenerate: {face}")

    # -- surgeries ---------------------------------------------------------

    def add_chord(self, fid: int, i: int, j: int) -> tuple[int, int]:
        """Split face fid with a chord between positions i < j.

        Returns (fid of face[i..j] side, fid of the complementary side).
        The chord endpoints must be distinct, non-adjacent vertices and the
        positions must not be consecutive on the face.
        """
        face = self.faces[fid]
        L = len(face)
        if not (0 <= i < j < L):
            raise EmbeddingError(f"chord positions ({i},{j}) out of order for face of length {L}")
        x, y = face[i], face[j]
        if x == y:
            raise EmbeddingError(f"chord endpoints coincide at vertex {x}")
        if j - i < 2 or (i == 0 and j == L - 1):
            raise EmbeddingError("chord positions are consecutive on the face")
        if self.has_edge(x, y):
            raise EmbeddingError(f"chord {x}-{y} already an edge")

        prev_x = face[i - 1]
        prev_y = face[j - 1]
        rx = self.rot[x]
        rx.insert(rx.index(prev_x) + 1, y)
        ry = self.rot[y]
        ry.insert(ry.index(prev_y) + 1, x)

        f1 = face[i : j + 1]          # x .. y, closed by chord (y -> x)
        f2 = face[j:] + face[: i + 1]  # y .. x, closed by chord (x -> y)
        self._drop_face(fid)
        fid1 = self._register_face(f1)
        fid2 = self._register_face(f2)
        return fid1, fid2

    def insert_vertex_in_face(self, fid: int, v: int) -> tuple[int, int, int]:
        """Insert a new vertex inside a triangular face, joined to its corners."""
        face = self.faces[fid]
        if len(face) != 3:
            raise EmbeddingError("vertex insertion needs a triangular face")
        if v in self.rot:
            raise EmbeddingError(f"vertex {v} already present")
        a, b, c = face
        self.rot[v] = [a, c, b]
        ra = self.rot[a]
        ra.insert(ra.index(c) + 1, v)
        rb = self.rot[b]
        rb.insert(rb.index(a) + 1, v)
        rc = self.rot[c]
        rc.insert(rc.index(b) + 1, v)
        self._drop_face(fid)
        return (
            self._register_face([a, b, v]),
            self._register_face([b, c, v]),
            self._register_face([c, a, v]),
        )

    def delete_edge(self, u: int, v: int) -> None:
        """Remove edge uv, merging its two faces (or splitting one, if a bridge)."""
        if not self.has_edge(u, v):
            raise EmbeddingError(f"no edge {u}-{v}")
        f1 = self.edge_face.pop((u, v))
        f2 = self.edge_face.pop((v, u))
        self.rot[u].remove(v)
        self.rot[v].remove(u)
        if f1 != f2:
            face1 = self.faces[f1]
            face2 = self.faces[f2]
            p = self._dir_index(face1, u, v)
            q = self._dir_index(face2, v, u)
            # u -> v -> A... and v -> u -> B... merge to u -> B... -> v -> A...
            a_part = face1[p + 1 :] + face1[:p]  # v, A..., (back to u)
            b_part = face2[q + 1 :] + face2[:q]  # u, B..., (back to v)
            merged = b_part + a_part
            self._drop_face(f1)
            self._drop_face(f2)
            self._register_face(merged)
        else:
            face = self.faces[f1]
            p = self._dir_index(face, u, v)
            q = self._dir_index(face, v, u)
            if p > q:
                p, q = q, p
                u, v = v, u
            side_a = face[p + 1 : q]          # v-side loop
            side_b = face[q + 1 :] + face[:p]  # u-side loop
            self._drop_face(f1)
            if not side_a or not side_b:
                raise EmbeddingError(f"deleting {u}-{v} would isolate a vertex")
            self._register_face(side_a)
            self._register_face(side_b)

    @staticmethod
    def _dir_index(face: list[int], u: int, v: int) -> int:
        L = len(face)
        for i in range(L):
            if face[i] == u and face[(i + 1) % L] == v:
                return i
        raise EmbeddingError(f"directed edge ({u},{v}) not on face {face}")

    def smooth_degree2(self, z: int) -> None:
        """Replace a degree-2 vertex z on path u-z-v by the direct edge u-v."""
        order = self.rot[z]
        if len(order) != 2:
            raise EmbeddingError(f"vertex {z} has degree {len(order)}, cannot smooth")
        u, v = order
        if u == v or self.has_edge(u, v):
            raise EmbeddingError(f"smoothing {z} would create a multi-edge {u}-{v}")
        self.rot[u][self.rot[u].index(z)] = v
        self.rot[v][self.rot[v].index(z)] = u
        for fid in {self.edge_face[(u, z)], self.edge_face[(v, z)]}:
            face = [w for w in self.faces[fid] if w != z]
            old = self.faces[fid]
            L = len(old)
            for i in range(L):
                del self.edge_face[(old[i], old[(i + 1) % L])]
            self.faces[fid] = face
            L = len(face)
            for i in range(L):
                self.edge_face[(face[i], face[(i + 1) % L])] = fid
        del self.rot[z]

    def insert_crossing(self, b: int, d: int, z: int) -> tuple[int, int]:
        """Replace edge b-d by a new edge crossing it at new vertex z.

        Both faces of b-d must be triangles; their third vertices a, c become
        the endpoints of the new edge and must be distinct and non-adjacent.
        Returns (a, c).
        """
        if z in self.rot:
            raise EmbeddingError(f"vertex {z} already present")
        if not self.has_edge(b, d):
            raise EmbeddingError(f"no edge {b}-{d}")
        f1 = self.edge_face[(b, d)]
        f2 = self.edge_face[(d, b)]
        a = self.triangle_third(f1, b, d)
        c = self.triangle_third(f2, d, b)
        if a == c:
            raise EmbeddingError(f"faces of {b}-{d} share third vertex {a}")
        if self.has_edge(a, c):
            raise EmbeddingError(f"new edge {a}-{c} already present")
        ra = self.rot[a]
        ra.insert(ra.index(d) + 1, z)
        rc = self.rot[c]
        rc.insert(rc.index(b) + 1, z)
        self.rot[b][self.rot[b].index(d)] = z
        self.rot[d][self.rot[d].index(b)] = z
        self.rot[z] = [a, d, c, b]
        self._drop_face(f1)
        self._drop_face(f2)
        for tri in ([a, b, z], [b, c, z], [c, d, z], [d, a, z]):
            self._register_face(tri)
        return a, c

    def remove_crossing(self, z: int, removed: tuple[int, int]) -> None:
        """Delete one of the two edges crossing at z; the other becomes whole."""
        x, y = removed
        order = self.rot[z]
        if len(order) != 4 or x not in order or y not in order:
            raise EmbeddingError(f"{removed} is not split at crossing {z}")
        self.delete_edge(x, z)
        self.delete_edge(z, y)
        self.smooth_degree2(z)
