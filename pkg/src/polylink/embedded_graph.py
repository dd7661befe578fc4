"""Planar rotation systems: embedded graphs, duality, medial graphs, symmetry.

An embedded graph is a set of darts (edge ends, nonnegative integers), a
fixed-point-free involution ``twin`` pairing the two darts of every edge, and
a counterclockwise cyclic dart order around every vertex.  Faces are the
orbits of the face walk ``d -> next dart clockwise after twin(d) around the
far vertex``; every constructed graph must satisfy V - E + F = 2, i.e. be a
connected embedding in the sphere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DanglingDart, EulerViolation, LoopEdge, OddVertex

WHITE = "white"
BLACK = "black"


class EmbeddedGraph:
    """Immutable planar embedded multigraph given by rotations and twins."""

    __slots__ = ("_rotations", "_twin", "_vertex_of", "_sigma", "_sigma_inv",
                 "_faces", "_face_of_dart", "_edges")

    def __init__(self, rotations: Mapping[int, Sequence[int]], twin: Mapping[int, int]):
        rot: dict[int, tuple[int, ...]] = {}
        vertex_of: dict[int, int] = {}
        for v, darts in rotations.items():
            darts = tuple(int(d) for d in darts)
            if not darts:
                raise DanglingDart(f"vertex {v} has an empty rotation")
            if len(set(darts)) != len(darts):
                raise DanglingDart(f"vertex {v} repeats a dart in its rotation")
            for d in darts:
                if d in vertex_of:
                    raise DanglingDart(f"dart {d} appears at two vertices")
                vertex_of[d] = v
            # normalize the cyclic tuple to start at its smallest dart
            k = darts.index(min(darts))
            rot[int(v)] = darts[k:] + darts[:k]

        tw = {int(a): int(b) for a, b in twin.items()}
        if set(tw) != set(vertex_of):
            missing = set(vertex_of) ^ set(tw)
            raise DanglingDart(f"twin involution and rotations disagree on darts {sorted(missing)[:6]}")
        for d, e in tw.items():
            if d == e:
                raise DanglingDart(f"dart {d} is its own twin")
            if tw.get(e) != d:
                raise DanglingDart(f"twin is not an involution at dart {d}")
            if vertex_of[d] == vertex_of[e]:
                raise LoopEdge(f"edge {{{d},{e}}} has both ends at vertex {vertex_of[d]}")

        self._rotations = rot
        self._twin = tw
        self._vertex_of = vertex_of

        sigma: dict[int, int] = {}
        for darts in rot.values():
            for i, d in enumerate(darts):
                sigma[d] = darts[(i + 1) % len(darts)]
        self._sigma = sigma
        self._sigma_inv = {b: a for a, b in sigma.items()}

        # faces: orbits of phi(d) = sigma^-1(twin(d))
        faces: list[tuple[int, ...]] = []
        face_of: dict[int, int] = {}
        seen: set[int] = set()
        for start in sorted(sigma):
            if start in seen:
                continue
            cycle = []
            d = start
            while True:
                cycle.append(d)
                seen.add(d)
                d = self._sigma_inv[tw[d]]
                if d == start:
                    break
            faces.append(tuple(cycle))
        faces.sort(key=lambda c: c[0])
        for i, cycle in enumerate(faces):
            for d in cycle:
                face_of[d] = i
        self._faces = tuple(faces)
        self._face_of_dart = face_of
        self._edges = tuple(sorted(d for d in tw if d < tw[d]))

        self._check_connected()
        if self.num_vertices - self.num_edges + self.num_faces != 2:
            raise EulerViolation(
                f"V-E+F = {self.num_vertices}-{self.num_edges}+{self.num_faces} != 2")

    def _check_connected(self) -> None:
        darts = self._sigma
        if not darts:
            raise EulerViolation("empty graph")
        start = next(iter(darts))
        stack = [start]
        seen = {start}
        while stack:
            d = stack.pop()
            for n in (self._sigma[d], self._twin[d]):
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        if len(seen) != len(darts):
            raise EulerViolation("graph is not connected")

    # -- basic accessors ------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._rotations))

    @property
    def darts(self) -> tuple[int, ...]:
        return tuple(sorted(self._twin))

    @property
    def edges(self) -> tuple[int, ...]:
        """Edge ids: the smaller dart of each twin pair."""
        return self._edges

    @property
    def num_vertices(self) -> int:
        return len(self._rotations)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def num_faces(self) -> int:
        return len(self._faces)

    @property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Dart cycles of all faces, sorted by smallest dart."""
        return self._faces

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rotations[v]

    @property
    def rotations(self) -> dict[int, tuple[int, ...]]:
        return dict(self._rotations)

    @property
    def twin_map(self) -> dict[int, int]:
        return dict(self._twin)

    def twin(self, d: int) -> int:
        return self._twin[d]

    def sigma(self, d: int) -> int:
        return self._sigma[d]

    def sigma_inv(self, d: int) -> int:
        return self._sigma_inv[d]

    def phi(self, d: int) -> int:
        """Face walk: next dart clockwise after twin(d) at the far vertex."""
        return self._sigma_inv[self._twin[d]]

    def vertex_of(self, d: int) -> int:
        return self._vertex_of[d]

    def degree(self, v: int) -> int:
        return len(self._rotations[v])

    def edge_of(self, d: int) -> int:
        t = self._twin[d]
        return d if d < t else t

    def edge_vertices(self, e: int) -> tuple[int, int]:
        return (self._vertex_of[e], self._vertex_of[self._twin[e]])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self._vertex_of[self._twin[d]] for d in self._rotations[v])

    def edges_at(self, v: int) -> tuple[int, ...]:
        return tuple(self.edge_of(d) for d in self._rotations[v])

    def face_of_dart(self, d: int) -> int:
        return self._face_of_dart[d]

    def face_darts(self, f: int) -> tuple[int, ...]:
        return self._faces[f]

    def face_degree(self, f: int) -> int:
        return len(self._faces[f])

    def face_edges(self, f: int) -> tuple[int, ...]:
        return tuple(self.edge_of(d) for d in self._faces[f])

    def face_vertices(self, f: int) -> tuple[int, ...]:
        return tuple(self._vertex_of[d] for d in self._faces[f])

    def faces_of_edge(self, e: int) -> tuple[int, int]:
        return (self._face_of_dart[e], self._face_of_dart[self._twin[e]])

    def faces_at_vertex(self, v: int) -> tuple[int, ...]:
        """Faces around v in rotation order (corner of dart d belongs to face_of_dart(d))."""
        return tuple(self._face_of_dart[d] for d in self._rotations[v])

    def is_k_valent(self, k: int) -> bool:
        return all(len(r) == k for r in self._rotations.values())

    def multi_edge_pairs(self) -> list[tuple[int, int]]:
        """Pairs of distinct edge ids joining the same two vertices."""
        by_ends: dict[frozenset[int], list[int]] = {}
        for e in self._edges:
            by_ends.setdefault(frozenset(self.edge_vertices(e)), []).append(e)
        out = []
        for group in by_ends.values():
            if len(group) > 1:
                out.extend((group[i], group[i + 1]) for i in range(len(group) - 1))
        return out

    def __repr__(self) -> str:  # pragma: no cover
        return (f"EmbeddedGraph(V={self.num_vertices}, E={self.num_edges}, "
                f"F={self.num_faces})")


def build(vertex_rotations: Sequence[Sequence[int]] | Mapping[int, Sequence[int]],
          twin_pairs: Iterable[Sequence[int]]) -> EmbeddedGraph:
    """Build and validate an embedded graph from rotation data and twin pairs."""
    if isinstance(vertex_rotations, Mapping):
        rotations = dict(vertex_rotations)
    else:
        rotations = {i: tuple(r) for i, r in enumerate(vertex_rotations)}
    twin: dict[int, int] = {}
    for pair in twin_pairs:
        a, b = pair
        if a in twin or b in twin:
            raise DanglingDart(f"dart {a if a in twin else b} appears in two twin pairs")
        twin[a] = b
        twin[b] = a
    return EmbeddedGraph(rotations, twin)


def from_faces(face_cycles: Sequence[Sequence[int]]) -> EmbeddedGraph:
    """Build a graph from consistently oriented face cycles (vertex lists).

    Every directed edge (u, v) must appear in exactly one face.  Dart ids are
    2i/2i+1 in sorted undirected-edge order.
    """
    directed: dict[tuple[int, int], int] = {}
    und_edges: set[tuple[int, int]] = set()
    for face in face_cycles:
        n = len(face)
        for i in range(n):
            u, v = face[i], face[(i + 1) % n]
            if u == v:
                raise LoopEdge(f"face {face} repeats vertex {u} consecutively")
            if (u, v) in directed:
                raise EulerViolation(f"directed edge {(u, v)} appears in two faces")
            directed[(u, v)] = -1
            und_edges.add((min(u, v), max(u, v)))
    for u, v in und_edges:
        if (v, u) not in directed:
            raise EulerViolation(f"edge {(u, v)} is traversed only one way")
    dart_id: dict[tuple[int, int], int] = {}
    twin: dict[int, int] = {}
    for i, (u, v) in enumerate(sorted(und_edges)):
        dart_id[(u, v)] = 2 * i
        dart_id[(v, u)] = 2 * i + 1
        twin[2 * i] = 2 * i + 1
        twin[2 * i + 1] = 2 * i

    # at vertex v, the successor of dart (v -> u) is (v -> w) where some face
    # contains the corner (u, v, w)
    nxt: dict[int, int] = {}
    for face in face_cycles:
        n = len(face)
        for i in range(n):
            u, v, w = face[i], face[(i + 1) % n], face[(i + 2) % n]
            nxt[dart_id[(v, u)]] = dart_id[(v, w)]

    rotations: dict[int, list[int]] = {}
    placed: set[int] = set()
    for (u, v), d in sorted(dart_id.items()):
        if d in placed:
            continue
        cycle = []
        cur = d
        while cur not in placed:
            cycle.append(cur)
            placed.add(cur)
            cur = nxt[cur]
        if cur != d:
            raise EulerViolation(f"rotation at vertex {u} does not close up")
        if u in rotations:
            raise EulerViolation(f"vertex {u} has a disconnected corner cycle")
        rotations[u] = cycle

    g = EmbeddedGraph(rotations, twin)
    # the face walk of the built graph must reproduce the input faces
    want = {_normalize_cycle(tuple(f)) for f in face_cycles}
    got = {_normalize_cycle(g.face_vertices(f)) for f in range(g.num_faces)}
    if want != got:
        raise EulerViolation("face walks of the built graph differ from the input faces")
    return g


def _normalize_cycle(seq: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical representative of a cyclic sequence up to rotation and reversal."""
    best = None
    for s in (seq, tuple(reversed(seq))):
        for k in range(len(s)):
            cand = s[k:] + s[:k]
            if best is None or cand < best:
                best = cand
    return best


# -- duality and medial constructions -----------------------------------


def dual(g: EmbeddedGraph) -> EmbeddedGraph:
    """Dual embedded graph: vertices are the faces of g, dart ids preserved."""
    rotations = {f: g.face_darts(f) for f in range(g.num_faces)}
    return EmbeddedGraph(rotations, g.twin_map)


def medial(g: EmbeddedGraph) -> EmbeddedGraph:
    """Medial graph: one 4-valent vertex per edge of g, vertex ids = edge ids.

    For each dart d of g the medial edge {2d, 2*phi(d)+1} joins the midpoints
    of edge_of(d) and edge_of(phi(d)) inside their common face.
    """
    twin = {}
    for d in g.darts:
        twin[2 * d] = 2 * g.phi(d) + 1
        twin[2 * g.phi(d) + 1] = 2 * d
    rotations = {}
    for e in g.edges:
        d, d2 = e, g.twin(e)
        rotations[e] = (2 * d, 2 * d2 + 1, 2 * d2, 2 * d + 1)
    return EmbeddedGraph(rotations, twin)


@dataclass(frozen=True)
class FaceColoring2:
    """Checkerboard coloring of the faces of an even-valence graph."""

    graph: EmbeddedGraph
    color: tuple[str, ...]  # face index -> WHITE / BLACK

    def faces_of(self, c: str) -> tuple[int, ...]:
        return tuple(f for f, col in enumerate(self.color) if col == c)


def checkerboard(g: EmbeddedGraph) -> FaceColoring2:
    """2-color the faces so adjacent faces differ; the face containing the
    smallest dart is white."""
    for v in g.vertices:
        if g.degree(v) % 2:
            raise OddVertex(f"vertex {v} has odd degree {g.degree(v)}")
    color: dict[int, str] = {0: WHITE}
    stack = [0]
    while stack:
        f = stack.pop()
        for e in g.face_edges(f):
            a, b = g.faces_of_edge(e)
            other = b if a == f else a
            want = BLACK if color[f] == WHITE else WHITE
            if other not in color:
                color[other] = want
                stack.append(other)
            elif color[other] != want:
                raise OddVertex("face adjacency is not 2-colorable")
    return FaceColoring2(g, tuple(color[f] for f in range(g.num_faces)))


def demedial(g: EmbeddedGraph, color_class: str = BLACK,
             coloring: FaceColoring2 | None = None) -> EmbeddedGraph:
    """Inverse medial construction.

    Vertices of the result are the faces of the chosen checkerboard class;
    edges are the (4-valent) vertices of g.  The corner of dart x lies in
    face_of_dart(x); the two corners of each class at a vertex of g become
    the two darts of the corresponding new edge.
    """
    if not g.is_k_valent(4):
        raise OddVertex("demedial requires a 4-valent graph")
    col = coloring if coloring is not None else checkerboard(g)
    chosen = {f for f, c in enumerate(col.color) if c == color_class}
    twin: dict[int, int] = {}
    for v in g.vertices:
        marked = [d for d in g.rotation(v) if g.face_of_dart(d) in chosen]
        if len(marked) != 2:
            raise OddVertex(f"vertex {v} does not have two corners of class {color_class}")
        a, b = marked
        twin[a] = b
        twin[b] = a
    rotations = {}
    for f in chosen:
        # the face walk runs clockwise around the face, so reverse it to get
        # a counterclockwise rotation at the new vertex
        rotations[f] = tuple(reversed(g.face_darts(f)))
    return EmbeddedGraph(rotations, twin)


# -- symmetries ----------------------------------------------------------

ORIENT_PRESERVING = "preserving"
ORIENT_REVERSING = "reversing"


@dataclass(frozen=True)
class Automorphism:
    """Combinatorial symmetry: a dart bijection commuting with the twin map
    and mapping rotations to rotations (reversed when orientation-reversing)."""

    dart_map: tuple[tuple[int, int], ...]
    orientation: str

    def as_dict(self) -> dict[int, int]:
        return dict(self.dart_map)

    def apply_dart(self, d: int) -> int:
        return dict(self.dart_map)[d]


def _propagate(g: EmbeddedGraph, base: int, image: int, orient: int) -> dict[int, int] | None:
    """Extend base -> image to a full automorphism, or return None."""
    sig = g.sigma if orient > 0 else g.sigma_inv
    m = {base: image}
    stack = [base]
    while stack:
        d = stack.pop()
        for src, dst in ((g.sigma(d), sig(m[d])), (g.twin(d), g.twin(m[d]))):
            if src in m:
                if m[src] != dst:
                    return None
            else:
                m[src] = dst
                stack.append(src)
    if len(set(m.values())) != len(m):
        return None
    return m


def automorphisms(g: EmbeddedGraph) -> list[Automorphism]:
    """The full combinatorial symmetry group, reflections included."""
    base = g.darts[0]
    out = []
    for orient in (1, -1):
        for image in g.darts:
            m = _propagate(g, base, image, orient)
            if m is not None:
                out.append(Automorphism(
                    tuple(sorted(m.items())),
                    ORIENT_PRESERVING if orient > 0 else ORIENT_REVERSING))
    return out


def canonical_code(g: EmbeddedGraph,
                   edge_classes: Mapping[int, int] | None = None) -> tuple:
    """Isomorphism invariant: minimal BFS relabeling over all starting darts
    and both orientations.  Optional edge classes refine the code (isomorphism
    then has to preserve the classes)."""
    darts = g.darts
    n = len(darts)
    cls = None
    if edge_classes is not None:
        cls = {d: edge_classes.get(g.edge_of(d), 0) for d in darts}
    best = None
    for orient in (1, -1):
        sig = g.sigma if orient > 0 else g.sigma_inv
        for start in darts:
            label = {start: 0}
            order = [start]
            i = 0
            while i < len(order):
                d = order[i]
                for nx in (sig(d), g.twin(d)):
                    if nx not in label:
                        label[nx] = len(order)
                        order.append(nx)
                i += 1
            if cls is None:
                code = tuple((label[sig(d)], label[g.twin(d)]) for d in order)
            else:
                code = tuple((label[sig(d)], label[g.twin(d)], cls[d]) for d in order)
            if best is None or code < best:
                best = code
    return (n,) + best


def isomorphic(g: EmbeddedGraph, h: EmbeddedGraph) -> bool:
    return canonical_code(g) == canonical_code(h)


# -- polytopality --------------------------------------------------------


@dataclass(frozen=True)
class PolytopalityReport:
    simple_graph: bool
    three_connected: bool
    planar: bool
    verdict: bool
    multi_edges: tuple[tuple[int, int], ...] = ()


def _connected_without(g: EmbeddedGraph, removed: set[int]) -> bool:
    left = [v for v in g.vertices if v not in removed]
    if not left:
        return True
    seen = {left[0]}
    stack = [left[0]]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(left)


def is_polytopal(g: EmbeddedGraph) -> PolytopalityReport:
    """Steinitz check: simple (no multi-edges; loops are impossible after
    build), planar (guaranteed by construction), and 3-connected."""
    multi = tuple(g.multi_edge_pairs())
    simple = not multi
    three = g.num_vertices >= 4
    if three:
        verts = g.vertices
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                if not _connected_without(g, {a, b}):
                    three = False
                    break
            if not three:
                break
    return PolytopalityReport(simple_graph=simple, three_connected=three,
                              planar=True, verdict=simple and three,
                              multi_edges=multi)


# -- serialization -------------------------------------------------------

PGRAPH_FORMAT = "pgraph-v1"


def to_pgraph(g: EmbeddedGraph) -> dict:
    return {
        "format": PGRAPH_FORMAT,
        "vertices": [{"id": v, "rotation": list(g.rotation(v))} for v in g.vertices],
        "twins": [[e, g.twin(e)] for e in g.edges],
    }


def from_pgraph(data: dict) -> EmbeddedGraph:
    if not isinstance(data, dict) or data.get("format") != PGRAPH_FORMAT:
        raise DanglingDart(f"expected a {PGRAPH_FORMAT} document")
    rotations = {int(v["id"]): tuple(v["rotation"]) for v in data["vertices"]}
    return build(rotations, data["twins"])


def dumps(g: EmbeddedGraph) -> str:
    return json.dumps(to_pgraph(g), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> EmbeddedGraph:
    return from_pgraph(json.loads(text))


def to_dot(g: EmbeddedGraph) -> str:
    """DOT export of the 1-skeleton, faces listed as comments."""
    lines = ["graph {"]
    for f in range(g.num_faces):
        cyc = " -- ".join(str(v) for v in g.face_vertices(f))
        lines.append(f"  // face {f}: {cyc}")
    for e in g.edges:
        u, v = g.edge_vertices(e)
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
