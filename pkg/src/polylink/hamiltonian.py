"""Hamiltonian cycles, theta-graphs and K4-graphs on simple 3-polytopes,
vertex splitting along A-trails and the inverse matching contraction,
quadrangle shrinking, conjugated edges, vertex cut-offs and the reduction
of theta/K4 structures to the simplex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import atrails as at
from . import embedded_graph as eg
from .errors import (BadFace, DegenerateContraction, NotHub, NotSimplePolytope,
                     OverlappingQuadrangles)

CYCLE = "cycle"
THETA = "theta"
K4 = "k4"

_HUB_COUNT = {CYCLE: 0, THETA: 2, K4: 4}


@dataclass(frozen=True)
class HamiltonianStructure:
    """Spanning cycle, theta-graph or K4-graph together with the complementary
    matching.  Paths are vertex lists; for a cycle there is a single closed
    path, for theta/K4 each path runs from hub to hub."""

    graph: eg.EmbeddedGraph
    kind: str
    hubs: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    edges: frozenset[int]
    matching: frozenset[int]

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(self.graph.edge_vertices(e))) for e in self.edges)

    def matching_list(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(self.graph.edge_vertices(e))) for e in self.matching)

    def cycle_order(self) -> tuple[int, ...]:
        assert self.kind == CYCLE
        return self.paths[0]

    def path_of_vertex(self) -> dict[int, tuple[int, int]]:
        """Non-hub vertex -> (path index, position along the path)."""
        out: dict[int, tuple[int, int]] = {}
        for pi, path in enumerate(self.paths):
            inner = path if self.kind == CYCLE else path[1:-1]
            offset = 0 if self.kind == CYCLE else 1
            for i, v in enumerate(inner):
                out[v] = (pi, i + offset)
        return out


def _require_simple_polytope(g: eg.EmbeddedGraph) -> None:
    if not g.is_k_valent(3) or not eg.is_polytopal(g).verdict:
        raise NotSimplePolytope("operation requires a simple (3-valent) polytopal graph")


def structure_from_matching(g: eg.EmbeddedGraph, matching: frozenset[int],
                            kind: str) -> HamiltonianStructure | None:
    """Interpret the complement of a matching as a structure of the given
    kind; None when the complement is not of that kind."""
    covered: set[int] = set()
    for e in matching:
        u, v = g.edge_vertices(e)
        if u in covered or v in covered:
            return None
        covered.update((u, v))
    hubs = tuple(sorted(v for v in g.vertices if v not in covered))
    if len(hubs) != _HUB_COUNT[kind]:
        return None
    struct_edges = frozenset(g.edges) - matching

    adj: dict[int, list[int]] = {v: [] for v in g.vertices}
    for e in struct_edges:
        u, v = g.edge_vertices(e)
        adj[u].append(v)
        adj[v].append(u)

    if kind == CYCLE:
        start = g.vertices[0]
        cyc = [start]
        prev = None
        cur = start
        while True:
            nbrs = [w for w in adj[cur] if w != prev]
            if not nbrs:
                return None
            # at degree-2 vertices the non-previous neighbor is unique, except
            # at the start where either direction works
            nxt = min(nbrs)
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        if len(cyc) != g.num_vertices:
            return None
        return HamiltonianStructure(g, CYCLE, (), (tuple(cyc),),
                                    struct_edges, matching)

    # theta / K4: walk paths from each hub
    paths: list[tuple[int, ...]] = []
    used_dirs: set[tuple[int, int]] = set()
    for h in hubs:
        for first in adj[h]:
            if (h, first) in used_dirs:
                continue
            path = [h, first]
            used_dirs.add((h, first))
            prev, cur = h, first
            while cur not in hubs:
                nbrs = [w for w in adj[cur] if w != prev]
                if len(nbrs) != 1:
                    return None
                path.append(nbrs[0])
                prev, cur = cur, nbrs[0]
            used_dirs.add((cur, prev))
            paths.append(tuple(path))
    if len(paths) != {THETA: 3, K4: 6}[kind]:
        return None
    covered_edges = sum(len(p) - 1 for p in paths)
    if covered_edges != len(struct_edges):
        return None  # leftover cycles not reachable from hubs
    ends = [frozenset((p[0], p[-1])) for p in paths]
    if any(len(e) != 2 for e in ends):
        return None
    if kind == THETA:
        if any(e != frozenset(hubs) for e in ends):
            return None
    else:
        want = {frozenset(p) for p in itertools.combinations(hubs, 2)}
        if sorted(map(sorted, ends)) != sorted(map(sorted, want)):
            return None
    paths = [p if p[0] < p[-1] else tuple(reversed(p)) for p in paths]
    paths.sort()
    return HamiltonianStructure(g, kind, hubs, tuple(paths), struct_edges, matching)


def _quadrangle_condition(g: eg.EmbeddedGraph, s: HamiltonianStructure) -> bool:
    quads = [f for f in range(g.num_faces) if g.face_degree(f) == 4]
    if s.kind == CYCLE:
        for f in quads:
            if sum(1 for e in g.face_edges(f) if e in s.edges) != 3:
                return False
        return True
    # theta / K4: every quadrangle must meet a matching edge at a vertex
    matched_vertices = {v for e in s.matching for v in g.edge_vertices(e)}
    for f in quads:
        if not set(g.face_vertices(f)) & matched_vertices:
            return False
    if _looks_like_p8(g):
        pp = _pentagon_pentagon_edges(g)
        if not pp & s.matching:
            return False
    return True


def _looks_like_p8(g: eg.EmbeddedGraph) -> bool:
    from . import catalog
    return catalog.is_p8(g)


def _pentagon_pentagon_edges(g: eg.EmbeddedGraph) -> frozenset[int]:
    out = set()
    for e in g.edges:
        f1, f2 = g.faces_of_edge(e)
        if g.face_degree(f1) == 5 and g.face_degree(f2) == 5:
            out.add(e)
    return frozenset(out)


def _enumerate_matchings(g: eg.EmbeddedGraph, hubs: tuple[int, ...]):
    """All matchings covering exactly the non-hub vertices, in a fixed
    deterministic order (lowest uncovered vertex matched first)."""
    hub_set = set(hubs)
    verts = [v for v in g.vertices if v not in hub_set]
    chosen: list[int] = []

    def rec(covered: set[int]):
        free = [v for v in verts if v not in covered]
        if not free:
            yield frozenset(chosen)
            return
        v = free[0]
        for d in g.rotation(v):
            w = g.vertex_of(g.twin(d))
            if w in covered or w in hub_set or w == v:
                continue
            e = g.edge_of(d)
            chosen.append(e)
            covered.update((v, w))
            yield from rec(covered)
            covered.difference_update((v, w))
            chosen.pop()

    yield from rec(set())


def enumerate_hamiltonian(g: eg.EmbeddedGraph, kind: str,
                          up_to_symmetry: bool = False,
                          quad_condition: bool = False) -> list[HamiltonianStructure]:
    """All Hamiltonian structures of the given kind, found as complements of
    matchings that miss exactly the hubs."""
    _require_simple_polytope(g)
    structures: list[HamiltonianStructure] = []
    seen: set[frozenset[int]] = set()
    if kind == CYCLE:
        hub_choices = [()]
    else:
        hub_choices = list(itertools.combinations(g.vertices, _HUB_COUNT[kind]))
    for hubs in hub_choices:
        for matching in _enumerate_matchings(g, hubs):
            if matching in seen:
                continue
            seen.add(matching)
            s = structure_from_matching(g, matching, kind)
            if s is None:
                continue
            if quad_condition and not _quadrangle_condition(g, s):
                continue
            structures.append(s)
    structures.sort(key=lambda s: sorted(s.edges))
    if not up_to_symmetry:
        return structures
    auts = eg.automorphisms(g)
    edge_maps = []
    for a in auts:
        m = a.as_dict()
        edge_maps.append({e: g.edge_of(m[e]) for e in g.edges})
    reps = []
    for s in structures:
        key = tuple(sorted(s.edges))
        if all(tuple(sorted(em[e] for e in s.edges)) >= key for em in edge_maps):
            reps.append(s)
    return reps


# -- vertex splitting and matching contraction ----------------------------


@dataclass(frozen=True)
class SplitResult:
    graph: eg.EmbeddedGraph
    structure: HamiltonianStructure
    vertex_edges: dict[int, int]  # original vertex -> new matching edge id


def split_vertices(p: eg.EmbeddedGraph,
                   gamma: at.ATrail | at.EulerStructure) -> SplitResult:
    """Substitute every 4-valent vertex by an edge separating its two curve
    strands: a vertex with rotation (d0,d1,d2,d3) and pairing {(d0,d1),(d2,d3)}
    becomes vertices (d0,d1,n1) and (d2,d3,n2) joined by the new edge {n1,n2}.
    3-valent vertices (hubs of Eulerian theta/K4 structures) are kept."""
    if isinstance(gamma, at.ATrail):
        bits = gamma.bits_by_vertex()
        kind = CYCLE
    else:
        four = sorted(v for v in p.vertices if p.degree(v) == 4)
        bits = dict(zip(four, gamma.bits))
        kind = gamma.kind

    rotations: dict[int, tuple[int, ...]] = {}
    twin = p.twin_map
    next_dart = max(p.darts) + 1
    next_vertex = 0
    vertex_edges: dict[int, int] = {}
    for v in p.vertices:
        if v in bits:
            (a, b), (c, d) = at.pairings_at(p, v)[bits[v]]
            n1, n2 = next_dart, next_dart + 1
            next_dart += 2
            rotations[next_vertex] = (a, b, n1)
            rotations[next_vertex + 1] = (c, d, n2)
            next_vertex += 2
            twin[n1] = n2
            twin[n2] = n1
            vertex_edges[v] = n1
        else:
            rotations[next_vertex] = p.rotation(v)
            next_vertex += 1
    q = eg.EmbeddedGraph(rotations, twin)
    matching = frozenset(vertex_edges.values())
    s = structure_from_matching(q, matching, kind)
    assert s is not None, "vertex splitting must yield a structure of the same kind"
    return SplitResult(q, s, vertex_edges)


@dataclass(frozen=True)
class ContractionResult:
    graph: eg.EmbeddedGraph
    pairings: dict[int, tuple[tuple[int, int], tuple[int, int]]]  # merged vertex -> strands
    kind: str

    def induced_atrail(self) -> at.ATrail:
        assert self.kind == CYCLE
        bits = self._bits()
        return at.ATrail(self.graph, tuple(bits[v] for v in self.graph.vertices))

    def induced_euler_structure(self) -> at.EulerStructure:
        assert self.kind in (THETA, K4)
        g = self.graph
        bits = self._bits()
        four = sorted(v for v in g.vertices if g.degree(v) == 4)
        bit_vec = tuple(bits[v] for v in four)
        m = at.transition_map(g, {v: bits[v] for v in four})
        hub_darts = {d for v in g.vertices if g.degree(v) == 3 for d in g.rotation(v)}
        arcs = at._trace_arcs(g, m, hub_darts)
        assert arcs is not None
        return at.EulerStructure(g, self.kind, bit_vec, tuple(arcs))

    def _bits(self) -> dict[int, int]:
        g = self.graph
        bits = {}
        for v, pairs in self.pairings.items():
            options = at.pairings_at(g, v)
            want = {frozenset(x) for x in pairs}
            if {frozenset(x) for x in options[0]} == want:
                bits[v] = 0
            else:
                assert {frozenset(x) for x in options[1]} == want
                bits[v] = 1
        return bits


def contract_matching(q: eg.EmbeddedGraph, s: HamiltonianStructure) -> ContractionResult:
    """Shrink every matching edge to a point.  Each contracted edge yields a
    4-valent vertex whose curve strands are the two merged corners; hub
    vertices of theta/K4 structures stay 3-valent.  Raises
    DegenerateContraction when a bigon (multi-edge) would appear."""
    rotations = {}
    twin = q.twin_map
    pairings = {}
    merged = {}
    next_vertex = 0
    matched: dict[int, int] = {}
    for e in sorted(s.matching):
        matched[q.vertex_of(e)] = e
        matched[q.vertex_of(q.twin(e))] = e
    for v in q.vertices:
        if v not in matched:
            rotations[next_vertex] = q.rotation(v)
            next_vertex += 1
            continue
        e = matched[v]
        if e in merged:
            continue
        d1, d2 = e, q.twin(e)
        u1, u2 = q.vertex_of(d1), q.vertex_of(d2)
        r1 = _rotation_from(q.rotation(u1), d1)
        r2 = _rotation_from(q.rotation(u2), d2)
        rotations[next_vertex] = tuple(r1 + r2)
        pairings[next_vertex] = (tuple(r1), tuple(r2))
        merged[e] = next_vertex
        next_vertex += 1
        del twin[d1]
        del twin[d2]
    g = eg.EmbeddedGraph(rotations, twin)
    bad = g.multi_edge_pairs()
    if bad:
        raise DegenerateContraction(f"contraction produces a bigon at edges {bad[0]}")
    return ContractionResult(g, pairings, s.kind)


def _rotation_from(rot: tuple[int, ...], skip: int) -> list[int]:
    """Darts of a cyclic rotation starting after `skip`, with `skip` removed."""
    i = rot.index(skip)
    return list(rot[i + 1:] + rot[:i])


# -- quadrangle shrinking and vertex cutting ------------------------------


def shrink_quadrangles(q: eg.EmbeddedGraph) -> eg.EmbeddedGraph:
    """Contract every quadrangular face of a simple polytope to a 4-valent
    vertex (inverse of cutting off 4-valent vertices)."""
    _require_simple_polytope(q)
    quads = [f for f in range(q.num_faces) if q.face_degree(f) == 4]
    seen_vertices: set[int] = set()
    for f in quads:
        vs = set(q.face_vertices(f))
        if vs & seen_vertices:
            raise OverlappingQuadrangles("quadrangles share a vertex")
        seen_vertices |= vs
    rotations = {}
    twin = q.twin_map
    next_vertex = 0
    for v in q.vertices:
        if v not in seen_vertices:
            rotations[next_vertex] = q.rotation(v)
            next_vertex += 1
    for f in quads:
        outward = []
        for d in q.face_darts(f):
            v = q.vertex_of(d)
            others = [x for x in q.rotation(v)
                      if x != d and q.edge_of(x) not in q.face_edges(f)]
            assert len(others) == 1
            outward.append(others[0])
        for d in q.face_darts(f):
            del twin[d]
            del twin[q.twin(d)]
        # face walk is clockwise, reverse for a counterclockwise rotation
        rotations[next_vertex] = tuple(reversed(outward))
        next_vertex += 1
    return eg.EmbeddedGraph(rotations, twin)


def _cut_vertex_rotation(g: eg.EmbeddedGraph, v: int, next_dart: int):
    """Replace vertex v by a |deg(v)|-gon.  Returns (new rotations keyed by
    corner index, new twin pairs, next free dart).  Corner i keeps dart r[i]
    and gains ring darts toward corners i+1 and i-1."""
    rot = g.rotation(v)
    k = len(rot)
    ring_next = {}
    ring_prev = {}
    for i in range(k):
        ring_next[i] = next_dart
        ring_prev[(i + 1) % k] = next_dart + 1
        next_dart += 2
    corners = {}
    pairs = []
    for i in range(k):
        corners[i] = (rot[i], ring_next[i], ring_prev[i])
        pairs.append((ring_next[i], ring_prev[(i + 1) % k]))
    return corners, pairs, next_dart


def cut_ideal_vertices(p: eg.EmbeddedGraph) -> eg.EmbeddedGraph:
    """Cut off every 4-valent vertex, leaving a quadrangle in its place;
    3-valent vertices are kept.  Inverse of shrink_quadrangles."""
    rotations = {}
    twin = p.twin_map
    next_vertex = 0
    next_dart = max(p.darts) + 1
    for v in p.vertices:
        if p.degree(v) != 4:
            rotations[next_vertex] = p.rotation(v)
            next_vertex += 1
            continue
        corners, pairs, next_dart = _cut_vertex_rotation(p, v, next_dart)
        for i in sorted(corners):
            rotations[next_vertex] = corners[i]
            next_vertex += 1
        for a, b in pairs:
            twin[a] = b
            twin[b] = a
    return eg.EmbeddedGraph(rotations, twin)


def cut_vertex(q: eg.EmbeddedGraph, s: HamiltonianStructure, v: int,
               face: int) -> tuple[eg.EmbeddedGraph, HamiltonianStructure]:
    """Cut off a hub of a theta/K4 structure, replacing it by a triangle.
    The triangle edge facing the chosen face joins the matching; the other
    two extend the structure's paths, and the corner opposite the chosen
    face becomes the new hub."""
    if s.kind not in (THETA, K4) or v not in s.hubs:
        raise NotHub(f"vertex {v} is not a hub of the structure")
    if face not in q.faces_at_vertex(v):
        raise BadFace(f"face {face} is not incident to vertex {v}")
    rot = q.rotation(v)
    rotations = q.rotations
    del rotations[v]
    twin = q.twin_map
    next_vertex = max(q.vertices) + 1
    corners, pairs, _ = _cut_vertex_rotation(q, v, max(q.darts) + 1)
    corner_vertex = {}
    for i in sorted(corners):
        rotations[next_vertex] = corners[i]
        corner_vertex[i] = next_vertex
        next_vertex += 1
    for a, b in pairs:
        twin[a] = b
        twin[b] = a
    g2 = eg.EmbeddedGraph(rotations, twin)
    # the corner of dart rot[i] lies in face_of_dart(rot[i]); the ring edge
    # between corners i and i+1 borders that face
    i = next(i for i, d in enumerate(rot) if q.face_of_dart(d) == face)
    ca, cb = corner_vertex[i], corner_vertex[(i + 1) % len(rot)]
    new_matching_edge = next(e for e in g2.edges_at(ca)
                             if set(g2.edge_vertices(e)) == {ca, cb})
    matching = set()
    for e in s.matching:
        matching.add(e)  # dart ids of old edges survive the surgery
    matching.add(new_matching_edge)
    s2 = structure_from_matching(g2, frozenset(matching), s.kind)
    assert s2 is not None, "cutting a hub must preserve the structure kind"
    return g2, s2


# -- conjugated edges and the reduction to the simplex ---------------------


def conjugated_edges(q: eg.EmbeddedGraph,
                     s: HamiltonianStructure) -> set[tuple[int, int]]:
    """Matching-edge pairs whose endpoints interleave along the cycle."""
    assert s.kind == CYCLE
    order = {v: i for i, v in enumerate(s.cycle_order())}
    pairs = set()
    matching = sorted(s.matching)
    for e1, e2 in itertools.combinations(matching, 2):
        if _interleaves(order, q.edge_vertices(e1), q.edge_vertices(e2)):
            pairs.add((e1, e2))
    return pairs


def _interleaves(order: dict[int, int], e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    a, b = sorted((order[e1[0]], order[e1[1]]))
    c, d = order[e2[0]], order[e2[1]]
    return (a < c < b) != (a < d < b)


@dataclass(frozen=True)
class ReduceReport:
    reducible: bool
    steps: tuple[tuple[tuple[int, int], int], ...]  # ((u,v) shrunk edge, hub)
    final_graph: eg.EmbeddedGraph
    final_structure: HamiltonianStructure


def _reduction_candidates(q: eg.EmbeddedGraph, s: HamiltonianStructure) -> list[tuple[int, int]]:
    """Matching edges whose endpoints form a triangular face with a hub."""
    out = []
    triangles = [set(q.face_vertices(f)) for f in range(q.num_faces)
                 if q.face_degree(f) == 3]
    for e in sorted(s.matching):
        u, v = q.edge_vertices(e)
        for h in s.hubs:
            if {u, v, h} in triangles:
                out.append((e, h))
                break
    return out


def _shrink_hub_triangle(q: eg.EmbeddedGraph, s: HamiltonianStructure,
                         e: int, h: int) -> tuple[eg.EmbeddedGraph, HamiltonianStructure]:
    """Inverse of cut_vertex: delete the matching edge e and smooth its two
    endpoints into the paths through the hub h."""
    x, y = q.edge_vertices(e)
    rotations = q.rotations
    twin = q.twin_map
    del twin[e]
    del twin[q.twin(e)]
    for z in (x, y):
        rot = [d for d in rotations[z] if d not in (e, q.twin(e))]
        assert len(rot) == 2
        a, b = rot
        ta, tb = twin[a], twin[b]
        twin[ta] = tb
        twin[tb] = ta
        del twin[a]
        del twin[b]
        del rotations[z]
    g2 = eg.EmbeddedGraph(rotations, twin)
    matching = frozenset(x for x in s.matching if x != e)
    s2 = structure_from_matching(g2, matching, s.kind)
    assert s2 is not None
    return g2, s2


def reduce_to_simplex(q: eg.EmbeddedGraph, s: HamiltonianStructure) -> ReduceReport:
    """Greedy reduction: repeatedly shrink the lowest-id matching edge that
    forms a triangle with a hub.  Reducible means the process reaches the
    simplex with its theta-graph (one missing edge) or its full K4-graph."""
    assert s.kind in (THETA, K4)
    steps = []
    while True:
        if q.num_vertices == 4:
            base = len(s.matching) == (1 if s.kind == THETA else 0)
            return ReduceReport(base, tuple(steps), q, s)
        cands = _reduction_candidates(q, s)
        if not cands:
            return ReduceReport(False, tuple(steps), q, s)
        e, h = cands[0]
        uv = tuple(sorted(q.edge_vertices(e)))
        q, s = _shrink_hub_triangle(q, s, e, h)
        steps.append((uv, h))


# -- serialization ---------------------------------------------------------

HSTRUCTURE_FORMAT = "hstructure-v1"


def to_structure_json(s: HamiltonianStructure) -> dict:
    return {
        "format": HSTRUCTURE_FORMAT,
        "kind": s.kind,
        "hubs": list(s.hubs),
        "edges": [list(p) for p in s.edge_list()],
    }


def from_structure_json(g: eg.EmbeddedGraph, data: dict) -> HamiltonianStructure:
    if not isinstance(data, dict) or data.get("format") != HSTRUCTURE_FORMAT:
        raise NotSimplePolytope(f"expected a {HSTRUCTURE_FORMAT} document")
    want = {frozenset(p) for p in data["edges"]}
    struct_edges = {e for e in g.edges if frozenset(g.edge_vertices(e)) in want}
    if len(struct_edges) != len(data["edges"]):
        raise NotSimplePolytope("structure edges do not match the graph")
    matching = frozenset(g.edges) - frozenset(struct_edges)
    s = structure_from_matching(g, matching, data["kind"])
    if s is None:
        raise NotSimplePolytope("edge list is not a structure of the declared kind")
    return s
