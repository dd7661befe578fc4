"""Combinatorial link models for the circle families carried by Hamiltonian
cycles, theta-graphs and K4-graphs, with the triviality / unlinkedness
verdicts.

Circles come from matching edges: one circle per edge for a cycle structure;
for theta structures a cross-path edge gives one circle and a same-path edge
two; for K4 structures two and four respectively.  Linking is recorded at
the level the verdicts need: conjugated edges for cycles, the
interposed-edge pattern for theta/K4 same-path edges, and the intersecting
hub-triangle pattern (a 4-link chain) for K4 cross-path edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import embedded_graph as eg
from . import hamiltonian as ham
from .errors import WrongKind

TRIVIAL = "trivial"
UNLINKED_NONTRIVIAL = "unlinked_nontrivial"
LINKED = "linked"

HOPF_PAIR = "hopf_pair"
BORROMEAN_TRIPLE = "borromean_triple"
FOUR_CHAIN = "four_chain"


@dataclass(frozen=True)
class Circle:
    index: int
    edge: int       # matching edge id in the carrying polytope
    copy: int


@dataclass(frozen=True)
class Witness:
    kind: str
    circles: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True)
class LinkModel:
    structure: ham.HamiltonianStructure
    circles: tuple[Circle, ...]
    linking: frozenset[tuple[int, int]]   # sorted circle index pairs
    verdict: str
    witnesses: tuple[Witness, ...]

    def circles_of_edge(self, e: int) -> tuple[int, ...]:
        return tuple(c.index for c in self.circles if c.edge == e)

    def linking_degree(self, i: int) -> int:
        return sum(1 for a, b in self.linking if i in (a, b))


def _circle_multiplicity(kind: str, cross_path: bool) -> int:
    if kind == ham.CYCLE:
        return 1
    if kind == ham.THETA:
        return 1 if cross_path else 2
    return 2 if cross_path else 4


def _edge_paths(q: eg.EmbeddedGraph, s: ham.HamiltonianStructure,
                e: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """(path index, position) of both endpoints of a matching edge."""
    pv = s.path_of_vertex()
    u, v = q.edge_vertices(e)
    return pv[u], pv[v]


def _same_path_interpositions(q: eg.EmbeddedGraph, s: ham.HamiltonianStructure):
    """Pairs (E1, E2): E1 joins two vertices of one path and E2 has an
    endpoint strictly between them along that path."""
    pv = s.path_of_vertex()
    pairs = []
    for e1 in sorted(s.matching):
        (p1, i1), (p2, i2) = _edge_paths(q, s, e1)
        if p1 != p2:
            continue
        lo, hi = min(i1, i2), max(i1, i2)
        for e2 in sorted(s.matching):
            if e2 == e1:
                continue
            for (pp, ii) in _edge_paths(q, s, e2):
                if pp == p1 and lo < ii < hi:
                    pairs.append((e1, e2))
                    break
    return pairs


def _k4_vertex_of_edge(q: eg.EmbeddedGraph, s: ham.HamiltonianStructure,
                       e: int) -> int | None:
    """The hub shared by the two paths a cross-path matching edge joins,
    None for a same-path edge."""
    (p1, _), (p2, _) = _edge_paths(q, s, e)
    if p1 == p2:
        return None
    ends1 = {s.paths[p1][0], s.paths[p1][-1]}
    ends2 = {s.paths[p2][0], s.paths[p2][-1]}
    common = ends1 & ends2
    assert len(common) == 1, "two distinct paths share exactly one hub"
    return next(iter(common))


def _position_from_hub(s: ham.HamiltonianStructure, path_index: int, pos: int,
                       hub: int) -> int:
    """Distance of a path vertex from the given hub end of its path."""
    path = s.paths[path_index]
    return pos if path[0] == hub else len(path) - 1 - pos


def _k4_triangles_intersect(q: eg.EmbeddedGraph, s: ham.HamiltonianStructure,
                            e1: int, e2: int) -> bool:
    """Hub triangles of two cross-path edges with different hubs intersect
    iff on the path joining the hubs the inner segments overlap."""
    v1, v2 = _k4_vertex_of_edge(q, s, e1), _k4_vertex_of_edge(q, s, e2)
    assert v1 is not None and v2 is not None and v1 != v2
    joining = [i for i, p in enumerate(s.paths) if {p[0], p[-1]} == {v1, v2}]
    if not joining:
        return False
    pi = joining[0]
    pos1 = [_position_from_hub(s, pp, ii, v1)
            for (pp, ii) in _edge_paths(q, s, e1) if pp == pi]
    pos2 = [_position_from_hub(s, pp, ii, v1)
            for (pp, ii) in _edge_paths(q, s, e2) if pp == pi]
    if not pos1 or not pos2:
        return False
    # segment [hub1 .. x1] meets [x2 .. hub2] iff x2 is not beyond x1
    return pos2[0] < pos1[0]


def build_link(q: eg.EmbeddedGraph, s: ham.HamiltonianStructure) -> LinkModel:
    """Circles with multiplicities and the linked pairs driving the verdict."""
    pv = s.path_of_vertex()
    circles: list[Circle] = []
    for e in sorted(s.matching):
        (p1, _), (p2, _) = _edge_paths(q, s, e)
        mult = _circle_multiplicity(s.kind, p1 != p2)
        for copy in range(mult):
            circles.append(Circle(len(circles), e, copy))
    by_edge: dict[int, list[int]] = {}
    for c in circles:
        by_edge.setdefault(c.edge, []).append(c.index)

    linking: set[tuple[int, int]] = set()
    witnesses: list[Witness] = []

    if s.kind == ham.CYCLE:
        conj = ham.conjugated_edges(q, s)
        for e1, e2 in sorted(conj):
            pair = (by_edge[e1][0], by_edge[e2][0])
            linking.add(tuple(sorted(pair)))
    else:
        for e1, e2 in _same_path_interpositions(q, s):
            for c1 in by_edge[e1]:
                for c2 in by_edge[e2]:
                    linking.add(tuple(sorted((c1, c2))))
        if s.kind == ham.K4:
            cross = [e for e in sorted(s.matching)
                     if _k4_vertex_of_edge(q, s, e) is not None]
            for e1, e2 in itertools.combinations(cross, 2):
                if _k4_vertex_of_edge(q, s, e1) == _k4_vertex_of_edge(q, s, e2):
                    continue
                if _k4_triangles_intersect(q, s, e1, e2):
                    ids = tuple(by_edge[e1] + by_edge[e2])
                    for c1 in by_edge[e1]:
                        for c2 in by_edge[e2]:
                            linking.add(tuple(sorted((c1, c2))))
                    witnesses.append(Witness(FOUR_CHAIN, ids, (e1, e2)))

    verdict, extra = _classify(q, s, frozenset(linking), by_edge)
    witnesses = extra + witnesses
    return LinkModel(s, tuple(circles), frozenset(linking), verdict,
                     tuple(witnesses))


def classify_link(link: LinkModel, q: eg.EmbeddedGraph,
                  s: ham.HamiltonianStructure) -> tuple[str, tuple[Witness, ...]]:
    """Re-run the verdict computation for an existing model."""
    if link.structure.kind != s.kind:
        raise WrongKind("link model was built for a different structure kind")
    by_edge: dict[int, list[int]] = {}
    for c in link.circles:
        by_edge.setdefault(c.edge, []).append(c.index)
    return _classify(q, s, link.linking, by_edge)


def _classify(q: eg.EmbeddedGraph, s: ham.HamiltonianStructure,
              linking: frozenset[tuple[int, int]],
              by_edge: dict[int, list[int]]) -> tuple[str, list[Witness]]:
    if s.kind == ham.CYCLE:
        # every circle is linked to at least one other: take the smallest pair
        assert linking, "a Hamiltonian cycle link always contains a linked pair"
        first = min(linking)
        e1 = next(e for e, ids in by_edge.items() if first[0] in ids)
        e2 = next(e for e, ids in by_edge.items() if first[1] in ids)
        return LINKED, [Witness(HOPF_PAIR, first, (e1, e2))]

    pv = s.path_of_vertex()
    same_path = [e for e in sorted(s.matching)
                 if len({p for p, _ in _edge_paths(q, s, e)}) == 1]
    if s.kind == ham.THETA:
        unlinked = not same_path
    else:
        unlinked = not same_path and not any(
            _k4_vertex_of_edge(q, s, e1) != _k4_vertex_of_edge(q, s, e2)
            and _k4_triangles_intersect(q, s, e1, e2)
            for e1, e2 in itertools.combinations(sorted(s.matching), 2))
    if not unlinked:
        assert linking, "a structure failing the cross-path test has linked pairs"
        first = min(linking)
        e1 = next(e for e, ids in by_edge.items() if first[0] in ids)
        e2 = next(e for e, ids in by_edge.items() if first[1] in ids)
        return LINKED, [Witness(HOPF_PAIR, first, (e1, e2))]
    if ham.reduce_to_simplex(q, s).reducible:
        return TRIVIAL, []
    triples = borromean_witnesses(q, s, first_only=True)
    assert triples, "an unlinked nontrivial structure carries a Borromean triple"
    e1, e2, e3 = triples[0]
    ids = tuple(by_edge[e1] + by_edge[e2] + by_edge[e3])
    return UNLINKED_NONTRIVIAL, [Witness(BORROMEAN_TRIPLE, ids, (e1, e2, e3))]


def borromean_witnesses(q: eg.EmbeddedGraph, s: ham.HamiltonianStructure,
                        first_only: bool = False) -> list[tuple[int, int, int]]:
    """Edge triples realizing the Borromean pattern around a hub: with paths
    P1, P2, P3 oriented away from the hub, E1 joins P1 to P2, E2 joins P2 to
    P3, E3 joins P3 to P1, and each near endpoint lies strictly between the
    hub and the far endpoint of the previous edge."""
    out: list[tuple[int, int, int]] = []
    matching = sorted(s.matching)
    for hub in s.hubs:
        hub_paths = [i for i, p in enumerate(s.paths) if hub in (p[0], p[-1])]
        for trio in itertools.permutations(hub_paths, 3):
            p1, p2, p3 = trio
            for e1, e2, e3 in itertools.permutations(matching, 3):
                spans = [_edge_span(q, s, e, hub) for e in (e1, e2, e3)]
                if None in spans:
                    continue
                s1, s2, s3 = spans
                if set(s1) != {p1, p2} or set(s2) != {p2, p3} or set(s3) != {p3, p1}:
                    continue
                if (s2[p2] < s1[p2] and s3[p3] < s2[p3] and s1[p1] < s3[p1]):
                    key = tuple(sorted((e1, e2, e3)))
                    if key not in out:
                        out.append(key)
                        if first_only:
                            return out
    return sorted(set(out))


def _edge_span(q: eg.EmbeddedGraph, s: ham.HamiltonianStructure, e: int,
               hub: int) -> dict[int, int] | None:
    """{path index: distance from hub} for a cross-path edge whose two paths
    both end at the hub; None otherwise."""
    (p1, i1), (p2, i2) = _edge_paths(q, s, e)
    if p1 == p2:
        return None
    for pi in (p1, p2):
        path = s.paths[pi]
        if hub not in (path[0], path[-1]):
            return None
    return {p1: _position_from_hub(s, p1, i1, hub),
            p2: _position_from_hub(s, p2, i2, hub)}


def circle_count(p: eg.EmbeddedGraph, trail) -> int:
    """Number of circles of the link carried by an A-trail: one per vertex."""
    res = ham.split_vertices(p, trail)
    link = build_link(res.graph, res.structure)
    assert len(link.circles) == p.num_vertices
    return p.num_vertices


def to_link_json(link: LinkModel, q: eg.EmbeddedGraph,
                 with_witnesses: bool = False) -> dict:
    data = {
        "circles": [{"id": c.index,
                     "edge": sorted(q.edge_vertices(c.edge)),
                     "copy": c.copy} for c in link.circles],
        "linking": sorted(list(p) for p in link.linking),
        "verdict": link.verdict,
    }
    witnesses = link.witnesses if with_witnesses else link.witnesses[:1]
    data["witnesses"] = [{"kind": w.kind, "circles": list(w.circles),
                          "edges": [sorted(q.edge_vertices(e)) for e in w.edges]}
                         for w in witnesses]
    return data
