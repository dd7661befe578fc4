"""A-trails: Eulerian cycles in 4-valent planar graphs that never cross
themselves at a vertex.

At a 4-valent vertex with rotation (d0, d1, d2, d3) the cycle passes twice;
the two passes pair the four edge ends either as {(d0,d1),(d2,d3)} (choice 0)
or {(d1,d2),(d3,d0)} (choice 1).  The crossing pairing {(d0,d2),(d1,d3)} is
not representable.  An A-trail is a choice at every vertex whose induced
curve set is a single closed curve covering every edge once.

Also here: Eulerian theta-/K4-graphs on polytopes with two or four 3-valent
vertices (the remaining vertices 4-valent), and the flip transformation along
conjugated vertices together with its flip-graph connectivity report.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from . import embedded_graph as eg
from .errors import NotConjugated, NotFourValent, TooLarge, WrongValenceProfile

DEFAULT_MAX_SEARCH = 2 ** 24


def max_search() -> int:
    value = os.environ.get("POLYLINK_MAX_SEARCH")
    return int(value) if value else DEFAULT_MAX_SEARCH


def pairings_at(g: eg.EmbeddedGraph, v: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """The two non-crossing pairings of the darts at a 4-valent vertex."""
    d0, d1, d2, d3 = g.rotation(v)
    return (((d0, d1), (d2, d3)), ((d1, d2), (d3, d0)))


def transition_map(g: eg.EmbeddedGraph, bits: dict[int, int]) -> dict[int, int]:
    """Dart -> paired dart at the same vertex, over all 4-valent vertices."""
    m: dict[int, int] = {}
    for v, bit in bits.items():
        for a, b in pairings_at(g, v)[bit]:
            m[a] = b
            m[b] = a
    return m


def count_curves(g: eg.EmbeddedGraph, m: dict[int, int]) -> int:
    """Number of closed curves induced by a full transition map.

    The step d -> twin(m(d)) walks each curve in one direction, so the orbit
    count is twice the curve count.
    """
    seen: set[int] = set()
    orbits = 0
    for start in m:
        if start in seen:
            continue
        d = start
        while d not in seen:
            seen.add(d)
            d = g.twin(m[d])
        orbits += 1
    assert orbits % 2 == 0, "directed curve orbits must pair up"
    return orbits // 2


@dataclass(frozen=True)
class ATrail:
    """A single-curve transition system.  `bits` follow sorted vertex order."""

    graph: eg.EmbeddedGraph
    bits: tuple[int, ...]

    def bit_of(self, v: int) -> int:
        return self.bits[self.graph.vertices.index(v)]

    def bits_by_vertex(self) -> dict[int, int]:
        return dict(zip(self.graph.vertices, self.bits))

    def pairing(self, v: int) -> tuple[tuple[int, int], ...]:
        return pairings_at(self.graph, v)[self.bit_of(v)]

    def transition(self) -> dict[int, int]:
        return transition_map(self.graph, self.bits_by_vertex())

    def curve_darts(self) -> tuple[int, ...]:
        """Arrival darts along the curve, started at the smallest dart."""
        m = self.transition()
        g = self.graph
        start = min(g.darts)
        out = [start]
        d = g.twin(m[start])
        while d != start:
            out.append(d)
            d = g.twin(m[d])
        return tuple(out)

    def edge_sequence(self) -> tuple[int, ...]:
        return tuple(self.graph.edge_of(d) for d in self.curve_darts())

    def vertex_visits(self) -> tuple[int, ...]:
        return tuple(self.graph.vertex_of(d) for d in self.curve_darts())

    def is_valid(self) -> bool:
        """Independent check: one closed walk covering every edge once."""
        seq = self.edge_sequence()
        return len(seq) == self.graph.num_edges and len(set(seq)) == len(seq)


def _require_four_valent(g: eg.EmbeddedGraph) -> None:
    if not g.is_k_valent(4):
        raise NotFourValent("A-trail enumeration requires a 4-valent graph")


def count_atrails_bruteforce(g: eg.EmbeddedGraph) -> int:
    """Oracle: iterate all 2^V transition systems and count single-curve ones."""
    _require_four_valent(g)
    verts = g.vertices
    total = 0
    for bits in itertools.product((0, 1), repeat=len(verts)):
        m = transition_map(g, dict(zip(verts, bits)))
        if count_curves(g, m) == 1:
            total += 1
    return total


def _enumerate_bits(g: eg.EmbeddedGraph) -> list[tuple[int, ...]]:
    """Backtracking enumerator over transition choices, vertices in id order.

    Open arcs are tracked by an endpoint-pairing map; fixing a vertex joins
    two pairs of arc ends, and any curve that closes before the last vertex
    rules the branch out.
    """
    verts = g.vertices
    if 2 ** len(verts) > max_search():
        raise TooLarge(f"2^{len(verts)} transition systems exceed the search cap")
    choice_pairs = [pairings_at(g, v) for v in verts]
    arc = {d: g.twin(d) for d in g.darts}
    results: list[tuple[int, ...]] = []
    bits: list[int] = []
    n = len(verts)

    def join(x: int, y: int) -> tuple | None:
        """Connect arc ends x and y; returns undo record, or None if a curve closed."""
        a, b = arc[x], arc[y]
        if a == y:
            return None
        arc[a] = b
        arc[b] = a
        return (a, b, x, y)

    def undo(rec: tuple) -> None:
        a, b, x, y = rec
        arc[a] = x
        arc[b] = y

    def rec(i: int) -> None:
        if i == n:
            results.append(tuple(bits))
            return
        last = i == n - 1
        for bit in (0, 1):
            (p, q), (r, s) = choice_pairs[i][bit]
            u1 = join(p, q)
            if u1 is None:
                # first curve closed: only acceptable as the very last join,
                # which the second pair would then violate
                continue
            u2 = join(r, s)
            if u2 is None:
                if last:
                    bits.append(bit)
                    rec(i + 1)
                    bits.pop()
            else:
                if not last:
                    bits.append(bit)
                    rec(i + 1)
                    bits.pop()
                undo(u2)
            undo(u1)

    rec(0)
    return results


def _automorphism_action(g: eg.EmbeddedGraph, aut: eg.Automorphism,
                         bits: tuple[int, ...]) -> tuple[int, ...]:
    """Image of a transition system under a symmetry of the graph."""
    verts = g.vertices
    index = {v: i for i, v in enumerate(verts)}
    m = aut.as_dict()
    out = [0] * len(verts)
    for v, bit in zip(verts, bits):
        pairs = pairings_at(g, v)[bit]
        image = {frozenset((m[a], m[b])) for a, b in pairs}
        w = g.vertex_of(m[g.rotation(v)[0]])
        w_pairs = pairings_at(g, w)
        if {frozenset(p) for p in w_pairs[0]} == image:
            out[index[w]] = 0
        elif {frozenset(p) for p in w_pairs[1]} == image:
            out[index[w]] = 1
        else:
            raise AssertionError("symmetry image is not a non-crossing pairing")
    return tuple(out)


def enumerate_atrails(g: eg.EmbeddedGraph, up_to_symmetry: bool = False) -> list[ATrail]:
    """All A-trails of g in lexicographic bit order; optionally one
    representative (the lexicographically smallest) per symmetry orbit."""
    _require_four_valent(g)
    all_bits = _enumerate_bits(g)
    if not up_to_symmetry:
        return [ATrail(g, b) for b in all_bits]
    auts = eg.automorphisms(g)
    reps = []
    for b in all_bits:
        if all(_automorphism_action(g, a, b) >= b for a in auts):
            reps.append(b)
    return [ATrail(g, b) for b in reps]


def atrail_orbits(g: eg.EmbeddedGraph) -> list[list[tuple[int, ...]]]:
    """Symmetry orbits of all A-trails, each orbit sorted, orbits sorted by
    smallest member."""
    _require_four_valent(g)
    all_bits = set(_enumerate_bits(g))
    auts = eg.automorphisms(g)
    orbits = []
    remaining = set(all_bits)
    while remaining:
        b = min(remaining)
        orbit = {_automorphism_action(g, a, b) for a in auts}
        if not orbit <= all_bits:
            raise AssertionError("symmetry image of an A-trail is not an A-trail")
        orbits.append(sorted(orbit))
        remaining -= orbit
    return orbits


def to_medial_hamiltonian(g: eg.EmbeddedGraph, trail: ATrail) -> tuple[int, ...]:
    """Edge sequence of the trail read as a vertex cycle of medial(g)."""
    return trail.edge_sequence()


def is_hamiltonian_cycle(h: eg.EmbeddedGraph, seq: tuple[int, ...]) -> bool:
    """Standalone verifier: seq visits every vertex of h once, consecutive
    vertices adjacent, and closes up."""
    if len(seq) != h.num_vertices or set(seq) != set(h.vertices):
        return False
    return all(seq[(i + 1) % len(seq)] in h.neighbors(seq[i]) for i in range(len(seq)))


def conjugated_vertices(g: eg.EmbeddedGraph, trail: ATrail, v: int) -> set[int]:
    """Vertices whose two curve visits interleave with the visits of v."""
    visits = trail.vertex_visits()
    pos: dict[int, list[int]] = {}
    for i, w in enumerate(visits):
        pos.setdefault(w, []).append(i)
    p1, p2 = pos[v]
    out = set()
    for w, (q1, q2) in pos.items():
        if w == v:
            continue
        if (p1 < q1 < p2) != (p1 < q2 < p2):
            out.add(w)
    return out


def flip(g: eg.EmbeddedGraph, trail: ATrail, v: int, w: int) -> ATrail:
    """Complement the pairing at a conjugated vertex pair; yields an A-trail."""
    if w not in conjugated_vertices(g, trail, v):
        raise NotConjugated(f"vertices {v} and {w} are not conjugated along this trail")
    index = {u: i for i, u in enumerate(g.vertices)}
    bits = list(trail.bits)
    bits[index[v]] ^= 1
    bits[index[w]] ^= 1
    new = ATrail(g, tuple(bits))
    assert new.is_valid(), "flip along a conjugated pair must stay a single curve"
    return new


def flip_components(g: eg.EmbeddedGraph) -> dict:
    """Connected components of the flip graph on all labeled A-trails."""
    _require_four_valent(g)
    trails = [ATrail(g, b) for b in _enumerate_bits(g)]
    index = {t.bits: i for i, t in enumerate(trails)}
    parent = list(range(len(trails)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vlist = g.vertices
    vindex = {v: i for i, v in enumerate(vlist)}
    edge_count = 0
    for t in trails:
        for v in vlist:
            for w in conjugated_vertices(g, t, v):
                if w <= v:
                    continue
                bits = list(t.bits)
                bits[vindex[v]] ^= 1
                bits[vindex[w]] ^= 1
                other = index.get(tuple(bits))
                assert other is not None, "flip image must be an A-trail"
                back = ATrail(g, tuple(bits))
                if v in conjugated_vertices(g, back, w) or w in conjugated_vertices(g, back, v):
                    ra, rb = find(index[t.bits]), find(other)
                    edge_count += 1
                    if ra != rb:
                        parent[ra] = rb
    comps: dict[int, int] = {}
    for i in range(len(trails)):
        root = find(i)
        comps[root] = comps.get(root, 0) + 1
    sizes = sorted(comps.values(), reverse=True)
    return {
        "num_atrails": len(trails),
        "num_components": len(sizes),
        "component_sizes": sizes,
        "conjecture_holds": len(sizes) <= 1,
    }


# -- Eulerian theta- and K4-graphs ----------------------------------------

THETA = "theta"
K4 = "k4"


@dataclass(frozen=True)
class EulerStructure:
    """Eulerian theta-/K4-graph: arcs between 3-valent hubs covering every
    edge exactly once, turning (never crossing) at each 4-valent vertex."""

    graph: eg.EmbeddedGraph
    kind: str
    bits: tuple[int, ...]  # transition choices at sorted 4-valent vertices
    arcs: tuple[tuple[int, ...], ...]  # dart walks, hub dart first

    @property
    def hubs(self) -> tuple[int, ...]:
        return tuple(sorted(v for v in self.graph.vertices if self.graph.degree(v) == 3))

    def arc_endpoints(self) -> tuple[tuple[int, int], ...]:
        g = self.graph
        return tuple((g.vertex_of(a[0]), g.vertex_of(g.twin(a[-1]))) for a in self.arcs)

    def arc_edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.graph.edge_of(d) for d in arc) for arc in self.arcs)


def _trace_arcs(g: eg.EmbeddedGraph, m: dict[int, int],
                hub_darts: set[int]) -> list[tuple[int, ...]] | None:
    """Arcs from hub dart to hub dart; None if any closed curve remains."""
    arcs = []
    used: set[int] = set()
    for start in sorted(hub_darts):
        if start in used:
            continue
        walk = [start]
        used.add(start)
        d = g.twin(start)
        while d not in hub_darts:
            d = m[d]
            walk.append(d)
            d = g.twin(d)
        used.add(d)
        arcs.append(tuple(walk))
    if sum(len(a) for a in arcs) != g.num_edges:
        return None
    return arcs


def enumerate_euler_theta_k4(g: eg.EmbeddedGraph, kind: str) -> list[EulerStructure]:
    """All nonselfcrossing Eulerian theta- (or K4-) graphs on a polytope with
    exactly two (or four) 3-valent vertices, all other vertices 4-valent."""
    want_hubs = {THETA: 2, K4: 4}[kind]
    hubs = sorted(v for v in g.vertices if g.degree(v) == 3)
    four = sorted(v for v in g.vertices if g.degree(v) == 4)
    if len(hubs) != want_hubs or len(hubs) + len(four) != g.num_vertices:
        raise WrongValenceProfile(
            f"need exactly {want_hubs} 3-valent vertices and the rest 4-valent")
    if 2 ** len(four) > max_search():
        raise TooLarge(f"2^{len(four)} transition systems exceed the search cap")
    hub_darts = {d for v in hubs for d in g.rotation(v)}
    want_pairs = {frozenset(p) for p in itertools.combinations(hubs, 2)}
    out = []
    for bits in itertools.product((0, 1), repeat=len(four)):
        m = transition_map(g, dict(zip(four, bits)))
        arcs = _trace_arcs(g, m, hub_darts)
        if arcs is None:
            continue
        ends = [frozenset((g.vertex_of(a[0]), g.vertex_of(g.twin(a[-1])))) for a in arcs]
        if any(len(e) != 2 for e in ends):
            continue
        if kind == THETA:
            ok = all(e == frozenset(hubs) for e in ends)
        else:
            ok = sorted(ends, key=sorted) == sorted(want_pairs, key=sorted)
        if ok:
            out.append(EulerStructure(g, kind, bits, tuple(arcs)))
    return out
