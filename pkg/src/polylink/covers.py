"""GF(2) vector-colorings of polytope faces, the identification complexes
they define, and GF(2) homology of those complexes.

A rank-r coloring assigns a nonzero vector of GF(2)^r to every face, the
assigned vectors spanning GF(2)^r.  The identification space takes 2^r copies
of the polytope and glues (p, a) to (p, b) whenever a - b lies in the span of
the vectors of the faces containing p.  It is a manifold exactly when at each
3-valent vertex the three incident vectors are all equal, two equal and one
different, or linearly independent; 4-valent (ideal) vertices are left out of
the complex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import embedded_graph as eg
from . import hamiltonian as ham
from .errors import InvalidColoring, KindMismatch, NonTreeComponent

CYCLE2 = "cycle2"
HAMILTONIAN3 = "hamiltonian3"
THETA4 = "theta4"
K45 = "k45"
CHECKERBOARD22 = "checkerboard22"

KINDS = (CYCLE2, HAMILTONIAN3, THETA4, K45, CHECKERBOARD22)


@dataclass(frozen=True)
class VectorColoring:
    """Face -> nonzero vector of GF(2)^rank, vectors stored as bitmasks."""

    graph: eg.EmbeddedGraph
    rank: int
    colors: tuple[int, ...]  # face index -> bitmask in 1 .. 2^rank - 1

    def vector(self, f: int) -> int:
        return self.colors[f]

    def bits(self, f: int) -> list[int]:
        return [(self.colors[f] >> i) & 1 for i in range(self.rank)]


def _span(vectors) -> set[int]:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    out = {0}
    for b in basis:
        out |= {x ^ b for x in out}
    return out


def _gf2_rank_of(vectors) -> int:
    return len(_span(vectors)).bit_length() - 1


def _components_and_trees(g: eg.EmbeddedGraph, structure_edges: frozenset[int]):
    """Split the faces along the structure edges.  Returns the list of face
    components (each a sorted tuple) joined by non-structure edges, and a
    parity 2-coloring of each component; raises NonTreeComponent when a
    component's adjacency has a cycle."""
    adj: dict[int, list[int]] = {f: [] for f in range(g.num_faces)}
    n_links = 0
    for e in g.edges:
        if e in structure_edges:
            continue
        f1, f2 = g.faces_of_edge(e)
        adj[f1].append(f2)
        adj[f2].append(f1)
        n_links += 1
    comps = []
    parities: dict[int, int] = {}
    seen: set[int] = set()
    for start in range(g.num_faces):
        if start in seen:
            continue
        comp = [start]
        parities[start] = 0
        seen.add(start)
        edges_in_comp = 0
        i = 0
        while i < len(comp):
            f = comp[i]
            i += 1
            for h in adj[f]:
                edges_in_comp += 1
                if h not in seen:
                    seen.add(h)
                    parities[h] = parities[f] ^ 1
                    comp.append(h)
                elif parities[h] == parities[f]:
                    raise NonTreeComponent(
                        f"faces {f} and {h} clash inside one disk component")
        edges_in_comp //= 2
        if edges_in_comp != len(comp) - 1:
            raise NonTreeComponent("disk component adjacency is not a tree")
        comps.append(tuple(sorted(comp)))
    return comps, parities


def make_coloring(g: eg.EmbeddedGraph, kind: str, structure=None) -> VectorColoring:
    """Build the vector-coloring of the given kind.

    cycle2          rank 2, faces colored e1/e2 by the side of a simple cycle;
    hamiltonian3    rank 3, tree 2-coloring of each disk of a Hamiltonian
                    cycle with colors e1, e2 / e3, e1+e2+e3;
    theta4, k45     rank 4/5, component colors a_i (white) and b_i = tau + a_i
                    (black) with tau = a_1 + b_1;
    checkerboard22  rank 2 from the checkerboard classes of a 4-valent graph.
    """
    if kind == CHECKERBOARD22:
        col = eg.checkerboard(g)
        colors = tuple(0b01 if c == eg.WHITE else 0b10 for c in col.color)
        return VectorColoring(g, 2, colors)

    if kind == CYCLE2:
        cycle_edges = _simple_cycle_edges(g, structure)
        comps, _ = _components_and_trees_loose(g, cycle_edges)
        if len(comps) != 2:
            raise KindMismatch("a simple cycle must leave two sides")
        colors = [0] * g.num_faces
        for i, comp in enumerate(sorted(comps)):
            for f in comp:
                colors[f] = (0b01, 0b10)[i]
        return VectorColoring(g, 2, tuple(colors))

    if kind in (HAMILTONIAN3, THETA4, K45):
        if not isinstance(structure, ham.HamiltonianStructure):
            raise KindMismatch(f"{kind} needs a Hamiltonian structure")
        want = {HAMILTONIAN3: ham.CYCLE, THETA4: ham.THETA, K45: ham.K4}[kind]
        if structure.kind != want:
            raise KindMismatch(f"{kind} needs a structure of kind {want}")
        if structure.graph is not g:
            raise KindMismatch("structure belongs to a different graph")

        comps, parity = _components_and_trees(g, structure.edges)
        k = {HAMILTONIAN3: 2, THETA4: 3, K45: 4}[kind]
        rank = k + 1
        if len(comps) != k:
            raise KindMismatch(f"{kind} expects {k} disk components, got {len(comps)}")
        comps = sorted(comps)
        colors = [0] * g.num_faces
        if kind == HAMILTONIAN3:
            pair_colors = ((0b001, 0b010), (0b100, 0b111))  # e1,e2 | e3,e1+e2+e3
            for (white, black), comp in zip(pair_colors, comps):
                root_parity = parity[comp[0]]
                for f in comp:
                    colors[f] = white if parity[f] == root_parity else black
        else:
            tau = 1 | (1 << k)  # a_1 + b_1
            for i, comp in enumerate(comps):
                a_i = 1 << i
                b_i = tau ^ a_i
                root_parity = parity[comp[0]]
                for f in comp:
                    colors[f] = a_i if parity[f] == root_parity else b_i
        return VectorColoring(g, rank, tuple(colors))

    raise KindMismatch(f"unknown coloring kind {kind!r}")


def _simple_cycle_edges(g: eg.EmbeddedGraph, structure) -> frozenset[int]:
    """Edge set of a simple cycle given either as a Hamiltonian cycle
    structure or as a cyclic vertex sequence."""
    if isinstance(structure, ham.HamiltonianStructure):
        if structure.kind != ham.CYCLE:
            raise KindMismatch("cycle2 needs a simple cycle")
        return frozenset(structure.edges)
    if structure is None:
        raise KindMismatch("cycle2 needs a simple cycle")
    seq = [int(v) for v in structure]
    if len(seq) < 3 or len(set(seq)) != len(seq):
        raise KindMismatch("cycle2 needs a simple cycle of distinct vertices")
    by_ends = {frozenset(g.edge_vertices(e)): e for e in g.edges}
    edges = set()
    for i, v in enumerate(seq):
        key = frozenset((v, seq[(i + 1) % len(seq)]))
        if key not in by_ends:
            raise KindMismatch(f"cycle step {sorted(key)} is not an edge")
        edges.add(by_ends[key])
    return frozenset(edges)


def _components_and_trees_loose(g: eg.EmbeddedGraph, structure_edges: frozenset[int]):
    """Face components across non-structure edges, without the tree check."""
    adj: dict[int, set[int]] = {f: set() for f in range(g.num_faces)}
    for e in g.edges:
        if e in structure_edges:
            continue
        f1, f2 = g.faces_of_edge(e)
        adj[f1].add(f2)
        adj[f2].add(f1)
    comps = []
    seen: set[int] = set()
    for start in range(g.num_faces):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            f = stack.pop()
            for h in adj[f]:
                if h not in seen:
                    seen.add(h)
                    comp.add(h)
                    stack.append(h)
        comps.append(tuple(sorted(comp)))
    return comps, None


@dataclass(frozen=True)
class ColoringReport:
    valid: bool
    spans: bool
    bad_vertices: tuple[int, ...]


def validate(g: eg.EmbeddedGraph, coloring: VectorColoring) -> ColoringReport:
    """Manifold condition at every 3-valent vertex plus the spanning check.
    4-valent vertices are ideal and not part of the complex, so they are
    exempt."""
    bad = []
    for v in g.vertices:
        if g.degree(v) != 3:
            continue
        a, b, c = (coloring.vector(f) for f in set(g.faces_at_vertex(v)))
        if len({a, b, c}) <= 2:
            continue  # all equal, or two equal and one different
        if _gf2_rank_of((a, b, c)) == 3:
            continue
        bad.append(v)
    spans = _gf2_rank_of(coloring.colors) == coloring.rank
    return ColoringReport(valid=not bad and spans, spans=spans,
                          bad_vertices=tuple(bad))


# -- quotient complexes -------------------------------------------------------


@dataclass
class QuotientComplex:
    """Cells of the identification space, by dimension, with GF(2) boundary
    maps.  Cells are (base cell, coset representative) pairs; 4-valent
    vertices of the base polytope are omitted."""

    rank: int
    cells: tuple[tuple, ...]          # cells[d] = list of (base, rep)
    boundaries: tuple                  # boundaries[d]: numpy (n_{d-1} x n_d)
    f_vector: tuple[int, ...]
    euler_characteristic: int
    num_components: int

    def betti(self) -> tuple[int, int, int, int]:
        return gf2_betti(self)


def _gf2_matrix_rank(m: np.ndarray) -> int:
    m = (m.copy() % 2).astype(np.uint8)
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        pivot = None
        for row in range(rank, rows):
            if m[row, col]:
                pivot = row
                break
        if pivot is None:
            continue
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        for row in range(rows):
            if row != rank and m[row, col]:
                m[row] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def build_quotient(g: eg.EmbeddedGraph, coloring: VectorColoring) -> QuotientComplex:
    """Cells of 2^rank copies of the polytope glued along face stabilizers."""
    report = validate(g, coloring)
    if not report.valid:
        raise InvalidColoring(f"coloring invalid at vertices {report.bad_vertices}"
                              if report.bad_vertices else "coloring does not span")
    r = coloring.rank
    group = range(2 ** r)

    def rep(a: int, span: set[int]) -> int:
        return min(a ^ s for s in span)

    span_face = {f: _span([coloring.vector(f)]) for f in range(g.num_faces)}
    span_edge = {}
    for e in g.edges:
        f1, f2 = g.faces_of_edge(e)
        span_edge[e] = _span([coloring.vector(f1), coloring.vector(f2)])
    span_vertex = {}
    for v in g.vertices:
        if g.degree(v) == 3:
            span_vertex[v] = _span([coloring.vector(f)
                                    for f in set(g.faces_at_vertex(v))])

    cells3 = [(None, a) for a in group]
    cells2 = sorted({(f, rep(a, span_face[f])) for f in range(g.num_faces)
                     for a in group})
    cells1 = sorted({(e, rep(a, span_edge[e])) for e in g.edges for a in group})
    cells0 = sorted({(v, rep(a, span_vertex[v])) for v in span_vertex
                     for a in group})
    idx2 = {c: i for i, c in enumerate(cells2)}
    idx1 = {c: i for i, c in enumerate(cells1)}
    idx0 = {c: i for i, c in enumerate(cells0)}

    d3 = np.zeros((len(cells2), len(cells3)), dtype=np.uint8)
    for j, (_, a) in enumerate(cells3):
        for f in range(g.num_faces):
            d3[idx2[(f, rep(a, span_face[f]))], j] ^= 1
    d2 = np.zeros((len(cells1), len(cells2)), dtype=np.uint8)
    for j, (f, a) in enumerate(cells2):
        for e in g.face_edges(f):
            d2[idx1[(e, rep(a, span_edge[e]))], j] ^= 1
    d1 = np.zeros((len(cells0), len(cells1)), dtype=np.uint8)
    for j, (e, a) in enumerate(cells1):
        for v in g.edge_vertices(e):
            if v in span_vertex:
                d1[idx0[(v, rep(a, span_vertex[v]))], j] ^= 1

    f_vector = (len(cells0), len(cells1), len(cells2), len(cells3))
    chi = f_vector[0] - f_vector[1] + f_vector[2] - f_vector[3]

    # components through 3-cell / 2-cell adjacency
    parent = list(range(len(cells3)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_two: dict[int, list[int]] = {}
    for j, (_, a) in enumerate(cells3):
        for f in range(g.num_faces):
            by_two.setdefault(idx2[(f, rep(a, span_face[f]))], []).append(j)
    for group_cells in by_two.values():
        for x in group_cells[1:]:
            rx, ry = find(x), find(group_cells[0])
            if rx != ry:
                parent[rx] = ry
    comps = len({find(i) for i in range(len(cells3))})

    return QuotientComplex(rank=r,
                           cells=(tuple(cells0), tuple(cells1),
                                  tuple(cells2), tuple(cells3)),
                           boundaries=(d1, d2, d3),
                           f_vector=f_vector,
                           euler_characteristic=chi,
                           num_components=comps)


def gf2_betti(c: QuotientComplex) -> tuple[int, int, int, int]:
    """Betti numbers over the two-element field from boundary-matrix ranks."""
    d1, d2, d3 = c.boundaries
    n0, n1, n2, n3 = c.f_vector
    r1 = _gf2_matrix_rank(d1) if d1.size else 0
    r2 = _gf2_matrix_rank(d2) if d2.size else 0
    r3 = _gf2_matrix_rank(d3) if d3.size else 0
    b0 = n0 - r1
    b1 = n1 - r1 - r2
    b2 = n2 - r2 - r3
    b3 = n3 - r3
    return (b0, b1, b2, b3)
