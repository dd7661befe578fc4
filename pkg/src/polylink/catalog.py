"""Named polytope generators, belt detection, polytope-class predicates and
edge-twist operations generating ideal right-angled polytopes.

A k-belt is a cyclic sequence of k faces in which consecutive faces are
adjacent, non-consecutive faces are not, and no three faces share a vertex.
Pogorelov polytopes are simple, different from the simplex, with no 3- or
4-belts; almost Pogorelov polytopes allow 4-belts only around quadrangles.
Ideal right-angled polytopes are 4-valent polytopal graphs that are medial
graphs, i.e. their checkerboard demedial is again polytopal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import atrails as at
from . import embedded_graph as eg
from . import hamiltonian as ham
from .errors import (BadParameter, NotApplicable, NotSimplePolytope,
                     ResultNotIdealRA, UnknownName)


# -- generators ------------------------------------------------------------


def _prism_faces(k: int) -> list[tuple[int, ...]]:
    bottom = tuple(range(k))
    top = tuple(reversed(range(k, 2 * k)))
    sides = [(i, k + i, k + (i + 1) % k, (i + 1) % k) for i in range(k)]
    return [bottom, top] + sides


def _antiprism_faces(k: int) -> list[tuple[int, ...]]:
    bottom = tuple(range(k))
    top = tuple(reversed(range(k, 2 * k)))
    tris = []
    for i in range(k):
        tris.append(((i + 1) % k, i, k + i))
        tris.append((k + i, k + (i + 1) % k, (i + 1) % k))
    return [bottom, top] + tris


def _icosahedron() -> eg.EmbeddedGraph:
    faces = _antiprism_faces(5)
    bottom, top = faces[0], faces[1]
    capped = list(faces[2:])
    for i in range(5):
        u, v = bottom[i], bottom[(i + 1) % 5]
        capped.append((u, v, 10))
    for i in range(5):
        u, v = top[i], top[(i + 1) % 5]
        capped.append((u, v, 11))
    return eg.from_faces(capped)


@lru_cache(maxsize=None)
def _p8() -> eg.EmbeddedGraph:
    """The 8-faced simple polytope obtained by splitting the octahedron along
    the A-trail whose result carries a nontrivial 4-belt of pentagons."""
    octa = generate("antiprism:3")
    hits = []
    for trail in at.enumerate_atrails(octa, up_to_symmetry=True):
        q = ham.split_vertices(octa, trail).graph
        belts = [b for b in k_belts(q, 4)
                 if all(q.face_degree(f) == 5 for f in b.faces) and not b.trivial]
        if belts:
            hits.append(q)
    assert len(hits) == 1, "exactly one octahedron splitting has the pentagon belt"
    return hits[0]


@lru_cache(maxsize=None)
def generate(name: str) -> eg.EmbeddedGraph:
    """Canonical embedded graph of a named polytope.

    Names: simplex, cube, prism:k, antiprism:k, dodecahedron, permutohedron, P8.
    """
    if name == "simplex":
        return eg.from_faces([(0, 1, 2), (0, 2, 3), (0, 3, 1), (2, 1, 3)])
    if name == "cube":
        return eg.from_faces(_prism_faces(4))
    if name == "dodecahedron":
        return eg.dual(_icosahedron())
    if name == "permutohedron":
        return ham.cut_ideal_vertices(generate("antiprism:3"))
    if name == "P8":
        return _p8()
    if ":" in name:
        kind, _, arg = name.partition(":")
        try:
            k = int(arg)
        except ValueError:
            raise BadParameter(f"bad parameter in {name!r}") from None
        if k < 3:
            raise BadParameter(f"{kind} parameter must be at least 3, got {k}")
        if kind == "prism":
            return eg.from_faces(_prism_faces(k))
        if kind == "antiprism":
            return eg.from_faces(_antiprism_faces(k))
    raise UnknownName(f"unknown polytope name {name!r}")


GENERATOR_NAMES = ("simplex", "cube", "prism:k", "antiprism:k",
                   "dodecahedron", "permutohedron", "P8")


# -- belts -------------------------------------------------------------------


@dataclass(frozen=True)
class Belt:
    """Cyclic face sequence with the two complementary sides attached."""

    faces: tuple[int, ...]
    sides: tuple[tuple[int, ...], tuple[int, ...]]
    trivial: bool                 # some side is a single face
    surrounds_quadrangle: bool    # some side is a single quadrangle


def _face_data(g: eg.EmbeddedGraph):
    n = g.num_faces
    vsets = [set(g.face_vertices(f)) for f in range(n)]
    adj = [set() for _ in range(n)]
    for e in g.edges:
        f1, f2 = g.faces_of_edge(e)
        adj[f1].add(f2)
        adj[f2].add(f1)
    return vsets, adj


def _belt_ok(seq: tuple[int, ...], vsets, adj) -> bool:
    k = len(seq)
    for i, j in itertools.combinations(range(k), 2):
        consecutive = (j - i == 1) or (i == 0 and j == k - 1)
        if consecutive != (seq[j] in adj[seq[i]]):
            return False
    for trio in itertools.combinations(seq, 3):
        if vsets[trio[0]] & vsets[trio[1]] & vsets[trio[2]]:
            return False
    return True


def _belt_sides(g: eg.EmbeddedGraph, seq: tuple[int, ...], adj):
    belt = set(seq)
    rest = [f for f in range(g.num_faces) if f not in belt]
    comps = []
    left = set(rest)
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            f = stack.pop()
            for h in adj[f]:
                if h in left and h not in comp:
                    comp.add(h)
                    stack.append(h)
        comps.append(tuple(sorted(comp)))
        left -= comp
    comps.sort()
    assert len(comps) == 2, "a belt separates the sphere into two sides"
    return tuple(comps)


def k_belts(g: eg.EmbeddedGraph, k: int) -> list[Belt]:
    """All k-belts of a simple polytopal graph, deduplicated up to rotation
    and reflection of the cyclic sequence."""
    if not g.is_k_valent(3) or not eg.is_polytopal(g).verdict:
        raise NotSimplePolytope("belt search requires a simple polytopal graph")
    vsets, adj = _face_data(g)
    found: set[tuple[int, ...]] = set()
    out: list[Belt] = []

    def extend(seq: list[int]) -> None:
        if len(seq) == k:
            if seq[0] in adj[seq[-1]]:
                t = tuple(seq)
                if _belt_ok(t, vsets, adj):
                    key = eg._normalize_cycle(t)
                    if key not in found:
                        found.add(key)
                        sides = _belt_sides(g, t, adj)
                        trivial = any(len(s) == 1 for s in sides)
                        quad = any(len(s) == 1 and g.face_degree(s[0]) == 4
                                   for s in sides)
                        out.append(Belt(key, sides, trivial, quad))
            return
        for f in sorted(adj[seq[-1]]):
            if f > seq[0] and f not in seq:
                seq.append(f)
                extend(seq)
                seq.pop()

    for start in range(g.num_faces):
        extend([start])
    out.sort(key=lambda b: b.faces)
    return out


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class PolytopeClassReport:
    simple: bool
    four_valent: bool
    pogorelov: bool
    almost_pogorelov: bool
    ideal_right_angled: bool
    is_P8: bool
    witnesses: dict


@lru_cache(maxsize=None)
def _p8_code() -> tuple:
    return eg.canonical_code(_p8())


def is_p8(g: eg.EmbeddedGraph) -> bool:
    if g.num_vertices != 12 or g.num_faces != 8 or not g.is_k_valent(3):
        return False
    return eg.canonical_code(g) == _p8_code()


def classify(g: eg.EmbeddedGraph) -> PolytopeClassReport:
    """All polytope-class flags with witnesses for failures."""
    simple = g.is_k_valent(3)
    four_valent = g.is_k_valent(4)
    witnesses: dict = {}
    pogorelov = almost = False
    if simple and eg.is_polytopal(g).verdict and g.num_vertices > 4:
        b3 = k_belts(g, 3)
        b4 = k_belts(g, 4)
        pogorelov = not b3 and not b4
        almost = not b3 and all(b.surrounds_quadrangle for b in b4)
        if b3:
            witnesses["three_belt"] = b3[0].faces
        bad4 = [b for b in b4 if not b.surrounds_quadrangle]
        if bad4:
            witnesses["non_quadrangle_four_belt"] = bad4[0].faces
    ideal_ra = False
    if four_valent and eg.is_polytopal(g).verdict:
        try:
            dm = eg.demedial(g, eg.BLACK)
        except Exception as exc:  # demedial surfaces loops/odd data
            witnesses["demedial_error"] = type(exc).__name__
        else:
            report = eg.is_polytopal(dm)
            ideal_ra = report.verdict
            if not report.verdict:
                witnesses["demedial_not_polytopal"] = report
    return PolytopeClassReport(simple=simple, four_valent=four_valent,
                               pogorelov=pogorelov, almost_pogorelov=almost,
                               ideal_right_angled=ideal_ra, is_P8=is_p8(g),
                               witnesses=witnesses)


# -- edge twists --------------------------------------------------------------


def edge_twist(g: eg.EmbeddedGraph, face: int, e1: int, e2: int) -> eg.EmbeddedGraph:
    """Replace two disjoint edges on the boundary of a face by a new 4-valent
    vertex joined to their four endpoints.

    The new spokes are embedded in the region freed by the removed edges, so
    the result stays planar with V+1 vertices, E+2 edges and F+1 faces.  The
    result is checked to be ideal right-angled again."""
    face_edge_set = set(g.face_edges(face))
    if e1 == e2 or e1 not in face_edge_set or e2 not in face_edge_set:
        raise NotApplicable("both edges must lie on the boundary of the face")
    ends1, ends2 = g.edge_vertices(e1), g.edge_vertices(e2)
    if len({*ends1, *ends2}) != 4:
        raise NotApplicable("the four endpoints must be distinct")

    # boundary cyclic order of the four endpoints: a, b around e1 and c, d
    # around e2 in face-walk order
    walk = g.face_darts(face)
    d1 = next(d for d in walk if g.edge_of(d) == e1)
    d2 = next(d for d in walk if g.edge_of(d) == e2)
    a, b = g.vertex_of(d1), g.vertex_of(g.twin(d1))
    c, dd = g.vertex_of(d2), g.vertex_of(g.twin(d2))

    rotations = g.rotations
    twin = g.twin_map
    next_dart = max(g.darts) + 1
    spokes = []
    for old_dart, vert in ((d1, a), (g.twin(d1), b), (d2, c), (g.twin(d2), dd)):
        spoke_out = next_dart        # at the old vertex, replaces old_dart
        spoke_in = next_dart + 1     # at the new vertex
        next_dart += 2
        rot = list(rotations[vert])
        rot[rot.index(old_dart)] = spoke_out
        rotations[vert] = tuple(rot)
        twin[spoke_out] = spoke_in
        twin[spoke_in] = spoke_out
        spokes.append(spoke_in)
    for d in (d1, g.twin(d1), d2, g.twin(d2)):
        del twin[d]
    sa, sb, sc, sd = spokes
    w = max(g.vertices) + 1
    # walk order around the freed region is a, b, ..., c, d, so the spokes
    # alternate strands: (a, b, c, d) around the new vertex
    rotations[w] = (sa, sb, sc, sd)
    result = eg.EmbeddedGraph(rotations, twin)
    report = classify(result)
    if not report.ideal_right_angled:
        raise ResultNotIdealRA(
            f"edge twist at face {face}, edges {e1},{e2} left the class")
    return result


def twist_positions(g: eg.EmbeddedGraph, face: int,
                    restricted: bool = False) -> list[tuple[int, int]]:
    """Edge pairs on the face boundary eligible for a twist.  Restricted
    twists take edges separated by exactly one boundary edge, so the four
    endpoints are consecutive along the walk."""
    walk = g.face_darts(face)
    n = len(walk)
    edges = [g.edge_of(d) for d in walk]
    verts = [g.vertex_of(d) for d in walk]
    out = []
    for i in range(n):
        js = [(i + 2) % n] if restricted else range(i + 2, n)
        for j in js:
            if i == j or (i == 0 and j == n - 1):
                continue
            four = {verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]}
            if len(four) == 4 and edges[i] != edges[j]:
                pair = tuple(sorted((edges[i], edges[j])))
                if pair not in out:
                    out.append(pair)
    return sorted(set(out))


def ideal_ra_family(max_vertices: int) -> list[eg.EmbeddedGraph]:
    """Antiprisms plus the restricted-edge-twist closure of the 4-antiprism,
    up to the vertex bound, deduplicated by canonical code."""
    if max_vertices < 6:
        raise BadParameter("max_vertices must be at least 6")
    out: dict[tuple, eg.EmbeddedGraph] = {}
    for k in range(3, max_vertices // 2 + 1):
        a = generate(f"antiprism:{k}")
        out[eg.canonical_code(a)] = a
    stack = [generate("antiprism:4")] if max_vertices >= 8 else []
    visited = {eg.canonical_code(x) for x in stack}
    while stack:
        g = stack.pop()
        if g.num_vertices + 1 > max_vertices:
            continue
        for face in range(g.num_faces):
            for e1, e2 in twist_positions(g, face, restricted=True):
                h = edge_twist(g, face, e1, e2)
                code = eg.canonical_code(h)
                if code not in visited:
                    visited.add(code)
                    out.setdefault(code, h)
                    stack.append(h)
    family = sorted(out.values(), key=lambda x: (x.num_vertices, eg.canonical_code(x)))
    assert all(classify(x).ideal_right_angled for x in family)
    return family
