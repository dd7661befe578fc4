import json
import os
import random

import pytest

from polylink import atrails as at
from polylink import catalog as cat
from polylink import embedded_graph as eg
from polylink import hamiltonian as ham
from polylink.errors import (BadFace, DegenerateContraction, NotHub,
                             NotSimplePolytope, OverlappingQuadrangles)

import oracles

FIXTURES = json.load(open(os.path.join(os.path.dirname(__file__),
                                       "data", "derived_fixtures.json")))


def all_cross_path(s):
    pv = s.path_of_vertex()
    g = s.graph
    return all(pv[g.edge_vertices(e)[0]][0] != pv[g.edge_vertices(e)[1]][0]
               for e in s.matching)


def test_dodecahedron_unique_hamiltonian_cycle(dodecahedron):
    assert len(ham.enumerate_hamiltonian(dodecahedron, ham.CYCLE,
                                         up_to_symmetry=True)) == 1


def test_cube_and_prism5_no_quad_condition_cycles(cube):
    assert ham.enumerate_hamiltonian(cube, ham.CYCLE, quad_condition=True) == []
    prism5 = cat.generate("prism:5")
    assert ham.enumerate_hamiltonian(prism5, ham.CYCLE, quad_condition=True) == []


def test_p8_unique_quad_condition_cycle(p8):
    found = ham.enumerate_hamiltonian(p8, ham.CYCLE, up_to_symmetry=True,
                                      quad_condition=True)
    assert len(found) == 1


def test_labeled_cycle_counts_frozen(cube, dodecahedron, p8):
    assert len(ham.enumerate_hamiltonian(cube, ham.CYCLE)) == 6
    assert len(ham.enumerate_hamiltonian(dodecahedron, ham.CYCLE)) == 30
    assert len(ham.enumerate_hamiltonian(p8, ham.CYCLE)) == 7
    assert FIXTURES["hamiltonian_cycles_labeled"] == {
        "cube": 6, "dodecahedron": 30, "P8": 7}


def test_enumeration_matches_edge_subset_oracle(simplex, cube, p8):
    for g in (simplex, cube, p8):
        for kind in (ham.CYCLE, ham.THETA, ham.K4):
            got = len(ham.enumerate_hamiltonian(g, kind))
            assert got == oracles.count_structures_bruteforce(g, kind)


def test_enumeration_requires_simple_polytope(a4):
    with pytest.raises(NotSimplePolytope):
        ham.enumerate_hamiltonian(a4, ham.CYCLE)


def test_structure_invariants(cube):
    for kind in (ham.CYCLE, ham.THETA, ham.K4):
        for s in ham.enumerate_hamiltonian(cube, kind):
            covered = {v for e in s.matching for v in cube.edge_vertices(e)}
            assert covered == set(cube.vertices) - set(s.hubs)
            assert s.edges | s.matching == set(cube.edges)
            assert not (s.edges & s.matching)
            if kind == ham.CYCLE:
                assert len(covered) == cube.num_vertices


def test_orbit_sizes_divide_group_order(cube):
    auts = eg.automorphisms(cube)
    structures = ham.enumerate_hamiltonian(cube, ham.THETA)
    keys = {tuple(sorted(s.edges)) for s in structures}
    edge_maps = [{e: cube.edge_of(a.as_dict()[e]) for e in cube.edges}
                 for a in auts]
    seen = set()
    orbit_sizes = []
    for key in sorted(keys):
        if key in seen:
            continue
        orbit = {tuple(sorted(em[e] for e in key)) for em in edge_maps}
        assert orbit <= keys
        orbit_sizes.append(len(orbit))
        seen |= orbit
    assert sum(orbit_sizes) == len(structures) == FIXTURES["cube_theta_counts"]["labeled"]
    assert len(orbit_sizes) == FIXTURES["cube_theta_counts"]["up_to_symmetry"]
    assert all(len(auts) % s == 0 for s in orbit_sizes)


def test_split_vertices_octahedron(octahedron):
    t = at.enumerate_atrails(octahedron)[0]
    res = ham.split_vertices(octahedron, t)
    assert res.graph.num_vertices == 12
    assert res.graph.num_faces == 8
    assert res.graph.is_k_valent(3)
    assert eg.is_polytopal(res.graph).verdict
    assert res.structure.kind == ham.CYCLE
    assert len(res.structure.cycle_order()) == 12
    assert res.structure.matching == frozenset(res.vertex_edges.values())


def test_one_octahedron_splitting_is_p8(octahedron, p8):
    trails = at.enumerate_atrails(octahedron, up_to_symmetry=True)
    hits = [t for t in trails
            if eg.isomorphic(ham.split_vertices(octahedron, t).graph, p8)]
    assert len(hits) == 1


def test_split_contract_roundtrip_exact():
    for name in ("antiprism:3", "antiprism:4", "antiprism:5"):
        p = cat.generate(name)
        for t in at.enumerate_atrails(p):
            res = ham.split_vertices(p, t)
            back = ham.contract_matching(res.graph, res.structure)
            assert back.graph.rotations == p.rotations
            assert back.graph.twin_map == p.twin_map
            assert eg.canonical_code(back.graph) == eg.canonical_code(p)
            assert back.induced_atrail().bits == t.bits


def test_split_polytopal_for_all_a5_trails(a5):
    for t in at.enumerate_atrails(a5):
        res = ham.split_vertices(a5, t)
        assert res.graph.is_k_valent(3)
        assert eg.is_polytopal(res.graph).verdict


def test_contract_cube_cycle_degenerate(cube):
    for s in ham.enumerate_hamiltonian(cube, ham.CYCLE):
        with pytest.raises(DegenerateContraction):
            ham.contract_matching(cube, s)


def test_contract_simplex_cycle_degenerate(simplex):
    for s in ham.enumerate_hamiltonian(simplex, ham.CYCLE):
        with pytest.raises(DegenerateContraction):
            ham.contract_matching(simplex, s)


def test_contract_dodecahedron_cycle_ideal_ra(dodecahedron):
    s = ham.enumerate_hamiltonian(dodecahedron, ham.CYCLE)[0]
    res = ham.contract_matching(dodecahedron, s)
    assert res.graph.num_vertices == 10
    assert res.graph.is_k_valent(4)
    assert cat.classify(res.graph).ideal_right_angled
    assert res.induced_atrail().is_valid()


def test_contract_cube_theta_is_bipyramid(cube):
    thetas = [s for s in ham.enumerate_hamiltonian(cube, ham.THETA)
              if all_cross_path(s)]
    res = ham.contract_matching(cube, thetas[0])
    assert sorted(res.graph.degree(v) for v in res.graph.vertices) == [3, 3, 4, 4, 4]
    es = res.induced_euler_structure()
    assert es.kind == ham.THETA
    back = ham.split_vertices(res.graph, es)
    assert eg.isomorphic(back.graph, cube)


def test_quad_condition_transport(permutohedron):
    """Through quadrangle shrinking, a quad-condition cycle becomes a
    Hamiltonian cycle of the shrunk polytope that turns (adjacent rotation
    pair, never opposite) at every 4-valent vertex; a violating cycle visits
    some shrunk vertex twice.  The permutohedron shrinks to the octahedron."""
    g = permutohedron
    shrunk = ham.shrink_quadrangles(g)
    quad_edges = {e for f in range(g.num_faces) if g.face_degree(f) == 4
                  for e in g.face_edges(f)}
    cycles = ham.enumerate_hamiltonian(g, ham.CYCLE)
    good = [s for s in cycles
            if all(sum(1 for e in g.face_edges(f) if e in s.edges) == 3
                   for f in range(g.num_faces) if g.face_degree(f) == 4)]
    assert good, "the permutohedron carries quad-condition Hamiltonian cycles"
    assert len(good) < len(cycles)
    for s in cycles[:40] + good[:10]:
        surviving = [e for e in s.edges if e not in quad_edges]
        per_vertex = {v: [] for v in shrunk.vertices}
        for e in surviving:
            for d in (e, shrunk.twin(e)):
                per_vertex[shrunk.vertex_of(d)].append(d)
        if s in good:
            # a Hamiltonian cycle on the shrunk polytope, turning everywhere
            assert all(len(ds) == 2 for ds in per_vertex.values())
            for v, (d1, d2) in per_vertex.items():
                rot = shrunk.rotation(v)
                if len(rot) == 4:
                    i, j = sorted((rot.index(d1), rot.index(d2)))
                    assert j - i in (1, 3)  # adjacent, never straight
            seq = [shrunk.vertex_of(surviving[0])]
            cur, prev_e = shrunk.vertex_of(shrunk.twin(surviving[0])), surviving[0]
            remaining = set(surviving) - {surviving[0]}
            while remaining:
                nxt = [e for e in remaining
                       if cur in shrunk.edge_vertices(e)]
                assert nxt, "transported edges must close into one cycle"
                e = nxt[0]
                seq.append(cur)
                u, w = shrunk.edge_vertices(e)
                cur = w if u == cur else u
                remaining.discard(e)
            assert len(seq) == shrunk.num_vertices
        else:
            assert any(len(ds) != 2 for ds in per_vertex.values())


def test_shrink_permutohedron_is_octahedron(permutohedron, octahedron):
    assert eg.isomorphic(ham.shrink_quadrangles(permutohedron), octahedron)


def test_cut_ideal_vertices_roundtrip(octahedron):
    cut = ham.cut_ideal_vertices(octahedron)
    assert cut.num_faces == 14
    assert cut.is_k_valent(3)
    assert eg.isomorphic(ham.shrink_quadrangles(cut), octahedron)


def test_shrink_cube_overlapping(cube):
    with pytest.raises(OverlappingQuadrangles):
        ham.shrink_quadrangles(cube)


def test_conjugated_edges_lemma(dodecahedron, p8):
    for g in (dodecahedron, p8):
        for s in ham.enumerate_hamiltonian(g, ham.CYCLE):
            conj = ham.conjugated_edges(g, s)
            for e in s.matching:
                assert any(e in pair for pair in conj)


def test_conjugated_edges_symmetric_irreflexive(p8):
    for s in ham.enumerate_hamiltonian(p8, ham.CYCLE):
        conj = ham.conjugated_edges(p8, s)
        for e1, e2 in conj:
            assert e1 != e2
            assert e1 < e2  # stored sorted, so symmetry is structural


def test_p8_split_linking_frozen(octahedron):
    t0 = at.enumerate_atrails(octahedron)[0]
    res = ham.split_vertices(octahedron, t0)
    conj = ham.conjugated_edges(res.graph, res.structure)
    edge_ids = sorted(res.structure.matching)
    index = {e: i for i, e in enumerate(edge_ids)}
    got = sorted([index[a], index[b]] for a, b in conj)
    assert got == FIXTURES["p8_split_cycle_linking"]


def test_cut_vertex_and_reverse(simplex):
    s = ham.enumerate_hamiltonian(simplex, ham.THETA)[0]
    hub = s.hubs[0]
    face = sorted(set(simplex.faces_at_vertex(hub)))[0]
    q2, s2 = ham.cut_vertex(simplex, s, hub, face)
    assert q2.num_vertices == 6
    assert q2.is_k_valent(3) and eg.is_polytopal(q2).verdict
    assert len(s2.matching) == len(s.matching) + 1
    rep = ham.reduce_to_simplex(q2, s2)
    assert rep.reducible and len(rep.steps) == 1
    code = eg.canonical_code(rep.final_graph,
                             {e: 1 for e in rep.final_structure.matching})
    want = eg.canonical_code(simplex, {e: 1 for e in s.matching})
    assert code == want


def test_cut_vertex_errors(simplex, cube):
    s = ham.enumerate_hamiltonian(simplex, ham.THETA)[0]
    non_hub = next(v for v in simplex.vertices if v not in s.hubs)
    with pytest.raises(NotHub):
        ham.cut_vertex(simplex, s, non_hub, 0)
    hub = s.hubs[0]
    bad_face = next(f for f in range(simplex.num_faces)
                    if f not in simplex.faces_at_vertex(hub))
    with pytest.raises(BadFace):
        ham.cut_vertex(simplex, s, hub, bad_face)


def test_reduce_base_cases(simplex):
    theta = ham.enumerate_hamiltonian(simplex, ham.THETA)[0]
    rep = ham.reduce_to_simplex(simplex, theta)
    assert rep.reducible and rep.steps == ()
    k4 = ham.enumerate_hamiltonian(simplex, ham.K4)[0]
    rep = ham.reduce_to_simplex(simplex, k4)
    assert rep.reducible and rep.steps == ()


def test_reduce_grown_structures(simplex):
    rng = random.Random(11)
    for kind in (ham.THETA, ham.K4):
        base = ham.enumerate_hamiltonian(simplex, kind)[0]
        q, s = simplex, base
        for _ in range(3):
            hub = rng.choice(s.hubs)
            face = rng.choice(sorted(set(q.faces_at_vertex(hub))))
            q, s = ham.cut_vertex(q, s, hub, face)
        rep = ham.reduce_to_simplex(q, s)
        assert rep.reducible
        assert len(rep.steps) == 3


def test_cube_theta_not_reducible(cube):
    for s in ham.enumerate_hamiltonian(cube, ham.THETA):
        assert not ham.reduce_to_simplex(cube, s).reducible


def test_structure_json_roundtrip(cube):
    s = ham.enumerate_hamiltonian(cube, ham.THETA)[0]
    data = ham.to_structure_json(s)
    s2 = ham.from_structure_json(cube, data)
    assert s2.edges == s.edges
    assert s2.hubs == s.hubs
    assert s2.kind == s.kind


def test_cut_and_shrink_on_mixed_valence(cube):
    """The finite-volume correspondence: cutting the 4-valent vertices of a
    mixed polytope and shrinking the produced quadrangles are inverse."""
    thetas = [s for s in ham.enumerate_hamiltonian(cube, ham.THETA)
              if all_cross_path(s)]
    bipyramid = ham.contract_matching(cube, thetas[0]).graph
    cut = ham.cut_ideal_vertices(bipyramid)
    assert cut.is_k_valent(3)
    assert eg.is_polytopal(cut).verdict
    back = ham.shrink_quadrangles(cut)
    assert eg.isomorphic(back, bipyramid)
