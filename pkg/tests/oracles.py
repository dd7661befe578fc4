"""Independent brute-force oracles used to cross-check the enumerators.

Everything here works on plain vertex/edge data extracted from a graph, on
purpose ignoring the rotation-system machinery the main code paths use.
"""

from __future__ import annotations

import itertools


def edge_pairs(g) -> list[tuple[int, int]]:
    return [tuple(sorted(g.edge_vertices(e))) for e in g.edges]


def _degrees(vertices, edges):
    deg = {v: 0 for v in vertices}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def _connected(vertices, edges):
    if not vertices:
        return True
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vertices)


def is_hamiltonian_cycle_subset(vertices, edges) -> bool:
    deg = _degrees(vertices, edges)
    touched = [v for v in vertices if deg[v] > 0]
    return (len(edges) == len(vertices)
            and all(deg[v] == 2 for v in vertices)
            and _connected(touched, edges))


def is_theta_subset(vertices, edges) -> bool:
    deg = _degrees(vertices, edges)
    hubs = [v for v in vertices if deg[v] == 3]
    if len(hubs) != 2 or any(deg[v] != 2 for v in vertices if v not in hubs):
        return False
    if not _connected(vertices, edges):
        return False
    # three internally disjoint hub-to-hub paths: no bridge may exist
    for cut in edges:
        rest = [e for e in edges if e != cut]
        if not _connected(vertices, rest):
            return False
    return True


def is_k4_subset(vertices, edges) -> bool:
    deg = _degrees(vertices, edges)
    hubs = sorted(v for v in vertices if deg[v] == 3)
    if len(hubs) != 4 or any(deg[v] != 2 for v in vertices if v not in hubs):
        return False
    if not _connected(vertices, edges):
        return False
    # contract degree-2 chains and require a simple K4 on the hubs
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    pairs = []
    for h in hubs:
        for first in adj[h]:
            prev, cur = h, first
            while cur not in hubs:
                nxt = [w for w in adj[cur] if w != prev]
                if len(nxt) != 1:
                    return False
                prev, cur = cur, nxt[0]
            if h == cur:
                return False
            pairs.append(frozenset((h, cur)))
    want = [frozenset(p) for p in itertools.combinations(hubs, 2)]
    return sorted(map(sorted, pairs)) == sorted(map(sorted, want + want))


def count_structures_bruteforce(g, kind: str) -> int:
    """Iterate all edge subsets of the right size and test directly."""
    vertices = list(g.vertices)
    edges = edge_pairs(g)
    n = len(vertices)
    size = {"cycle": n, "theta": n + 1, "k4": n + 2}[kind]
    check = {"cycle": is_hamiltonian_cycle_subset,
             "theta": is_theta_subset,
             "k4": is_k4_subset}[kind]
    return sum(1 for subset in itertools.combinations(edges, size)
               if check(vertices, list(subset)))


def belts_bruteforce(g, k: int) -> set[tuple[int, ...]]:
    """All k-belts as canonical cyclic tuples, by direct enumeration of all
    cyclic face sequences."""
    faces = range(g.num_faces)
    vsets = {f: set(g.face_vertices(f)) for f in faces}
    adjacent = set()
    for e in g.edges:
        f1, f2 = g.faces_of_edge(e)
        adjacent.add(frozenset((f1, f2)))

    def adj(a, b):
        return frozenset((a, b)) in adjacent

    out = set()
    for subset in itertools.combinations(faces, k):
        for perm in itertools.permutations(subset[1:]):
            seq = (subset[0],) + perm
            ok = True
            for i, j in itertools.combinations(range(k), 2):
                consecutive = (j - i == 1) or (i == 0 and j == k - 1)
                if consecutive != adj(seq[i], seq[j]):
                    ok = False
                    break
            if ok:
                for trio in itertools.combinations(seq, 3):
                    if vsets[trio[0]] & vsets[trio[1]] & vsets[trio[2]]:
                        ok = False
                        break
            if ok:
                candidates = []
                for s in (seq, tuple(reversed(seq))):
                    candidates.extend(s[i:] + s[:i] for i in range(k))
                out.add(min(candidates))
    return out
