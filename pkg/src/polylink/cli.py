"""Command-line entry point.

Subcommands read pgraph-v1 JSON (``-`` for standard input) and write a JSON
payload to standard output; diagnostics go to standard error.  Exit codes:
0 success, 1 invalid input, 2 a requested predicate or check is false.
Payloads are deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import atrails as at
from . import catalog as cat
from . import covers as cv
from . import embedded_graph as eg
from . import hamiltonian as ham
from . import links as lk
from .errors import PolylinkError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CHECK_FAILED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _read_graph(path: str) -> eg.EmbeddedGraph:
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return eg.loads(text)


def _read_structure(g: eg.EmbeddedGraph, path: str) -> ham.HamiltonianStructure:
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return ham.from_structure_json(g, json.loads(text))


def _write_dot(g: eg.EmbeddedGraph, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(eg.to_dot(g))


def _trail_json(trail: at.ATrail) -> dict:
    return {"bits": list(trail.bits), "curve": list(trail.curve_darts())}


def _build_parser() -> _Parser:
    p = _Parser(prog="polylink", description=__doc__)
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("gen", help="generate a named polytope")
    s.add_argument("name")
    s.add_argument("--dot")

    s = sub.add_parser("classify", help="polytope class flags")
    s.add_argument("file")
    s.add_argument("--expect", choices=["simple", "four_valent", "pogorelov",
                                        "almost_pogorelov", "ideal_right_angled",
                                        "is_P8"])

    s = sub.add_parser("belts", help="k-belts of a simple polytope")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("family", help="ideal right-angled polytopes up to a size")
    s.add_argument("--max-vertices", type=int, required=True)

    s = sub.add_parser("atrails", help="A-trails of a 4-valent polytope")
    s.add_argument("file")
    s.add_argument("--up-to-symmetry", action="store_true")
    s.add_argument("--count", action="store_true")

    s = sub.add_parser("flipgraph", help="flip-graph components over all A-trails")
    s.add_argument("file")

    for kind in ("euler-theta", "euler-k4"):
        s = sub.add_parser(kind, help=f"Eulerian {kind.split('-')[1]}-graphs")
        s.add_argument("file")
        s.add_argument("--count", action="store_true")

    s = sub.add_parser("ham", help="Hamiltonian cycles / theta- / K4-graphs")
    s.add_argument("file")
    s.add_argument("--kind", choices=[ham.CYCLE, ham.THETA, ham.K4], required=True)
    s.add_argument("--quad-condition", action="store_true")
    s.add_argument("--up-to-symmetry", action="store_true")
    s.add_argument("--count", action="store_true")

    s = sub.add_parser("split", help="split vertices along an A-trail")
    s.add_argument("file")
    s.add_argument("--atrail", type=int, required=True,
                   help="index into the labeled A-trail enumeration")

    s = sub.add_parser("contract", help="contract the matching of a structure")
    s.add_argument("file")
    s.add_argument("--structure", required=True)

    s = sub.add_parser("reduce", help="reduce a theta/K4 structure toward the simplex")
    s.add_argument("file")
    s.add_argument("--structure", required=True)

    s = sub.add_parser("cover", help="vector coloring and quotient complex")
    s.add_argument("file")
    s.add_argument("--coloring", choices=list(cv.KINDS), required=True)
    s.add_argument("--structure")
    s.add_argument("--betti", action="store_true")

    s = sub.add_parser("link", help="combinatorial link model of a structure")
    s.add_argument("file")
    s.add_argument("--structure", required=True)
    s.add_argument("--witnesses", action="store_true")

    s = sub.add_parser("fixtures", help="regenerate derived oracle values")
    s.add_argument("--out")
    return p


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INVALID
    try:
        return _dispatch(args)
    except PolylinkError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


def _dispatch(args) -> int:
    if args.command == "gen":
        g = cat.generate(args.name)
        _write_dot(g, args.dot)
        _emit(eg.to_pgraph(g))
        return EXIT_OK

    if args.command == "classify":
        g = _read_graph(args.file)
        report = cat.classify(g)
        payload = {
            "simple": report.simple,
            "four_valent": report.four_valent,
            "pogorelov": report.pogorelov,
            "almost_pogorelov": report.almost_pogorelov,
            "ideal_right_angled": report.ideal_right_angled,
            "is_P8": report.is_P8,
            "witnesses": {k: list(v) if isinstance(v, tuple) else str(v)
                          for k, v in report.witnesses.items()},
        }
        _emit(payload)
        if args.expect and not payload[args.expect]:
            return EXIT_CHECK_FAILED
        return EXIT_OK

    if args.command == "belts":
        g = _read_graph(args.file)
        belts = cat.k_belts(g, args.k)
        _emit({"belts": [{"faces": list(b.faces), "trivial": b.trivial,
                          "surrounds_quadrangle": b.surrounds_quadrangle}
                         for b in belts]})
        return EXIT_OK

    if args.command == "family":
        fam = cat.ideal_ra_family(args.max_vertices)
        _emit({"count": len(fam), "members": [eg.to_pgraph(g) for g in fam]})
        return EXIT_OK

    if args.command == "atrails":
        g = _read_graph(args.file)
        trails = at.enumerate_atrails(g, up_to_symmetry=args.up_to_symmetry)
        if args.count:
            _emit({"count": len(trails)})
        else:
            _emit({"count": len(trails), "atrails": [_trail_json(t) for t in trails]})
        return EXIT_OK

    if args.command == "flipgraph":
        g = _read_graph(args.file)
        _emit(at.flip_components(g))
        return EXIT_OK

    if args.command in ("euler-theta", "euler-k4"):
        g = _read_graph(args.file)
        kind = at.THETA if args.command == "euler-theta" else at.K4
        structs = at.enumerate_euler_theta_k4(g, kind)
        if args.count:
            _emit({"count": len(structs)})
        else:
            _emit({"count": len(structs),
                   "structures": [{"bits": list(s.bits),
                                   "arcs": [list(a) for a in s.arcs]}
                                  for s in structs]})
        return EXIT_OK

    if args.command == "ham":
        g = _read_graph(args.file)
        structs = ham.enumerate_hamiltonian(g, args.kind,
                                            up_to_symmetry=args.up_to_symmetry,
                                            quad_condition=args.quad_condition)
        if args.count:
            _emit({"count": len(structs)})
        else:
            _emit({"count": len(structs),
                   "structures": [ham.to_structure_json(s) for s in structs]})
        return EXIT_OK

    if args.command == "split":
        g = _read_graph(args.file)
        trails = at.enumerate_atrails(g)
        if not 0 <= args.atrail < len(trails):
            sys.stderr.write(f"error: A-trail index out of range 0..{len(trails)-1}\n")
            return EXIT_INVALID
        res = ham.split_vertices(g, trails[args.atrail])
        _emit({"graph": eg.to_pgraph(res.graph),
               "structure": ham.to_structure_json(res.structure),
               "vertex_edges": {str(v): sorted(res.graph.edge_vertices(e))
                                for v, e in sorted(res.vertex_edges.items())}})
        return EXIT_OK

    if args.command == "contract":
        g = _read_graph(args.file)
        s = _read_structure(g, args.structure)
        res = ham.contract_matching(g, s)
        _emit({"graph": eg.to_pgraph(res.graph)})
        return EXIT_OK

    if args.command == "reduce":
        g = _read_graph(args.file)
        s = _read_structure(g, args.structure)
        rep = ham.reduce_to_simplex(g, s)
        _emit({"reducible": rep.reducible,
               "steps": [{"edge": list(e), "hub": h} for e, h in rep.steps]})
        return EXIT_OK if rep.reducible else EXIT_CHECK_FAILED

    if args.command == "cover":
        g = _read_graph(args.file)
        structure = None
        if args.structure:
            structure = _read_structure(g, args.structure)
        coloring = cv.make_coloring(g, args.coloring, structure)
        report = cv.validate(g, coloring)
        payload = {
            "rank": coloring.rank,
            "colors": {str(f): coloring.bits(f) for f in range(g.num_faces)},
            "valid": report.valid,
            "bad_vertices": list(report.bad_vertices),
        }
        if report.valid:
            qc = cv.build_quotient(g, coloring)
            payload["f_vector"] = list(qc.f_vector)
            payload["euler_characteristic"] = qc.euler_characteristic
            payload["components"] = qc.num_components
            if args.betti:
                payload["betti"] = list(cv.gf2_betti(qc))
        _emit(payload)
        return EXIT_OK if report.valid else EXIT_CHECK_FAILED

    if args.command == "link":
        g = _read_graph(args.file)
        s = _read_structure(g, args.structure)
        link = lk.build_link(g, s)
        _emit(lk.to_link_json(link, g, with_witnesses=args.witnesses))
        return EXIT_OK

    if args.command == "fixtures":
        payload = derived_fixtures()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True, indent=2)
                fh.write("\n")
        else:
            _emit(payload)
        return EXIT_OK

    return EXIT_INVALID


def derived_fixtures() -> dict:
    """All values that the test suite pins through independent oracles."""
    octa = cat.generate("antiprism:3")
    a4 = cat.generate("antiprism:4")
    a5 = cat.generate("antiprism:5")
    cube = cat.generate("cube")
    dode = cat.generate("dodecahedron")
    p8 = cat.generate("P8")

    trail0 = at.enumerate_atrails(octa)[0]
    conj = {str(v): sorted(at.conjugated_vertices(octa, trail0, v))
            for v in octa.vertices}

    p8_cycle = ham.enumerate_hamiltonian(p8, ham.CYCLE, up_to_symmetry=True,
                                         quad_condition=True)[0]
    res = ham.split_vertices(octa, trail0)
    p8_split_link = sorted(lk.build_link(res.graph, res.structure).linking)
    cover_p8 = cv.build_quotient(p8, cv.make_coloring(p8, cv.CYCLE2, p8_cycle))

    return {
        "labeled_atrails": {
            "antiprism:3": at.count_atrails_bruteforce(octa),
            "antiprism:4": at.count_atrails_bruteforce(a4),
            "antiprism:5": at.count_atrails_bruteforce(a5),
        },
        "atrails_up_to_symmetry": {
            "antiprism:3": len(at.enumerate_atrails(octa, up_to_symmetry=True)),
            "antiprism:4": len(at.enumerate_atrails(a4, up_to_symmetry=True)),
            "antiprism:5": len(at.enumerate_atrails(a5, up_to_symmetry=True)),
        },
        "orbit_sizes": {
            "antiprism:3": sorted(len(o) for o in at.atrail_orbits(octa)),
            "antiprism:4": sorted(len(o) for o in at.atrail_orbits(a4)),
        },
        "octahedron_trail0_conjugated": conj,
        "flip_components": {
            "antiprism:3": at.flip_components(octa),
            "antiprism:4": at.flip_components(a4),
        },
        "hamiltonian_cycles_labeled": {
            "cube": len(ham.enumerate_hamiltonian(cube, ham.CYCLE)),
            "dodecahedron": len(ham.enumerate_hamiltonian(dode, ham.CYCLE)),
            "P8": len(ham.enumerate_hamiltonian(p8, ham.CYCLE)),
        },
        "cube_theta_counts": {
            "labeled": len(ham.enumerate_hamiltonian(cube, ham.THETA)),
            "up_to_symmetry": len(ham.enumerate_hamiltonian(cube, ham.THETA,
                                                            up_to_symmetry=True)),
        },
        "belt_counts": {
            "cube_4": len(cat.k_belts(cube, 4)),
            "P8_4": len(cat.k_belts(p8, 4)),
            "dodecahedron_3": len(cat.k_belts(dode, 3)),
            "dodecahedron_4": len(cat.k_belts(dode, 4)),
        },
        "ideal_ra_family_sizes": {
            "6": len(cat.ideal_ra_family(6)),
            "8": len(cat.ideal_ra_family(8)),
            "10": len(cat.ideal_ra_family(10)),
            "12": len(cat.ideal_ra_family(12)),
        },
        "p8_split_cycle_linking": [list(p) for p in p8_split_link],
        "p8_cycle2_quotient": {
            "f_vector": list(cover_p8.f_vector),
            "euler_characteristic": cover_p8.euler_characteristic,
            "betti": list(cv.gf2_betti(cover_p8)),
        },
    }


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
