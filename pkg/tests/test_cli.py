import json
import subprocess

from polylink import cli
from polylink import embedded_graph as eg
from polylink import catalog as cat
from polylink import hamiltonian as ham


def run_cli(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, out


def test_gen_outputs_pgraph(capsys):
    code, out = run_cli(capsys, ["gen", "antiprism:4"])
    assert code == 0
    data = json.loads(out)
    assert data["format"] == "pgraph-v1"
    assert len(data["vertices"]) == 8


def test_gen_unknown_name(capsys):
    assert cli.run(["gen", "nonagon"]) == 1


def test_unknown_subcommand(capsys):
    assert cli.run(["frobnicate"]) == 1
    assert cli.run([]) == 1


def test_pipeline_atrails_count(tmp_path, capsys):
    code, out = run_cli(capsys, ["gen", "antiprism:4"])
    graph_file = tmp_path / "a4.json"
    graph_file.write_text(out)
    code, out = run_cli(capsys, ["atrails", str(graph_file),
                                 "--up-to-symmetry", "--count"])
    assert code == 0
    assert json.loads(out) == {"count": 7}


def test_shell_pipeline_stdin():
    cmd = ("polylink gen antiprism:4 | "
           "polylink atrails - --up-to-symmetry --count")
    out = subprocess.run(cmd, shell=True, capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"count": 7}


def test_ham_count_dodecahedron(tmp_path, capsys):
    _, out = run_cli(capsys, ["gen", "dodecahedron"])
    f = tmp_path / "d.json"
    f.write_text(out)
    code, out = run_cli(capsys, ["ham", str(f), "--kind", "cycle",
                                 "--up-to-symmetry", "--count"])
    assert code == 0
    assert json.loads(out) == {"count": 1}


def test_classify_expect_failure_exit_2(tmp_path, capsys):
    _, out = run_cli(capsys, ["gen", "cube"])
    f = tmp_path / "cube.json"
    f.write_text(out)
    code, out = run_cli(capsys, ["classify", str(f), "--expect", "pogorelov"])
    assert code == 2
    assert json.loads(out)["pogorelov"] is False
    code, _ = run_cli(capsys, ["classify", str(f), "--expect", "almost_pogorelov"])
    assert code == 0


def test_belts_output(tmp_path, capsys):
    _, out = run_cli(capsys, ["gen", "cube"])
    f = tmp_path / "cube.json"
    f.write_text(out)
    code, out = run_cli(capsys, ["belts", str(f), "--k", "4"])
    assert code == 0
    data = json.loads(out)
    assert len(data["belts"]) == 3
    assert all(b["surrounds_quadrangle"] for b in data["belts"])


def test_family_count(capsys):
    code, out = run_cli(capsys, ["family", "--max-vertices", "8"])
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 2


def test_split_contract_pipeline(tmp_path, capsys):
    _, out = run_cli(capsys, ["gen", "antiprism:3"])
    octa_file = tmp_path / "octa.json"
    octa_file.write_text(out)
    code, out = run_cli(capsys, ["split", str(octa_file), "--atrail", "0"])
    assert code == 0
    data = json.loads(out)
    qfile = tmp_path / "q.json"
    sfile = tmp_path / "s.json"
    qfile.write_text(json.dumps(data["graph"]))
    sfile.write_text(json.dumps(data["structure"]))
    code, out = run_cli(capsys, ["contract", str(qfile), "--structure", str(sfile)])
    assert code == 0
    back = eg.from_pgraph(json.loads(out)["graph"])
    assert eg.isomorphic(back, cat.generate("antiprism:3"))


def test_reduce_exit_codes(tmp_path, capsys):
    _, out = run_cli(capsys, ["gen", "cube"])
    cube_file = tmp_path / "cube.json"
    cube_file.write_text(out)
    cube = cat.generate("cube")
    s = ham.enumerate_hamiltonian(cube, ham.THETA)[0]
    sfile = tmp_path / "theta.json"
    sfile.write_text(json.dumps(ham.to_structure_json(s)))
    code, out = run_cli(capsys, ["reduce", str(cube_file), "--structure", str(sfile)])
    assert code == 2
    assert json.loads(out)["reducible"] is False


def test_cover_betti(tmp_path, capsys):
    _, out = run_cli(capsys, ["gen", "cube"])
    cube_file = tmp_path / "cube.json"
    cube_file.write_text(out)
    cube = cat.generate("cube")
    s = ham.enumerate_hamiltonian(cube, ham.CYCLE)[0]
    sfile = tmp_path / "cycle.json"
    sfile.write_text(json.dumps(ham.to_structure_json(s)))
    code, out = run_cli(capsys, ["cover", str(cube_file), "--coloring", "cycle2",
                                 "--structure", str(sfile), "--betti"])
    assert code == 0
    data = json.loads(out)
    assert data["betti"] == [1, 0, 0, 1]
    assert data["euler_characteristic"] == 0


def test_link_verdicts(tmp_path, capsys):
    cube = cat.generate("cube")
    _, out = run_cli(capsys, ["gen", "cube"])
    cube_file = tmp_path / "cube.json"
    cube_file.write_text(out)
    for s in ham.enumerate_hamiltonian(cube, ham.THETA):
        pv = s.path_of_vertex()
        if all(pv[cube.edge_vertices(e)[0]][0] != pv[cube.edge_vertices(e)[1]][0]
               for e in s.matching):
            break
    sfile = tmp_path / "theta.json"
    sfile.write_text(json.dumps(ham.to_structure_json(s)))
    code, out = run_cli(capsys, ["link", str(cube_file),
                                 "--structure", str(sfile), "--witnesses"])
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "unlinked_nontrivial"
    assert len(data["circles"]) == 3


def test_output_determinism(capsys):
    _, out1 = run_cli(capsys, ["gen", "dodecahedron"])
    _, out2 = run_cli(capsys, ["gen", "dodecahedron"])
    assert out1 == out2
    _, f1 = run_cli(capsys, ["fixtures"])
    _, f2 = run_cli(capsys, ["fixtures"])
    assert f1 == f2


def test_fixtures_match_checked_in(capsys, tmp_path):
    import os
    code, out = run_cli(capsys, ["fixtures"])
    assert code == 0
    generated = json.loads(out)
    checked_in = json.load(open(os.path.join(os.path.dirname(__file__),
                                             "data", "derived_fixtures.json")))
    assert generated == checked_in


def test_dot_export(tmp_path, capsys):
    dot_path = tmp_path / "cube.dot"
    code, _ = run_cli(capsys, ["gen", "cube", "--dot", str(dot_path)])
    assert code == 0
    text = dot_path.read_text()
    assert text.startswith("graph {")


def test_euler_theta_cli(tmp_path, capsys):
    cube = cat.generate("cube")
    for s in ham.enumerate_hamiltonian(cube, ham.THETA):
        pv = s.path_of_vertex()
        if all(pv[cube.edge_vertices(e)[0]][0] != pv[cube.edge_vertices(e)[1]][0]
               for e in s.matching):
            break
    bip = ham.contract_matching(cube, s).graph
    f = tmp_path / "bip.json"
    f.write_text(eg.dumps(bip))
    code, out = run_cli(capsys, ["euler-theta", str(f), "--count"])
    assert code == 0
    assert json.loads(out)["count"] == 2
