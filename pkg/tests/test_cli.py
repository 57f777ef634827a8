import json
import subprocess
import sys

import pytest

from homrec.cli import main
from homrec.counting import check_constraints
from homrec.graph import complete_graph, parse_graph, serialize_graph, single_vertex
from homrec.oracle import read_manifest, write_manifest
from homrec.counting import PatternConstraint
from homrec.solver import parse_star_constraints


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "tri.stars").write_text("mode sub\nstar 0 3\nstar 1 3\nstar 2 3\n")
    (tmp_path / "odd.stars").write_text("mode hom\nstar 0 2\nstar 1 3\n")
    (tmp_path / "bad.stars").write_text("mode sub\nstar 0\n")
    (tmp_path / "k2.graph").write_text(serialize_graph(complete_graph(2)))
    (tmp_path / "triangle.graph").write_text(serialize_graph(complete_graph(3)))
    (tmp_path / "neg.circuit").write_text("input x\nnot g x\noutput g\n")
    (tmp_path / "contra.circuit").write_text("input x\nnot n x\nand g x n\noutput g\n")
    (tmp_path / "p3.graph").write_text("n 3\ne 0 1\ne 1 2\n")
    tri = tmp_path / "tri_manifest"
    write_manifest(str(tri), [PatternConstraint(single_vertex(), 3),
                              PatternConstraint(complete_graph(2), 6)])
    empty = tmp_path / "none_manifest"
    write_manifest(str(empty), [PatternConstraint(single_vertex(), 0),
                                PatternConstraint(complete_graph(2), 2)])
    return tmp_path


def test_solve_stars_feasible(capsys, files):
    out_graph = files / "w.graph"
    code, out, _ = run(capsys, "solve-stars", "--constraints", str(files / "tri.stars"),
                       "--emit-degseq", "--emit-graph", str(out_graph))
    assert code == 0
    assert out.splitlines() == ["FEASIBLE", "degseq 2,2,2"]
    g = parse_graph(out_graph.read_text())
    assert g.edges == complete_graph(3).edges
    inst = parse_star_constraints((files / "tri.stars").read_text())
    assert check_constraints(g, inst.constraints()).satisfied


def test_solve_stars_prints_graph(capsys, files):
    code, out, _ = run(capsys, "solve-stars", "--constraints", str(files / "tri.stars"))
    assert code == 0
    assert out == "FEASIBLE\nn 3\ne 0 1\ne 0 2\ne 1 2\n"


def test_solve_stars_infeasible_and_errors(capsys, files):
    code, out, _ = run(capsys, "solve-stars", "--constraints", str(files / "odd.stars"))
    assert (code, out) == (1, "INFEASIBLE\n")
    code, _, err = run(capsys, "solve-stars", "--constraints", str(files / "missing.stars"))
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "solve-stars", "--constraints", str(files / "bad.stars"))
    assert code == 2 and "line 2" in err


def test_solve_stars_json(capsys, files):
    code, out, _ = run(capsys, "solve-stars", "--constraints", str(files / "tri.stars"), "--json")
    report = json.loads(out)
    assert code == 0 and report["verdict"] == "feasible"
    assert report["degree_sequence"] == [2, 2, 2]
    assert [row["actual"] for row in report["counts"]] == [3, 3, 3]
    assert "seconds" not in report
    code, out, _ = run(capsys, "solve-stars", "--constraints", str(files / "tri.stars"),
                       "--json", "--timing")
    assert "seconds" in json.loads(out)


def test_brute(capsys, files):
    code, out, _ = run(capsys, "brute", "--manifest", str(files / "tri_manifest"), "--up-to-iso")
    assert code == 0
    assert out == "FEASIBLE\nn 3\ne 0 1\ne 0 2\ne 1 2\nisomorphism classes on 3 vertices: 1\n"
    code, out, _ = run(capsys, "brute", "--manifest", str(files / "none_manifest"))
    assert code == 1 and out.startswith("INFEASIBLE (exhausted n <= ")
    code, out, _ = run(capsys, "brute", "--manifest", str(files / "tri_manifest"), "--max-n", "0")
    assert (code, out) == (1, "INFEASIBLE (exhausted n <= 0)\n")
    code, _, err = run(capsys, "brute", "--manifest", str(files / "nowhere"))
    assert code == 2


def test_brute_budget(capsys, files):
    code, _, err = run(capsys, "brute", "--manifest", str(files / "tri_manifest"),
                       "--budget", "3")
    assert code == 2 and "budget" in err


def test_count(capsys, files):
    code, out, _ = run(capsys, "count", "--pattern", str(files / "k2.graph"),
                       "--target", str(files / "triangle.graph"), "--mode", "hom")
    assert (code, out) == (0, "6\n")
    code, out, _ = run(capsys, "count", "--pattern", str(files / "k2.graph"),
                       "--target", str(files / "triangle.graph"), "--mode", "sub")
    assert (code, out) == (0, "3\n")


def test_degree_sequence_commands(capsys):
    assert run(capsys, "check-degseq", "--seq", "3,3,2,2,0")[:2] == (0, "GRAPHIC\n")
    assert run(capsys, "check-degseq", "--seq", "3,3,1")[:2] == (1, "NOT GRAPHIC\n")
    assert run(capsys, "check-degseq", "--seq", "3,x")[0] == 2
    code, out, _ = run(capsys, "havel-hakimi", "--seq", "2,2,2")
    assert (code, out) == (0, "n 3\ne 0 1\ne 0 2\ne 1 2\n")
    assert run(capsys, "havel-hakimi", "--seq", "3,3,1")[:2] == (1, "NOT GRAPHIC\n")


def test_reduce_circuit(capsys, files):
    out_dir = files / "neg_out"
    code, out, _ = run(capsys, "reduce", "circuit", "--input", str(files / "neg.circuit"),
                       "--out", str(out_dir), "--verify")
    assert code == 0
    assert out.splitlines()[0] == f"wrote 15 constraints to {out_dir}"
    assert out.splitlines()[1].startswith("VERIFIED satisfiable")
    assert len(read_manifest(str(out_dir))) == 15
    code, out, _ = run(capsys, "reduce", "circuit", "--input", str(files / "contra.circuit"),
                       "--out", str(files / "c_out"), "--verify")
    assert code == 0 and "VERIFIED unsatisfiable" in out


def test_reduce_coloring_and_colors4(capsys, files):
    code, out, _ = run(capsys, "reduce", "coloring", "--input", str(files / "p3.graph"),
                       "--out", str(files / "col_out"), "--verify")
    assert code == 0 and "VERIFIED unsatisfiable" in out
    src = files / "two_colour"
    write_manifest(str(src), [PatternConstraint(single_vertex("A1"), 1),
                              PatternConstraint(single_vertex("A2"), 1)])
    code, out, _ = run(capsys, "reduce", "colors4", "--input", str(src),
                       "--out", str(files / "four"), "--verify", "--json")
    report = json.loads(out)
    assert code == 0 and report["constraints"] == 2 + 7 + 1 + 1
    assert report["verify"]["matches"]


def test_reduce_bad_circuit(capsys, files):
    (files / "bad.circuit").write_text("input x\nand g x\noutput g\n")
    code, _, err = run(capsys, "reduce", "circuit", "--input", str(files / "bad.circuit"),
                       "--out", str(files / "o"))
    assert code == 2 and "line 2" in err


def test_output_is_byte_identical_across_runs(files):
    cmd = [sys.executable, "-m", "homrec", "brute", "--manifest", str(files / "tri_manifest"),
           "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["verdict"] == "feasible"


def test_help_for_every_command(capsys):
    for cmd in ("solve-stars", "brute", "count", "check-degseq", "havel-hakimi", "reduce"):
        with pytest.raises(SystemExit) as info:
            main([cmd, "--help"])
        assert info.value.code == 0
    capsys.readouterr()
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
