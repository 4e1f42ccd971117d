import json
import subprocess
import sys

import pytest

from setrealize.cli import main, run_check, run_realize
from setrealize.model import parse_family, parse_graph
from setrealize.testkit import counterexample_truncation


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize("name, expected", [("triangle", 1), ("star", 0), ("truncation4", 0), ("cycle4", 1)])
def test_check_exit_codes(capsys, data_dir, name, expected):
    code, out, _ = run(capsys, "check", data_dir / f"{name}.json")
    assert code == expected
    assert out.startswith("verdict: ")


def test_check_report_fields(capsys, data_dir):
    code, rep = run_json(capsys, "check", data_dir / "triangle.json")
    assert code == 1
    assert rep["verdict"] == "fails"
    assert rep["details"]["helly"]["kind"] == "helly-violation"
    assert rep["input_digest"].startswith("sha256:")


def test_realize_tree_star(capsys, data_dir):
    code, rep = run_json(capsys, "realize", "--mode=tree", data_dir / "star.json")
    assert code == 0
    assert rep["certificate"]["edges"] == [["a", "c"], ["b", "c"], ["c", "d"]]


def test_realize_tree_refusal(capsys, data_dir):
    code, out, _ = run(capsys, "realize", "--mode=tree", data_dir / "triangle.json")
    assert code == 1
    assert "helly violation" in out


def test_realize_interval_star(capsys, data_dir):
    code, rep = run_json(capsys, "realize", "--mode=interval", data_dir / "star.json")
    assert code == 1
    assert rep["certificate"]["kind"] == "obstruction-triple"
    assert rep["certificate"]["vertices"] == ["a", "b", "d"]


def test_realize_interval_chain(capsys, data_dir):
    code, out, _ = run(capsys, "realize", "--mode=interval", data_dir / "chain.json")
    assert code == 0
    assert "ordering: 1 2 3" in out


def test_graph_decompose_path(capsys, data_dir):
    code, rep = run_json(capsys, "graph", "--action=decompose", data_dir / "path3.txt")
    assert code == 0
    assert rep["certificate"]["width"] == 1


def test_graph_decompose_trident(capsys, data_dir):
    code, rep = run_json(capsys, "graph", "--action=decompose", data_dir / "trident.txt")
    assert code == 1
    assert rep["verdict"] == "not-interval"
    assert len(rep["certificate"]["vertices"]) == 3


def test_graph_pathwidth_k4(capsys, data_dir):
    code, out, _ = run(capsys, "graph", "--action=pathwidth", data_dir / "k4.txt")
    assert code == 0 and "pathwidth: 3" in out


def test_graph_not_chordal(capsys, data_dir):
    code, rep = run_json(capsys, "graph", "--action=represent", data_dir / "c4.txt")
    assert code == 1
    assert rep["certificate"]["kind"] == "chordless-cycle"


def test_graph_represent(capsys, data_dir):
    code, rep = run_json(capsys, "graph", "--action=represent", data_dir / "trident.txt")
    assert code == 0
    cert = rep["certificate"]
    assert set(cert["subtrees"]) == set(parse_graph((data_dir / "trident.txt").read_bytes()).vertices)


@pytest.mark.parametrize(
    "kind, file, verdict",
    [
        ("tree", "star.json", "found"),
        ("tree", "triangle.json", "none"),
        ("tree", "cycle4.json", "none"),
        ("order", "chain.json", "found"),
        ("order", "star.json", "none"),
        ("pathwidth", "c4.txt", "found"),
    ],
)
def test_oracles(capsys, data_dir, kind, file, verdict):
    code, rep = run_json(capsys, "oracle", f"--kind={kind}", data_dir / file)
    assert rep["verdict"] == verdict
    assert code == (0 if verdict == "found" else 1)


def test_parse_error_exit_code(capsys, data_dir):
    code, out, err = run(capsys, "check", data_dir / "malformed.json")
    assert code == 2 and out == ""
    assert "line 2" in err


def test_unknown_label_exit_code(capsys, data_dir):
    code, _, err = run(capsys, "check", data_dir / "bad_label.json")
    assert code == 2 and "unknown label" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "nope.json")
    assert code == 2 and err


def test_json_stable_apart_from_timings(data_dir):
    fam = parse_family((data_dir / "truncation4.json").read_bytes())
    for make in (lambda: run_check(fam), lambda: run_realize(fam, "tree"), lambda: run_realize(fam, "interval")):
        assert make().to_json(timings=False) == make().to_json(timings=False)


def test_generate_roundtrip(capsys, tmp_path):
    code, _, _ = run(capsys, "generate", "--kind=random-family", "--n=5", "--sets=3", "--count=3", "--seed=9", "--out", tmp_path)
    assert code == 0
    files = sorted(tmp_path.iterdir())
    assert len(files) == 3
    for f in files:
        fam = parse_family(f.read_bytes())
        assert len(fam.ground) == 5 and len(fam) == 3
    code, out, _ = run(capsys, "generate", "--kind=counterexample-truncation", "--n=4")
    assert parse_family(out.encode()) == counterexample_truncation(4)


def test_generate_graph_to_stdout(capsys):
    code, out, _ = run(capsys, "generate", "--kind=random-chordal", "--n=7", "--seed=2")
    assert code == 0 and len(parse_graph(out.encode())) == 7


def test_stdin_input(capsys, data_dir, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO((data_dir / "star.json").read_bytes())))
    code, out, _ = run(capsys, "check", "-")
    assert code == 0


def test_module_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "setrealize", "realize", "--mode=interval", str(data_dir / "chain.json")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "ordering: 1 2 3" in proc.stdout
