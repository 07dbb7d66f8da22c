import json
import pathlib


from tautilt.cli import main

ALGEBRAS = pathlib.Path(__file__).resolve().parents[1] / "algebras"


def path(name):
    return str(ALGEBRAS / f"{name}.json")


def test_check_ok(capsys):
    assert main(["check", path("a2")]) == 0
    out = capsys.readouterr().out
    assert "dim A = 3" in out
    assert "diag(1, 1)" in out


def test_check_missing_file(capsys):
    assert main(["check", "/nonexistent/a.json"]) == 4


def test_check_invalid_presentation(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]}')
    # free loop algebra: not admissible -> input error
    assert main(["check", str(bad)]) == 4


def test_check_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert main(["check", str(bad)]) == 4


def test_pairs_with_outputs(tmp_path, capsys):
    out_json = tmp_path / "g.json"
    out_dot = tmp_path / "g.dot"
    rc = main(["pairs", path("a2"), "--json", str(out_json), "--dot", str(out_dot)])
    assert rc == 0
    data = json.loads(out_json.read_text())
    assert data["pair_count"] == 5
    assert data["edge_count"] == 5
    dot = out_dot.read_text()
    assert dot.count("--") == 5


def test_cvectors(capsys, tmp_path):
    out = tmp_path / "c.json"
    rc = main(["cvectors", path("a3"), "--json", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["pair_count"] == 14
    assert data["failures"] == []
    assert all(p["identity_ok"] and p["sign_coherent"] for p in data["pairs"])


def test_bricks(capsys, tmp_path):
    out = tmp_path / "b.json"
    rc = main(["bricks", path("a2"), "--json", str(out), "--samples", "10"])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["max_brick_length"] == 2
    assert data["verification"]["failures"] == []


def test_bt1_found(capsys):
    rc = main(["bt1", path("kronecker"), "--target-length", "3", "--max-pairs", "100"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "composition factors" in out
    assert "witnessing c-vector" in out


def test_bt1_not_found_with_proof(capsys):
    rc = main(["bt1", path("a2"), "--target-length", "3"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "tau-tilting finite" in out


def test_bt1_cutoff_exit_code(capsys):
    rc = main(["bt1", path("kronecker"), "--target-length", "40", "--max-pairs", "5"])
    assert rc == 3


def test_verify(capsys):
    rc = main(["verify", path("a2"), "--samples", "25"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "total failures: 0" in out
    assert "AR-formula samples: 25  failures: 0" in out


def test_verify_seed_flag(capsys):
    assert main(["verify", path("a1"), "--samples", "5", "--seed", "42"]) == 0


def test_pairs_deterministic_bytes(tmp_path):
    out1 = tmp_path / "p1.json"
    out2 = tmp_path / "p2.json"
    main(["pairs", path("a3"), "--json", str(out1)])
    main(["pairs", path("a3"), "--json", str(out2), "--workers", "4"])
    assert out1.read_bytes() == out2.read_bytes()
