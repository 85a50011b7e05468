import json

from biseriality.cli import main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_check_twisted(capsys):
    code, out = run(capsys, "check", FIXTURES / "twisted-square.alg", "--no-timings")
    report = json.loads(out.out)
    assert code == 0
    v = report["verdicts"]
    assert not any(v[k] for k in ("fuller", "subalgebra_full", "subalgebra_d4", "decide"))
    assert report["witnesses"]["decide"]["type"] == "obstruction"
    assert set(report) >= {"instance", "p", "dims", "verdicts", "witnesses", "timings_ms", "disagreements"}


def test_check_deterministic(capsys):
    _, first = run(capsys, "check", FIXTURES / "five-vertex.alg", "--no-timings")
    _, second = run(capsys, "check", FIXTURES / "five-vertex.alg", "--no-timings")
    assert first.out == second.out


def test_check_a3(capsys):
    code, out = run(capsys, "check", FIXTURES / "a3-linear.alg")
    v = json.loads(out.out)["verdicts"]
    assert code == 0 and v["fuller"] and v["nakayama"] and v["decide"]


def test_witness_replay(tmp_path, capsys):
    rep = tmp_path / "r.json"
    run(capsys, "check", FIXTURES / "twisted-square.alg", "-o", rep)
    code, out = run(capsys, "witness", FIXTURES / "twisted-square.alg", "--verify", rep)
    assert code == 0 and json.loads(out.out)["replay"] == {"decide": True}
    run(capsys, "check", FIXTURES / "local-loops.alg", "-o", rep)
    code, out = run(capsys, "witness", FIXTURES / "local-loops.alg", "--verify", rep)
    assert json.loads(out.out)["replay"] == {"fuller": True, "decide": True}


def test_subalgebra_and_d4free(capsys):
    code, out = run(capsys, "subalgebra", FIXTURES / "five-vertex.alg", "--variant", "d4")
    data = json.loads(out.out)
    assert code == 0 and data["biserial"] is False
    assert data["neighbors"]["3"]["N"] == ["1", "2", "4", "5"]
    assert len(data["neighbors"]["3"]["J"]) == 4
    code, out = run(capsys, "d4free", FIXTURES / "d4-outward.alg")
    data = json.loads(out.out)
    assert data["obstruction"]["kind"] == 1 and data["obstruction"]["certified"]
    assert data["loewy_two"]["local_m3"] == {"quiver": True, "modules": True}


def test_export_dot(capsys):
    code, out = run(capsys, "export-dot", FIXTURES / "a3-linear.alg")
    assert code == 0 and out.out.startswith("digraph") and '"2" -> "3" [label="b"];' in out.out


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("field = 3\nvertex 1\narrow a: 1 -> 1\nrelation a*\n")
    code, out = run(capsys, "check", bad)
    assert code == 1 and "line 4" in out.err
    loop = tmp_path / "loop.alg"
    loop.write_text("field = 3\nvertex 1\narrow a: 1 -> 1\n")
    code, _ = run(capsys, "check", loop)
    assert code == 1
    code, _ = run(capsys, "check", FIXTURES / "twisted-square.alg", "--obstruction-budget", "0", "--strict")
    assert code == 3


def test_generate_and_corpus(tmp_path, capsys):
    d = tmp_path / "gen"
    code, _ = run(capsys, "generate", "--kind", "normal-form", "--count", "4", "--seed", "1", "--out", d)
    assert code == 0 and len(list(d.glob("*.alg"))) == 4
    code, out = run(capsys, "corpus", d, "--count", "4", "--seed", "2", "--jobs", "2", "--reports", tmp_path / "all.json")
    summary = json.loads(out.out)
    assert code == 0 and summary["instances"] == 8 and not summary["disagreements"]
    assert summary["biserial"] >= 4
    assert len(json.loads((tmp_path / "all.json").read_text())) == 8


def test_p_two_flagged(tmp_path, capsys):
    fp = tmp_path / "two.alg"
    fp.write_text((FIXTURES / "twisted-square.alg").read_text().replace("field = 3", "field = 2"))
    code, out = run(capsys, "check", fp)
    report = json.loads(out.out)
    assert code == 0 and report["p"] == 2
    assert any(n.startswith("p = 2") for n in report["notes"])
