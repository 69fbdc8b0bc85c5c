import json

import pytest

from coneavoid.cli import main
from coneavoid.problemfile import parse_coloring, parse_problem, render_coloring
from coneavoid.patterns import FiniteColoring


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_graphs_listing(capsys):
    code, out, _ = run(capsys, "graphs", "--family", "largeness", "--size", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "largeness:3:[]" and lines[-1] == "count=5 (C_3)"


def test_graphs_json(capsys):
    code, out, _ = run(capsys, "graphs", "--family", "packed", "--size", "4", "--json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 5 and len(data["graphs"]) == 5


def test_graphs_cap(capsys):
    code, _, err = run(capsys, "graphs", "--family", "largeness", "--size", "9", "--cap-graphs", "10")
    assert code == 2 and "predicted 4862" in err


def test_decide_exit_codes(capsys, tmp_path):
    assert run(capsys, "decide", "--builtin", "RT(1,2)")[0] == 0
    code, out, _ = run(capsys, "decide", "--builtin", "RT22-LITERAL", "--mode", "sca")
    assert code == 10 and "largeness:4:[{0,1}]" in out
    assert run(capsys, "decide", "--builtin", "FS(3)")[0] == 2
    assert run(capsys, "decide", "--builtin", "NOPE")[0] == 1
    assert run(capsys, "decide", str(tmp_path / "missing.txt"))[0] == 1
    assert run(capsys, "decide", "--builtin", "THIN(2,3,1)")[0] == 10
    assert run(capsys, "decide", "--builtin", "THIN(3,5,3)", "--r-max", "3")[0] == 2


def test_usage_error_is_input_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decide"])
    assert exc.value.code == 1


def test_decide_json(capsys):
    code, out, _ = run(capsys, "decide", "--builtin", "RT(2,2)", "--mode", "arith-sca", "--json")
    data = json.loads(out)
    assert code == 10
    assert set(data) == {"problem", "mode", "outcome", "witness", "stats"}
    assert data["witness"]["chi"] == [0, 1]


def test_export_round_trip(capsys, tmp_path):
    target = tmp_path / "ads.txt"
    assert run(capsys, "export", "ADS", "-o", str(target))[0] == 0
    prob = parse_problem(target.read_text())
    assert prob.name == "ADS" and len(prob.promise) == 2
    code, out, _ = run(capsys, "decide", str(target), "--mode", "ca")
    assert code == 0 and "avoids" in out


def test_bad_problem_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("name = X\nn = 2\nk = 2\n[forbid]\nf({0,1)=0\n")
    code, _, err = run(capsys, "decide", str(bad))
    assert code == 1 and "line 5" in err


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog", "--entry", "EM", "--entry", "FS(3)", "--mode", "sca")
    assert code == 0
    assert "skipped" in out and out.splitlines()[-1] == "2 rows, 0 mismatches"


def write_staged(tmp_path, text):
    p = tmp_path / "mu.txt"
    p.write_text(text)
    return str(p)


def test_simulate_transform(capsys, tmp_path):
    f = write_staged(tmp_path, "horizon=2\n0: 0 0\n1: 2 0\nlimit: 2 0\n")
    code, out, _ = run(capsys, "simulate", "transform", f)
    assert code == 0
    assert "1: 2 2" in out and "limit: 2 2" in out and "strongly increasing: True" in out


def test_simulate_census_and_thin(capsys, tmp_path):
    rows = "\n".join(f"{s}: " + " ".join(str(2 * x + 2) for x in range(6)) for s in range(6))
    f = write_staged(tmp_path, f"horizon=6\n{rows}\nlimit: " + " ".join(str(2 * x + 2) for x in range(6)) + "\n")
    code, out, _ = run(capsys, "simulate", "census", f, "--family", "vector", "--n", "2")
    assert code == 0 and "vector:2:[{0,1}]" in out
    code, out, _ = run(capsys, "simulate", "thin", f, "--points", "0,1,5")
    assert code == 0 and out.strip() == "0 1 5"


def test_simulate_realize(capsys):
    code, out, _ = run(capsys, "simulate", "realize", "largeness:3:[{0,2},{1,2}]")
    assert code == 0 and "# graph_of = largeness:3:[{0,2},{1,2}]" in out


def test_simulate_modulus_from(capsys, tmp_path):
    f = FiniteColoring.constant(2, 2, range(3), 1)
    p = tmp_path / "f.txt"
    p.write_text(render_coloring(f))
    assert parse_coloring(p.read_text()) == f
    code, out, _ = run(capsys, "simulate", "modulus-from", str(p), "--small", "0", "--large", "1")
    assert code == 0 and out.strip() == "0:1 1:2 2:w"
