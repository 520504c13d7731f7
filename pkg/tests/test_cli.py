import json
import subprocess
import sys

import pytest

from leavitt.cli import main

ROSE2 = "vertex v\nedge y1 v v\nedge y2 v v\n"
CLOCK = "vertex v\nvertex w1\nvertex w2\nvertex w3\nedge f v w1\nedge g v w2\nedge h v w3\n"
CHAIN = (
    "vertex v1\nvertex v2\nvertex v3\n"
    "edge f1 v1 v1\nedge g1 v1 v1\nedge f2 v2 v2\nedge g2 v2 v2\nedge f3 v3 v3\nedge g3 v3 v3\n"
    "edge e1 v2 v1\nedge e2 v3 v2\n"
)
SINGLE = "vertex v\nvertex w\nedge f v w\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_rose(write, capsys):
    code, out, _ = run(capsys, "analyze", write("r.g", ROSE2), "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["properties"]["acyclic"] is False
    assert rep["properties"]["cofinal"] is True
    assert rep["properties"]["directly_finite"] is False
    assert list(rep) == ["graph", "properties", "cofinality_witness", "dimension", "shape", "checks"]


def test_analyze_single_edge(write, capsys):
    code, out, _ = run(capsys, "analyze", write("s.g", SINGLE), "--json")
    rep = json.loads(out)
    assert rep["properties"]["von_neumann_regular"] is True
    assert rep["shape"]["k_blocks"] == [2] and rep["dimension"] == 4


def test_analyze_text(write, capsys):
    code, out, _ = run(capsys, "analyze", write("c.g", CLOCK))
    assert code == 0 and "dimension: 12" in out and "sources: v" in out


def test_empty_file_is_input_error(write, capsys):
    code, _, err = run(capsys, "analyze", write("e.g", ""))
    assert code == 2 and "error" in err


def test_parse_error_reports_line(write, capsys):
    code, _, err = run(capsys, "analyze", write("bad.g", "vertex v\nedge f v nowhere\n"))
    assert code == 2 and "line 2" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/graph.g")
    assert code == 2 and "cannot read" in err


def test_ef_examples(write, capsys):
    code, out, _ = run(capsys, "ef", write("r.g", ROSE2), "--edges", "y1")
    assert code == 0
    assert "edge (y1,y1) y1 y1" in out and "edge (y1,v) y1 v" in out
    code, out, _ = run(capsys, "ef", write("ch.g", CHAIN), "--edges", "f1,g1", "--verify")
    assert code == 0
    assert sum(ln.startswith("edge ") for ln in out.splitlines()) == 4
    assert "FAIL" not in out
    code, out, _ = run(capsys, "ef", write("r2.g", ROSE2), "--edges", "")
    assert code == 0 and out == ""


def test_ef_unknown_edge(write, capsys):
    code, _, err = run(capsys, "ef", write("r.g", ROSE2), "--edges", "y9")
    assert code == 2 and "y9" in err


def test_reduce(write, capsys):
    g = write("r.g", ROSE2)
    assert run(capsys, "reduce", g, "--expr", "y1* y1")[1] == "v\n"
    assert run(capsys, "reduce", g, "--expr", "v - y1 y1* - y2 y2*")[1] == "0\n"
    assert run(capsys, "reduce", g, "--expr", "2/3 v + 1/3 v")[1] == "v\n"
    code, out, _ = run(capsys, "reduce", g, "--expr", "y1 y1*", "--json")
    assert json.loads(out) == [
        {"real": [], "ghost": [], "base": "v", "coeff": "1/1"},
        {"real": ["y2"], "ghost": ["y2"], "base": None, "coeff": "-1/1"},
    ]


def test_reduce_errors(write, capsys):
    g = write("r.g", ROSE2)
    code, _, err = run(capsys, "reduce", g, "--expr", "v + + y1")
    assert code == 2 and "position" in err
    code, _, err = run(capsys, "reduce", g, "--expr", "z1")
    assert code == 2


def test_reduce_prime_field(write, capsys):
    code, out, _ = run(capsys, "reduce", write("r.g", ROSE2), "--expr", "3 y1 + 4 y1", "--field", "fp:7")
    assert out == "0\n"


def test_subalg_clock(write, capsys):
    code, out, _ = run(capsys, "subalg", write("c.g", CLOCK), "--exprs", write("a.txt", "v + f\n"))
    assert code == 0
    assert "S4: v" in out and "u_v = " in out and "FAIL" not in out
    code, out, _ = run(capsys, "subalg", write("c.g", CLOCK), "--exprs", write("a.txt", "v + f\n"), "--json")
    data = json.loads(out)
    assert data["s4_idempotents"] == {"v": "g g* + h h*"}
    assert all(c["status"] == "pass" for c in data["report"])


def test_subalg_zero_input(write, capsys):
    code, _, err = run(capsys, "subalg", write("c.g", CLOCK), "--exprs", write("z.txt", "0\n"))
    assert code == 2 and "zero element" in err


def test_subalg_chain_loops(write, capsys):
    code, out, _ = run(capsys, "subalg", write("ch.g", CHAIN), "--exprs", write("a.txt", "f1 + g1\n"), "--json")
    data = json.loads(out)
    assert code == 0 and data["partition"]["S"] == [] and data["s4_idempotents"] == {}


def test_failed_check_exits_1(write, capsys):
    # at bound 0 the edge f is out of reach, so membership of v + f fails
    code, out, _ = run(capsys, "subalg", write("c.g", CLOCK), "--exprs", write("a.txt", "v + f\n"), "--bound", "0")
    assert code == 1 and "FAIL  membership" in out


def test_theta_check(write, capsys):
    code, out, _ = run(capsys, "theta-check", write("c.g", CHAIN), "--json")
    assert code == 0 and all(c["status"] == "pass" for c in json.loads(out))


def test_dual(write, capsys):
    code, out, _ = run(capsys, "dual", write("s.g", SINGLE))
    assert code == 0 and out.startswith("vertex f\nvertex w\nedge f.w f w\n")


def test_structure(write, capsys):
    code, out, _ = run(capsys, "structure", write("r.g", "vertex v\nedge y1 v v\n"))
    assert json.loads(out) == {
        "acyclic": False,
        "no_exit": True,
        "directly_finite": True,
        "von_neumann_regular": False,
        "shape": {"k_blocks": [], "laurent_blocks": [1]},
    }
    code, out, _ = run(capsys, "structure", write("c.g", CLOCK), "--bezout", write("b.txt", "f\ng\n"))
    assert code == 0 and json.loads(out)["bezout"]["generator"]


def test_output_is_deterministic(write, capsys):
    g, a = write("c.g", CLOCK), write("a.txt", "v + f\nw1 + 2 g*\n")
    first = run(capsys, "subalg", g, "--exprs", a, "--json", "--seed", "3")
    second = run(capsys, "subalg", g, "--exprs", a, "--json", "--seed", "3")
    assert first == second


def test_console_entry_point(write):
    proc = subprocess.run(
        [sys.executable, "-m", "leavitt.cli", "reduce", write("r.g", ROSE2), "--expr", "y1 y1*"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "v - y2 y2*\n"
