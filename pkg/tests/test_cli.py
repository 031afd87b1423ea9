import io
import json
import subprocess
import sys

import pytest

from branchcov.cli import run

GAMMA = "-2,-2,-2,-2,-1,2,2,2,2,2,-3,-4,5,6,-7,-8,9"


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, json.loads(buf.getvalue()), buf.getvalue()


def test_sicup_verify():
    code, out, _ = call("sicup", "verify", "--first-row", "3,-2,1,1,-2")
    assert code == 0 and out["result"]["verdict"] is True
    code, out, _ = call("sicup", "verify", "--first-row", "2,0,0")
    assert code == 1 and out["result"]["unimodular"] is False


def test_sicup_verify_matrix_file(tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps([[1, 0], [0, 1]]))
    code, out, _ = call("sicup", "verify", "--matrix", str(f))
    assert code == 0


def test_pell_commands():
    code, out, _ = call("pell", "solve", "--count", "3", "--admissible")
    assert code == 0 and [7, -3] in out["result"]["solutions"]
    code, out, _ = call("pell", "m5", "--count", "3")
    assert [m["first_row"] for m in out["result"]["matrices"]][1] == [3, 1, -2, -2, 1]


def test_floer_commands(tmp_path):
    code, out, _ = call("floer", "trace-trivial", "--nu", "0", "--shape", "W", "--n", "0")
    assert code == 1 and out["result"]["trivial"] is False
    code, _, _ = call("floer", "trace-trivial", "--knot", "Torus2(5)", "--n", "3")
    assert code == 0
    code, out, _ = call("floer", "trace-trivial", "--nu", "0", "--n", "3")
    assert code == 1 and out["result"]["trivial"] is None
    code, out, _ = call("floer", "nu", "--knot", "Mirror(Torus2(5))")
    assert code == 0 and out["result"]["nu"] == -3
    m = tmp_path / "m.json"
    m.write_text(json.dumps([[-1, 0], [0, -1]]))
    comps = tmp_path / "c.json"
    comps.write_text(json.dumps(["5_2_negative_clasp", {"nu": -1, "shape": "V"}]))
    code, out, _ = call("floer", "thm-nu", "--matrix", str(m), "--components", str(comps))
    assert code == 0 and out["result"]["witness_index"] == 1
    m.write_text(json.dumps([[1, 0], [0, 1]]))
    code, out, _ = call("floer", "thm-nu", "--matrix", str(m), "--components", str(comps))
    assert code == 1 and "rejected" in out["result"]


def test_tangle_commands():
    code, out, _ = call("tangle", "components", "--braid", GAMMA, "--strands", "10", "--power", "5")
    assert code == 0 and out["result"]["count"] == 5
    code, out, _ = call("tangle", "linking", "--braid", GAMMA, "--strands", "10", "--power", "5", "--framing", "1")
    assert out["result"]["matrix"][0] == [3, -2, 1, 1, -2] and out["result"]["circulant"]
    code, _, _ = call("tangle", "unknot-check", "--braid", GAMMA, "--strands", "10")
    assert code == 0
    code, out, _ = call("tangle", "unknot-check", "--braid", "1,1,1", "--strands", "2")
    assert code == 1 and not out["result"]["passed"]


def test_sigma_commands():
    code, out, _ = call("sigma", "linking", "--m", "3", "--c", "1,1,3,1,1")
    assert code == 0 and out["result"]["match"]
    code, out, _ = call("sigma", "linking", "--m", "2", "--c", "1,3,1")
    assert code == 1 and not out["result"]["match"]
    code, out, _ = call("sigma", "check", "--m", "1", "--c", "3", "--target-row", "1")
    assert code == 0 and out["result"]["verdict"]


def test_twobridge_commands():
    code, out, _ = call("twobridge", "cf", "--fraction", "23/16")
    assert code == 0 and out["result"]["terms"] == [2, -2, 4, 2]
    code, out, _ = call("twobridge", "alexander", "--fraction", "23/7")
    assert out["result"]["alexander"] == [2, -6, 7, -6, 2]
    code, out, _ = call("twobridge", "report", "--fraction", "23/7", "--dmax", "6")
    five = [c for c in out["result"]["covers"] if c["d"] == 5][0]
    assert five["homology_sphere"] and five["verdict"] == "signature criterion applies"


def test_pipeline():
    code, out, _ = call(
        "pipeline", "branched-cover", "--braid", GAMMA, "--strands", "10", "--d", "5", "--component-class", "Torus2(5)"
    )
    assert code == 0 and out["result"]["verdict"]
    assert out["result"]["thm_nu_mirrored"]["case"] == 1
    assert out["warnings"]
    code, out, _ = call("pipeline", "branched-cover", "--braid", GAMMA, "--strands", "10", "--d", "5")
    assert code == 1 and out["result"]["diagram_component_classes"] == ["Unknot"] * 5


def test_input_errors():
    for argv in (
        ["sicup", "enumerate", "--size", "5"],
        ["nonsense"],
        ["twobridge", "cf", "--fraction", "22/7"],
        ["tangle", "components", "--braid", "1,x", "--strands", "3"],
        ["sigma", "check", "--m", "2", "--c", "1,2,1"],
        ["floer", "thm-nu", "--matrix", "/nonexistent.json", "--components", "/nonexistent.json"],
    ):
        code, out, _ = call(*argv)
        assert code == 2 and "error" in out


def test_deterministic_and_pretty():
    argv = ["twobridge", "report", "--fraction", "69/19", "--dmax", "6"]
    assert call(*argv)[2] == call(*argv)[2]
    _, _, pretty = call(*argv, "--pretty")
    assert pretty.count("\n") > 5


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "branchcov", "sicup", "verify", "--first-row", "1,0,0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["verdict"]
