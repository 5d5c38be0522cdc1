import json
import subprocess
import sys

import pytest

PKG = [sys.executable, "-m", "gkmhess"]


def run_cli(*args):
    return subprocess.run(
        PKG + list(args), capture_output=True, text=True, timeout=600
    )


def run_json(*args):
    proc = run_cli(*args)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_support_example():
    data = run_json("support", "--n", "5", "--h", "3,3,4,5,5", "--w", "24135")
    assert data["schema"] == 1
    assert data["support"] == sorted(
        ["24135", "24153", "24351", "24315", "24531", "24513",
         "42135", "42153", "42351", "42315", "42531", "42513"]
    )


def test_gkm_graph_output():
    data = run_json("gkm-graph", "--n", "3", "--h", "2,3,3")
    assert data["vertices"] == ["123", "132", "213", "231", "312", "321"]
    edges = {(e["src"], e["dst"]): e["label"] for e in data["edges"]}
    assert edges[("132", "312")] == "t3-t1"
    assert edges[("123", "132")] == "t3-t2"
    assert len(edges) == 6


def test_cell_chart_output():
    data = run_json("cell-chart", "--w", "24135", "--h", "3,3,4,5,5")
    assert data["free_variables"] == ["2,1", "4,3", "5,4"]
    assert data["entries"]["5,3"] == "1/3*x4_3*x5_4"
    assert data["entries"]["3,1"] == "0"


def test_class_and_expand_round_trip(tmp_path):
    data = run_json("class", "--permutohedral", "--w", "1324")
    assert data["degree"] == 1
    path = tmp_path / "class.json"
    path.write_text(json.dumps(data))
    expanded = run_json("expand", "--input", str(path), "--h", "2,3,4,4")
    assert expanded["coefficients"] == {"1324": "1"}


def test_dot_output():
    data = run_json("dot", "--permutohedral", "--w", "13245", "--gen", "2")
    assert data["expansion"]["12345"] == "-t2+t3"
    assert data["expansion"]["34512"] == "1"
    assert data["expansion"]["21345"] == "-1"


def test_action_matrix_output():
    data = run_json("action-matrix", "--k", "1", "--perm", "2134", "--h", "permutohedral")
    order = data["basis"]
    matrix = data["matrix"]
    # s_1 moves the class at 1324 to the class at 2314 (values 1,2 not adjacent)
    assert matrix[order.index("2314")][order.index("1324")] == "1"
    assert matrix[order.index("1324")][order.index("1324")] == "0"


def test_decompose_output():
    data = run_json("decompose", "--n", "4", "--k", "2")
    assert data["passed"] is True
    assert data["eulerian"] == 11
    types = sorted(tuple(m["module_type"]) for m in data["modules"])
    assert types == [(2, 2), (3, 1), (4,)]


def test_decompose_emit_basis():
    data = run_json("decompose", "--n", "4", "--k", "1", "--emit-basis")
    assert data["passed"] is True
    # one ordinary vector per coset, eleven in total across the modules
    assert len(data["basis_vectors"]) == 11


def test_chromatic_output():
    data = run_json("chromatic", "--n", "3", "--h", "3,3,3", "--basis", "e")
    assert data["by_degree"][0] == {"e[3]": "1"}
    assert data["by_degree"][1] == {"e[3]": "2"}


def test_verify_suite_exit_codes():
    proc = run_cli("verify", "wz", "--n", "4")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["passed"] is True


def test_usage_error_exit_code():
    proc = run_cli("support", "--bogus-flag")
    assert proc.returncode == 2


def test_unknown_subcommand_exit_code():
    proc = run_cli("frobulate")
    assert proc.returncode == 2


def test_determinism():
    args = ("support", "--n", "4", "--h", "2,3,4,4", "--w", "2143", "--seed", "5")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.stdout == second.stdout
    assert first.returncode == second.returncode == 0


@pytest.mark.parametrize(
    "golden,args",
    [
        ("support_24135.json", ("support", "--n", "5", "--h", "3,3,4,5,5", "--w", "24135")),
        ("gkm_graph_233.json", ("gkm-graph", "--n", "3", "--h", "2,3,3")),
        ("verify_wz_4.json", ("verify", "wz", "--n", "4", "--seed", "3")),
    ],
)
def test_golden_outputs(golden, args):
    import pathlib

    expected = (pathlib.Path(__file__).parent / "golden" / golden).read_text()
    proc = run_cli(*args)
    assert proc.stdout == expected


def test_expand_uncertified_h_exits_one(tmp_path):
    # a basis that interpolation cannot pin down is refused, not guessed
    data = run_json("class", "--permutohedral", "--w", "2143")
    path = tmp_path / "cls.json"
    path.write_text(json.dumps(data))
    proc = run_cli("expand", "--input", str(path), "--h", "2,4,4,4")
    assert proc.returncode == 1
    assert "error" in proc.stderr or proc.stdout


def test_threaded_runs_are_deterministic():
    import os

    env = dict(os.environ, GKM_HESS_THREADS="4")
    args = PKG + ["verify", "supports", "--n", "3", "--seed", "11"]
    first = subprocess.run(args, capture_output=True, text=True, env=env, timeout=600)
    second = subprocess.run(args, capture_output=True, text=True, env=env, timeout=600)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_verify_small_battery():
    payload = run_json("verify", "poincare", "--n", "4")
    assert payload["passed"] is True
    names = [c["name"] for c in payload["checks"]]
    assert names == ["poincare"]
