# tests/test_cli.py
import json
import math

import pandas as pd
import pytest

from cli.app import main


def _run(tmp_path, *argv):
    code = main([*argv, "--out", str(tmp_path)])
    return code


def _result(tmp_path, command):
    with open(tmp_path / f"{command}.json", "r", encoding="utf-8") as f:
        return json.load(f)


# ==================== MEASURE / CERTIFY ====================

def test_measure_matrix(tmp_path):
    assert _run(tmp_path, "measure", "--matrix", "[[-2, 1], [1, -2]]", "--p", "2") == 0
    payload = _result(tmp_path, "measure")
    assert payload["status"] == "ok"
    assert payload["exit_code"] == 0
    assert payload["result"]["value"] == pytest.approx(-1.0, abs=1e-12)
    assert payload["result"]["exact"]
    assert payload["defaults"]["tolerance"] == 0.01


def test_measure_enzyme_jacobian(tmp_path):
    assert _run(tmp_path, "measure", "--model", "enzyme", "--point", "0,0", "--q", "1.25") == 0
    payload = _result(tmp_path, "measure")
    assert payload["result"]["value"] == pytest.approx(-0.2, abs=1e-12)
    assert payload["result"]["norm"] == {"p": 1.0, "q": [1.0, 1.25]}
    assert payload["result"]["source"] == "jacobian:enzyme"


def test_certify_exit_codes(tmp_path):
    assert _run(tmp_path, "certify", "--q", "1.25", "--points", "65", "--cap", "10") == 0
    payload = _result(tmp_path, "certify")
    assert payload["result"]["rate_c"] == pytest.approx(-0.2, abs=1e-9)
    assert payload["result"]["certificate"]["verdict"] == "contractive"

    assert _run(tmp_path, "certify", "--points", "65", "--cap", "10") == 2
    payload = _result(tmp_path, "certify")
    assert payload["status"] == "refused"
    assert payload["exit_code"] == 2
    assert payload["result"]["certificate"] is None


def test_impossibility_command(tmp_path):
    assert _run(tmp_path, "impossibility", "--p", "2", "--q", "0.1,1,10") == 0
    witnesses = _result(tmp_path, "impossibility")["result"]["witnesses"]
    assert len(witnesses) == 3
    assert all(w["lower_bound"] > 0 for w in witnesses)
    assert witnesses[1]["witness_point"] == [7.0, 2.0]


def test_search_weights_with_single_candidate(tmp_path):
    assert _run(tmp_path, "search-weights", "--q", "1", "--points", "9", "--cap", "10") == 2
    payload = _result(tmp_path, "search-weights")
    assert payload["status"] == "refused"
    assert payload["result"]["evaluations"] == 1
    assert not payload["result"]["certified"]
    assert payload["result"]["certificate"] is None


def test_repeated_runs_are_identical(tmp_path):
    def snapshot(*argv):
        assert _run(tmp_path, *argv) in (0, 2)
        text = (tmp_path / f"{argv[0]}.json").read_text(encoding="utf-8")
        return [line for line in text.splitlines() if '"timestamp"' not in line]

    args = ("certify", "--q", "1.25", "--points", "33", "--cap", "10")
    assert snapshot(*args) == snapshot(*args)

    args = ("simulate-network", "--graph", "path-3", "--q", "1.25", "--t-end", "1", "--seed", "7")
    first = snapshot(*args)
    first_csv = (tmp_path / "simulate-network.csv").read_bytes()
    assert snapshot(*args) == first
    assert (tmp_path / "simulate-network.csv").read_bytes() == first_csv


# ==================== SIMULATE / SYNC ====================

def test_sync_command_writes_csv(tmp_path):
    code = _run(tmp_path, "sync", "--model", "counterexample", "--graph", "path-3",
                "--p", "2", "--t-end", "2")
    assert code == 0
    payload = _result(tmp_path, "sync")
    assert payload["result"]["lambda"] == pytest.approx(1.0)
    assert payload["result"]["guarantee"]
    frame = pd.read_csv(payload["csv"])
    assert list(frame.columns) == ["t", "W", "envelope", "margin"]
    assert len(frame) == 201


def test_simulate_pde_command(tmp_path):
    code = _run(tmp_path, "simulate-pde", "--cells", "8", "--t-end", "1", "--q", "1.25")
    assert code == 0
    payload = _result(tmp_path, "simulate-pde")
    assert payload["result"]["rate_c"] == pytest.approx(-0.2, abs=1e-9)
    assert payload["result"]["bound_ok"]
    assert (tmp_path / "simulate-pde.csv").exists()


def test_simulate_network_verdicts(tmp_path):
    args = ("simulate-network", "--graph", "complete-3", "--q", "1.25", "--t-end", "2")
    assert _run(tmp_path, *args) == 0
    assert _result(tmp_path, "simulate-network")["result"]["bound_ok"]

    assert _run(tmp_path, *args, "--rate", "-50") == 2
    payload = _result(tmp_path, "simulate-network")
    assert payload["status"] == "violated"
    assert not payload["result"]["bound_ok"]


def test_stiff_network_gets_stable_default_step(tmp_path):
    args = ("simulate-network", "--graph", "complete-3", "--q", "1.25", "--diffusion", "100", "--t-end", "0.5")
    assert _run(tmp_path, *args) == 0
    payload = _result(tmp_path, "simulate-network")
    assert payload["result"]["steps"] == math.ceil(0.5 / (0.9 * 2.0 / 300.0) - 1e-9)


def test_domain_escape_is_reported_as_numerical_failure(tmp_path, capsys):
    args = ("simulate-network", "--graph", "complete-3", "--q", "1.25", "--diffusion", "100",
            "--t-end", "2", "--dt", "0.5")
    assert _run(tmp_path, *args) == 2
    err = capsys.readouterr().err
    assert "--dt" in err
    assert not (tmp_path / "simulate-network.json").exists()


# ==================== ОШИБКИ ВХОДА ====================

@pytest.mark.parametrize("argv", [
    ("measure", "--matrix", "[[1]]", "--p", "0.5"),
    ("certify", "--model", "brusselator"),
    ("certify", "--model", "counterexample", "--zeta", "0.25"),
    ("simulate-network",),
    ("measure",),
])
def test_input_errors_exit_with_one(tmp_path, argv):
    assert _run(tmp_path, *argv) == 1


def test_unknown_command(tmp_path):
    assert _run(tmp_path, "integrate") == 1


def test_missing_config_file(tmp_path):
    assert _run(tmp_path, "--config", str(tmp_path / "missing.json")) == 1


def test_config_file_with_flag_override(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"command": "measure", "matrix": [[-1.0, 3.0], [0.0, -2.0]], "p": 1}),
                      encoding="utf-8")
    assert _run(tmp_path, "--config", str(config)) == 0
    assert _result(tmp_path, "measure")["result"]["value"] == pytest.approx(1.0)

    assert _run(tmp_path, "--config", str(config), "--p", "inf") == 0
    payload = _result(tmp_path, "measure")
    assert payload["result"]["value"] == pytest.approx(2.0)
    assert payload["config"]["p"] == "inf"
