from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from polychrom.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, run
from polychrom.structure import ordered_coloring


def call(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize(
    "family,q,n",
    [("f", 0, 8), ("f", 2, 10), ("c", 0, 7), ("c", 1, 4), ("c", 2, 5), ("c", 3, 8), ("r", 0, 7), ("r", 1, 9), ("r", 3, 11)],
)
def test_construct_then_verify(tmp_path, family, q, n):
    path = tmp_path / "col.json"
    code, _ = call("construct", "--family", family, "--q", str(q), "--n", str(n), "--out", str(path))
    assert code == EXIT_OK
    code, text = call("verify", "--family", family, "--q", str(q), "--in", str(path))
    assert code == EXIT_OK
    assert json.loads(text)["polychromatic"] is True


def test_construct_is_deterministic():
    assert call("construct", "--family", "r", "--n", "12") == call("construct", "--family", "r", "--n", "12")


def test_verify_reports_failure(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(ordered_coloring([1, 1, 2, 2]).to_json()))
    code, text = call("verify", "--family", "f", "--in", str(path))
    assert code == EXIT_FAIL
    assert json.loads(text)["polychromatic"] is False


def test_input_errors(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert call("verify", "--family", "f", "--in", str(path))[0] == EXIT_INPUT
    assert call("construct", "--family", "f", "--n", "7")[0] == EXIT_INPUT
    assert call("construct", "--family", "f")[0] == EXIT_INPUT
    assert call("number", "--family", "rr", "--n", "7")[0] == EXIT_INPUT
    assert call("bogus")[0] == EXIT_INPUT


def test_budget_exit_code():
    assert call("search", "--family", "c", "--n", "7", "--mode", "full")[0] == EXIT_BUDGET
    assert call("search", "--family", "f", "--n", "30", "--mode", "blocks")[0] == EXIT_BUDGET


def test_number_and_ramsey():
    code, text = call("number", "--family", "c", "--q", "1", "--n", "4")
    assert code == EXIT_OK and json.loads(text)["value"] == 3
    code, text = call("ramsey", "--t", "3", "--s", "17")
    assert json.loads(text)["value"] == 20
    code, text = call("ramsey", "--t", "3", "--s", "5", "--mode", "brute")
    assert json.loads(text) == {"s": 5, "t": 3, "j": 2, "value": 6, "provenance": "brute-force"}
    code, text = call("ramsey", "--t", "3", "--table", "--s-min", "4", "--s-max", "6")
    lines = text.strip().splitlines()
    assert lines[0].split("\t") == ["s", "pr", "provenance"]
    assert len(lines) == 4


def test_normalize(tmp_path):
    path = tmp_path / "ordered.json"
    path.write_text(json.dumps(ordered_coloring([1, 2, 2, 1, 3, 3, 3, 3, 3, 3]).to_json()))
    code, text = call("normalize", "--family", "f", "--in", str(path))
    assert code == EXIT_OK
    assert json.loads(text)["k"] == 3


def test_search_and_seed():
    code, text = call("search", "--family", "c", "--q", "1", "--n", "4", "--mode", "full")
    assert code == EXIT_OK and json.loads(text)["best_k"] == 3
    code, text = call("search", "--family", "r", "--n", "9", "--mode", "quasi")
    assert json.loads(text)["best_k"] == 4
    code, text = call("seed", "--r", "3")
    assert code == EXIT_OK and json.loads(text)["k"] == 5
    assert call("seed")[0] == EXIT_INPUT


def test_probe_is_reproducible():
    first = call("probe", "--seed", "3", "--count", "5")
    assert first[0] == EXIT_OK
    assert first == call("probe", "--seed", "3", "--count", "5")


def test_module_entry_point_pipes():
    built = subprocess.run(
        [sys.executable, "-m", "polychrom", "construct", "--family", "c", "--q", "0", "--n", "9"],
        capture_output=True, text=True, check=True,
    )
    checked = subprocess.run(
        [sys.executable, "-m", "polychrom", "verify", "--family", "c", "--q", "0"],
        input=built.stdout, capture_output=True, text=True,
    )
    assert checked.returncode == EXIT_OK
    assert json.loads(checked.stdout)["k"] == 4
