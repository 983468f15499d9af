import csv
import io
import json
import subprocess
import sys

import pytest

from superortho.cli import Outcome, emit, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeff_type(capsys):
    code, out, _ = run(capsys, "coeff", "--type", "3,1")
    assert code == 0 and out.strip() == "2"


def test_coeff_pair_json(capsys):
    code, out, _ = run(capsys, "coeff", "--p1", "1,2|3|4", "--p2", "1,2,3,4", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["value"] == "2" and doc["brute_force"] == "2" and doc["failures"] == []


def test_chains_json(capsys):
    code, out, _ = run(capsys, "chains", "--n", "3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"odd": "3", "even": "1", "d": "2"}


def test_chains_text(capsys):
    code, out, _ = run(capsys, "chains", "--p1", "1|2|3|4", "--p2", "1,2|3,4")
    assert code == 0 and out.strip() == "odd=2 even=1 d=1"


def test_sumcheck_csv(capsys):
    code, out, _ = run(capsys, "sumcheck", "--max", "59", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["m", "reciprocal_sum", "status"]
    body = rows[1:]
    assert len(body) == 58
    assert body[0] == ["2", "1/2", "OK"]
    assert all(r[2] == "OK" and "/" in r[1] for r in body)


def test_constants_json(capsys):
    code, out, _ = run(capsys, "constants", "--r", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["C"] == ["9", "8", "6"]
    assert abs(doc["paper_bound"] - 7.9985) < 1e-3
    assert abs(doc["prior_bound"] - 6.7823) < 1e-4
    assert 3.08 < doc["exact_root"]["lo"] < doc["exact_root"]["hi"] < 3.10


def test_identity_text(capsys):
    code, out, _ = run(capsys, "identity", "--n", "3", "--L", "2", "--seed", "4")
    assert code == 0 and "ALL CHECKS PASSED" in out


def test_identity_is_deterministic(capsys):
    _, first, _ = run(capsys, "identity", "--n", "3", "--L", "3", "--seed", "7", "--format", "json")
    _, second, _ = run(capsys, "identity", "--n", "3", "--L", "3", "--seed", "7", "--format", "json")
    assert first == second


def test_stirling(capsys):
    code, out, _ = run(capsys, "stirling", "--n", "6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["n", "k", "S(n,k)"]
    assert ["5", "3", "25"] in rows


def test_example_pass_and_fail(capsys):
    code, out, _ = run(capsys, "example", "--r", "2", "--s0", "1", "--N", "2")
    assert code == 0 and "ALL CHECKS PASSED" in out
    code, out, _ = run(capsys, "example", "--r", "2", "--s0", "0", "--N", "2", "--format", "json")
    assert code == 1
    assert json.loads(out)["failures"]


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--seed", "1")
    assert code == 0
    assert sum(line.startswith("PASS ") for line in out.splitlines()) == 8


@pytest.mark.parametrize("argv", [
    ["coeff", "--bogus"],
    ["coeff", "--type", "2,0"],
    ["identity", "--n", "3", "--L", "2"],
    ["chains", "--n", "3", "--format", "xml"],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["coeff", "--p1", "1,2|3", "--p2", "1,3|2"],
    ["chains", "--n", "9"],
    ["constants", "--r", "0"],
    ["example", "--r", "3", "--s0", "0", "--N", "6", "--budget", "10"],
])
def test_domain_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_emit_formats():
    oc = Outcome({"big": 10**30, "ok": True}, "done", ["a"], [[1]])
    assert json.loads(emit(oc, "json")) == {"big": str(10**30), "ok": True}
    assert emit(oc, "text") == "done\nALL CHECKS PASSED\n"
    assert emit(oc, "csv") == "a\n1\n"
    failing = Outcome({}, "bad", [], [], failures=["x"])
    assert "ALL CHECKS PASSED" not in emit(failing, "text")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superortho", "coeff", "--type", "2,2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
