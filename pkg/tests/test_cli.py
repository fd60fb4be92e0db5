import io
import json
import subprocess
import sys

import pytest

from numerositas.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_num_prints_value_and_threshold():
    assert call("num", "Q") == (0, "2*a^2 + 1\nthreshold 1\n", "")


def test_num_of_real_interval_is_axiomatic():
    code, out, _ = call("num", "rint[0,1]")
    assert code == 0 and out == "b + 1\nthreshold axiomatic\n"


def test_count():
    assert call("count", "--level", "2", "Q")[:2] == (0, "33\n")


def test_verify_passes():
    code, out, _ = call("verify", "--max-level", "3", "mult(3)")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "m\tn_m\tbrute\tclosed\tmatch"
    assert lines[1] == "3\t46656\t15552\t15552\tyes"
    assert lines[-1] == "PASS"


def test_ord():
    assert call("ord", "(w+1) <*> (w+1)")[:2] == (0, "w^2 + w*2 + 1\n")


def test_ord_theta_base():
    code, out, _ = call("ord", "--theta-base", "1", "w^(w*2+3)*5 + w^4")
    assert code == 0
    assert out.splitlines() == ["w^(w*2+3)*5 + w^4", "T1^2*(w^3*5) + T1^0*(w^4)"]


def test_measure_of_plurinterval_and_set():
    assert call("measure", "[2,5) u [7,9)")[:2] == (0, "5\n")
    assert call("measure", "--unit", "alpha", "mult(2)")[:2] == (0, "1/2\n")
    assert call("measure", "--unit", "beta", "rint[0,3/4)")[:2] == (0, "3/4\n")


def test_standard_part():
    assert call("st", "(2*a + 1)/(a + 2)")[:2] == (0, "2\n")
    assert call("st", "a")[:2] == (0, "+inf\n")


def test_json_fields():
    _, out, _ = call("num", "--format", "json", "Z")
    assert json.loads(out) == {"value": "2*a + 1", "threshold": 1}
    _, out, _ = call("count", "--format", "json", "--level", "1", "Z")
    assert json.loads(out) == {"value": 3, "level": 1}
    _, out, _ = call("verify", "--format", "json", "--max-level", "2", "N")
    data = json.loads(out)
    assert data["passed"] is True and [r["m"] for r in data["report"]] == [1, 2]
    assert set(data["report"][0]) >= {"m", "n_m", "brute", "closed", "match"}
    _, out, _ = call("measure", "--format", "json", "[0,1)")
    assert json.loads(out) == {"measure": "1", "unit": "beta"}
    _, out, _ = call("st", "--format", "json", "1/a")
    assert json.loads(out) == {"value": "0"}
    _, out, _ = call("ord", "--format", "json", "--theta-base", "0", "w*2+1")
    assert json.loads(out) == {"value": "w*2 + 1", "theta_base": "T0^1*(2) + T0^0*(1)"}


@pytest.mark.parametrize(
    "argv, code",
    [
        (("num", "union(N"), 1),
        (("ord", "w +"), 1),
        (("st", "a +* 2"), 1),
        (("num", "inter(ffin(N,N), ffin(N,N0))"), 2),
        (("num", "ffin(N, {})"), 2),
        (("ord", "--theta-base", "0", "w^w"), 2),
        (("st", "1/0"), 2),
        (("measure", "--unit", "alpha", "{1}"), 0),
        (("count", "--level", "4", "Q"), 3),
        (("count", "--level", "12", "{1}"), 3),
        (("st", "9^9^9^9"), 3),
        (("st", "(a+1)^100000"), 3),
        (("ord", "9^9^9^9"), 3),
        (("st", "(a+1)^(1/2)"), 2),
    ],
)
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code
    if code:
        assert out == "" and err.strip()


def test_verify_failure_exit_code(monkeypatch):
    from numerositas import cli
    from numerositas.numerosity import Check, Report

    monkeypatch.setattr(cli, "verify", lambda e, m: Report("N", 1, "n", (Check(1, "1", 1, 2, False),)))
    code, out, _ = call("verify", "--max-level", "1", "N")
    assert code == 4 and out.endswith("FAIL\n")


def test_complexity_bound_from_environment(monkeypatch):
    monkeypatch.setenv("NUMEROSITAS_MAX_OPS", "5")
    assert call("count", "--level", "2", "Z")[0] == 3


def test_output_is_deterministic():
    argv = ("verify", "--format", "json", "--max-level", "3", "union(mult(2), mult(3))")
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "numerositas", "num", "pfin(N)"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "2^(a)\nthreshold 1\n"
