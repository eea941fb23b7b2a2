import io
import subprocess
import sys

import pytest

from simfuzz.cli import EXIT_ERROR, EXIT_FAIL, EXIT_OK, EXIT_USAGE, run_command


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_sm_prints_exact_value():
    assert run("sm", "example2.rules", "A11", "A1star") == (EXIT_OK, "3/4\n", "")
    assert run("sm", "example2.rules", "A12", "A2star")[1] == "60/73\n"


def test_sm_unknown_set():
    code, _, err = run("sm", "example2.rules", "A11", "Nope")
    assert code == EXIT_ERROR and "Nope" in err


def test_fmp_type1():
    code, out, _ = run("fmp", "example2.rules", "example2.obs", "--type", "1")
    assert code == EXIT_OK
    assert "pwl on y [0, 1]: (0, 3/4) (1/5, 3/5) (1, 1)" in out


def test_fmp_trace_csv_and_check():
    code, out, _ = run("fmp", "example2.rules", "example2.obs", "--type", "2", "--trace",
                       "--csv", "5", "--check", "1e-9")
    assert code == EXIT_OK
    assert "rule R1: similarities 3/4, 60/73" in out
    assert "(0, 1) (13/73, 1) (43/103, 73/103) (1, 1)" in out
    # 73/60 * 3/4 = 73/80 from rule 1 beats (1 + 1/4) / 2 from rule 2
    assert "x,value\n0,1.000000\n0.25,0.912500\n0.5,0.750000\n" in out
    assert "pass" in out and "fail" not in out


def test_fmp_check_failure_exit():
    code, out, _ = run("fmp", "example2.rules", "example2.obs", "--type", "1", "--check", "0",
                       "--sm-tol", "0")
    assert code == EXIT_FAIL and "fail" in out


def test_fmt_both_types():
    code, out, _ = run("fmt", "example2.rules", "example2.bstar", "--type", "1", "--check",
                       "1e-9")
    assert code == EXIT_OK
    assert "pwl on x1 [0, 3]: (0, 4/5) (3, 0)" in out
    assert "pwl on x2 [0, 1]: (0, 2/3) (2/9, 16/27) (1, 4/5)" in out
    out = run("fmt", "example2.rules", "example2.bstar", "--type", "2")[1]
    assert "pwl on x2 [0, 1]: (0, 1) (1, 1)" in out


@pytest.mark.parametrize("mode", ["fmp", "fmt"])
@pytest.mark.parametrize("t", ["1", "2"])
def test_audit_fails(mode, t):
    code, out, _ = run("audit", "example2.rules", "--mode", mode, "--type", t)
    assert code == EXIT_FAIL
    assert "verdict R2 FAIL" in out or "verdict R2:x1 FAIL" in out


def test_audit_pass(tmp_path):
    f = tmp_path / "one.rules"
    f.write_text("universe x = 0 .. 1\nuniverse y = 0 .. 1\noutput y\n"
                 "set A on x : (0, 1) (1, 0)\nset B on y : (0, 0) (1, 1)\nrule R : A -> B\n")
    code, out, _ = run("audit", str(f), "--mode", "fmp", "--type", "2")
    assert code == EXIT_OK and "verdict R PASS" in out


def test_verify_exit_codes():
    code, out, _ = run("verify", "example2.rules", "claims_eq11.claims")
    assert code == EXIT_OK and "verdict prior-t1-agg MATCH" in out
    assert run("verify", "example2.rules", "claims_fmt.claims")[0] == EXIT_OK
    code, out, _ = run("verify", "example2.rules", "claims_fmp.claims")
    assert code == EXIT_FAIL
    assert "verdict revised-t1-sub-R2 VIOLATION" in out


def test_parse_error_exit(tmp_path):
    f = tmp_path / "bad.rules"
    f.write_text("universe x = 0 .. 1\nset A on x : (0, 3/2) (1, 0)\n")
    code, _, err = run("audit", str(f), "--mode", "fmp", "--type", "1")
    assert code == EXIT_ERROR and f"{f}:2:" in err and "range" in err


def test_missing_file():
    assert run("sm", "nowhere.rules", "A", "B")[0] == EXIT_ERROR


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["fmp", "example2.rules", "example2.obs"],
    ["fmp", "example2.rules", "example2.obs", "--type", "3"],
    ["audit", "example2.rules", "--mode", "cri", "--type", "1"],
    ["fmt", "example2.rules", "example2.bstar", "--type", "1", "--csv", "1"],
])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == EXIT_USAGE


def test_help_is_success(capsys):
    assert run("--help")[0] == EXIT_OK


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "simfuzz", "sm", "example2.rules", "B2",
                           "Bstar"], capture_output=True, text=True)
    assert (proc.returncode, proc.stdout) == (0, "2/3\n")


def test_no_color_when_not_a_tty(monkeypatch):
    monkeypatch.delenv("NO_COLOR", raising=False)
    out = run("audit", "example2.rules", "--mode", "fmp", "--type", "1")[1]
    assert "\x1b[" not in out
