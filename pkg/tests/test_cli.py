import csv
import io
import subprocess
import sys

import pytest

from mollified_mobius.cli import main, parse_alpha, NAMED_ALPHAS
from mollified_mobius.arith import RationalPoint


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text, delim=","):
    return list(csv.reader(io.StringIO(text), delimiter=delim))


def test_scan_w(capsys):
    code, out, _ = run(["scan", "--kind", "W", "--alpha", "1/3", "--schedule", "1e3,1e4,1e5"], capsys)
    r = rows(out)
    assert code == 0
    assert r[0] == ["kind", "alpha", "N", "value", "target", "error"]
    assert len(r) == 4
    errs = [abs(float(x[5])) for x in r[1:]]
    assert all(b <= 1.2 * a for a, b in zip(errs, errs[1:]))


def test_scan_zero_alpha(capsys):
    code, out, _ = run(["scan", "--kind", "U", "--alpha", "0/1", "--schedule", "10,100"], capsys)
    assert code == 0
    assert [x[3] for x in rows(out)[1:]] == ["0", "0"]


def test_scan_not_reduced(capsys):
    code, _, err = run(["scan", "--kind", "U", "--alpha", "2/4"], capsys)
    assert code == 2 and "not reduced" in err


def test_usage_errors(capsys):
    assert run(["scan", "--kind", "U", "--alpha", "0.3", "--schedule", "100,10"], capsys)[0] == 2
    assert run(["scan", "--kind", "Q", "--alpha", "0.3"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_capacity_exit(capsys):
    code, _, err = run(["scan", "--kind", "U", "--alpha", "0.3", "--schedule", "10", "--sieve-limit", "100000000"], capsys)
    assert code == 3 and "capacity" in err


def test_named_alphas():
    assert parse_alpha("golden") == NAMED_ALPHAS["golden"]
    assert parse_alpha("3/7") == RationalPoint(3, 7)
    assert parse_alpha("0.25") == 0.25


def test_determinism_and_tsv(capsys, tmp_path):
    argv = ["scan", "--kind", "Tsum", "--alpha", "sqrt2", "--schedule", "100,1000", "--format", "tsv"]
    a = run(argv, capsys)[1]
    b = run(argv, capsys)[1]
    assert a == b and "\t" in a
    out = tmp_path / "x.tsv"
    assert main(argv + ["-o", str(out)]) == 0
    assert out.read_text() == a


def test_seventeen_digits(capsys):
    out = run(["scan", "--kind", "U", "--alpha", "1/4", "--schedule", "1000"], capsys)[1]
    value = rows(out)[1][3]
    assert value == format(float(value), ".17g")


def test_identities(capsys):
    code, out, _ = run(["identities", "--q-max", "12"], capsys)
    r = rows(out)
    assert code == 0
    assert r[0] == ["identity", "q", "chi_index", "residual"]
    assert max(float(x[3]) for x in r[1:]) <= 1e-8
    sine_small = [x for x in r if x[0] == "odd_character_sine" and x[1] in ("1", "2")]
    assert [float(x[3]) for x in sine_small] == [0.0, 0.0]


def test_identities_perturbed(capsys):
    code, _, err = run(["identities", "--q-max", "5", "--perturb", "1e-3"], capsys)
    assert code == 1 and "failed" in err


def test_criterion(capsys):
    code, out, _ = run(["criterion", "--n", "2,3", "--u-max", "300"], capsys)
    r = rows(out)
    assert code == 0
    assert r[0] == ["N", "rhs_value", "rhs_uncertainty", "lhs_value", "lhs_uncertainty", "gap_to_one", "weighted_mertens"]
    assert float(r[1][1]) == pytest.approx(1.26066, abs=5e-3)
    assert r[1][3] == "" and r[1][4] == ""
    code, out, _ = run(["criterion", "--n", "2", "--u-max", "300", "--with-lhs"], capsys)
    assert float(rows(out)[1][3]) == pytest.approx(1.26066, abs=1e-2)


def test_jump(capsys):
    code, out, _ = run(["jump", "--alpha", "1/2", "--eps", "1e-2,1e-3", "--n-max", "10000"], capsys)
    r = rows(out)
    assert code == 0
    assert r[0] == ["a", "q", "eps", "T_left", "T_right", "avg", "T_at", "conjectured_half_jump"]
    assert r[1][7] == "-0.5" and r[1][6] == "0"
    assert run(["jump", "--alpha", "0.3", "--n-max", "100"], capsys)[0] == 2


def test_logderiv_and_monitor(capsys):
    code, out, _ = run(["logderiv", "--q-max", "5", "--n-max", "200000"], capsys)
    r = rows(out)
    assert code == 0 and all(x[5] == "true" and x[6] == "true" for x in r[1:])
    code, out, _ = run(["monitor", "--kind", "Tsum", "--grid", "5", "--n-max", "10000", "--ceiling", "10"], capsys)
    assert code == 0
    code, _, _ = run(["monitor", "--kind", "Tsum", "--grid", "5", "--n-max", "10000", "--ceiling", "1e-6"], capsys)
    assert code == 1


def test_console_script_logs_to_stderr():
    proc = subprocess.run(
        [sys.executable, "-m", "mollified_mobius.cli", "scan", "--kind", "U", "--alpha", "1/3", "--schedule", "10", "-v"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("kind,alpha,N")
    assert "sieving" in proc.stderr
