import json

import pytest

from klab.cli import main
from klab.core import Modulus
from klab.kronecker import f_closed


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestEval:
    def test_theta_value(self, capsys):
        code, out = run(capsys, "eval", "theta", "--z", "0,0", "--tau", "0,1")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1
        assert payload["value_re"] == pytest.approx(1.086434811213, abs=1e-11)
        assert payload["value_im"] == pytest.approx(0.0, abs=1e-12)
        assert payload["shells_used"] >= 1

    def test_f_matches_closed_form(self, capsys):
        code, out = run(
            capsys, "eval", "f", "--z1", "0.17,0.31", "--z2", "0.41,0.53",
            "--tau", "0,1",
        )
        assert code == 0
        payload = json.loads(out)
        want = f_closed(0.17 + 0.31j, 0.41 + 0.53j, Modulus(1j))
        assert complex(payload["value_re"], payload["value_im"]) == pytest.approx(
            want, abs=1e-9
        )

    def test_lower_half_plane_tau_rejected(self, capsys):
        code, out = run(capsys, "eval", "theta", "--z", "0,0", "--tau", "0,-1")
        assert code == 2

    def test_missing_argument(self, capsys):
        code, out = run(capsys, "eval", "f", "--z1", "0.1,0.2", "--tau", "0,1")
        assert code == 2


class TestM3:
    def test_degree_failure_reports_zero(self, capsys):
        code, out = run(
            capsys, "m3", "0:0.0:0", "1:0.1:0", "2:0.2:0", "3:0.3:0",
            "--tau", "0,1",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload == {"schema": 1, "zero": True}

    def test_nonzero_with_oracle(self, capsys):
        code, out = run(
            capsys, "m3", "--tau", "0,1", "--oracle", "--",
            "0:0.11:0", "2:0.23:0", "-1:-0.31:0", "1:0.07:0",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["coefficients"]
        assert payload["max_discrepancy"] < 1e-9

    def test_repeated_slopes_rejected(self, capsys):
        code, _ = run(
            capsys, "m3", "0:0.0:0", "1:0.1:0", "1:0.2:0", "2:0.3:0",
            "--tau", "0,1",
        )
        assert code == 2


class TestVerify:
    def test_kronecker_passes(self, capsys):
        code, out = run(
            capsys, "verify", "kronecker", "--samples", "5", "--seed", "1",
            "--tau", "0.3,0.9",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1
        assert payload["pass"] is True
        assert payload["max_residual"] < 1e-9

    def test_forced_failure_exit_code(self, capsys):
        code, out = run(
            capsys, "verify", "kronecker", "--samples", "5", "--tol", "1e-20",
            "--tau", "0,1",
        )
        assert code == 1
        assert json.loads(out)["pass"] is False

    def test_unknown_identity(self, capsys):
        code, _ = run(capsys, "verify", "nonsense", "--tau", "0,1")
        assert code == 2

    def test_default_tol_env(self, capsys, monkeypatch):
        monkeypatch.setenv("KLAB_DEFAULT_TOL", "1e-20")
        code, out = run(
            capsys, "verify", "kronecker", "--samples", "5", "--tau", "0,1"
        )
        assert code == 1

    def test_csv_format(self, capsys):
        code, out = run(
            capsys, "verify", "psi", "--samples", "3", "--format", "csv",
            "--tau", "0,1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "identity_id,sample,residual,lhs_re,lhs_im,rhs_re,rhs_im"
        assert len(lines) > 1

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, _ = run(
            capsys, "verify", "eta-const", "--tau", "0,1", "--out", str(target)
        )
        assert code == 0
        payload = json.loads(target.read_text())
        assert payload["pass"] is True

    def test_reproducible_output(self, capsys):
        _, out1 = run(
            capsys, "verify", "fg", "--samples", "4", "--seed", "9",
            "--tau", "0,1",
        )
        _, out2 = run(
            capsys, "verify", "fg", "--samples", "4", "--seed", "9",
            "--tau", "0,1",
        )
        assert out1 == out2
