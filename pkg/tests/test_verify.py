import math

import numpy as np
import pytest

from reflectent import cli, config, rindler, verify


def test_fresh_run_passes(capsys):
    assert cli.main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "0 failed" in out
    assert "[FAIL]" not in out


def test_known_deviations_are_listed():
    checks = verify.run("all")
    known = [c for c in checks if c.known and not c.passed]
    assert {c.name.split(":")[0] for c in known} >= {"bell", "ghz", "werner", "(3,2,a=0.5,b=0.5)"}
    assert all(c.status == "KNOWN" for c in known)


def test_natural_log_breaks_reference_values(capsys, monkeypatch):
    monkeypatch.setattr(config, "LOG_BASE", math.e)
    assert cli.main(["verify", "--scope", "values"]) == 1
    captured = capsys.readouterr()
    assert "S_R(rho2) isospectral GHZ reduction: expected 0.92, got 0.636514168295" in captured.err
    check = next(c for c in verify.run("values") if "rho2" in c.name)
    assert not check.passed and check.got == pytest.approx(0.6365, abs=1e-4)


def test_swapped_isometry_breaks_closed_forms(capsys, monkeypatch):
    def swapped(r):
        c, s = math.cos(r), math.sin(r)
        u = np.zeros((4, 2))
        u[0b00, 0], u[0b11, 0], u[0b10, 1] = s, c, 1.0
        return u

    monkeypatch.setattr(rindler, "bogoliubov_isometry", swapped)
    assert cli.main(["verify", "--scope", "rindler"]) == 1
    err = capsys.readouterr().err
    assert "bell: reduced states equal closed forms" in err


def test_tol_override(capsys):
    assert cli.main(["verify", "--scope", "values", "--tol", "0"]) == 1
    assert "S_R(rho1)" in capsys.readouterr().err


def test_json_report(capsys, tmp_path):
    path = tmp_path / "v.json"
    assert cli.main(["verify", "--scope", "linalg", "--format", "json", "--out", str(path)]) == 0
    import json

    rows = json.loads(path.read_text())
    assert {r["status"] for r in rows} == {"PASS"}
    assert set(rows[0]) == {"name", "status", "expected", "got", "tol", "note"}


def test_unknown_scope():
    with pytest.raises(ValueError):
        verify.run("everything")
