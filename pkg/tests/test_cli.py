import csv
import json

import numpy as np
import pytest

from lindform import cli, selftest, superop


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--n", "3")
    assert code == 0
    assert "matrices: 9" in out
    assert "F_8 =" in out


def test_basis_rejects_small_n(capsys):
    assert run(capsys, "basis", "--n", "1")[0] == 2


def test_usage_error(capsys):
    assert run(capsys, "kossakowski", "--method", "nope")[0] == 2
    assert run(capsys, "kossakowski")[0] == 2


def test_kossakowski_model_both_methods(capsys):
    code, out, _ = run(capsys, "kossakowski", "--model", "v", "--gamma1", "2", "--nbar", "1", "--p", "0.5",
                       "--method", "both")
    assert code == 0
    report = json.loads(out)
    assert report["n"] == 3 and report["cp"]["is_cp"]
    assert report["discrepancy_frobenius"] < 1e-12
    A = np.array(report["A"])
    assert A.shape == (8, 8, 2)
    assert len(report["eigenvalues"]) == 8


def test_kossakowski_from_file(tmp_path, capsys):
    path = tmp_path / "L.json"
    superop.save(superop.dissipator(np.diag([0.0, -1.0, -1.0, 0.0]), 2), path)
    out_path = tmp_path / "report.json"
    code, _, _ = run(capsys, "kossakowski", "--input", str(path), "--out", str(out_path))
    assert code == 0
    report = json.loads(out_path.read_text())
    assert np.allclose(report["eigenvalues"], [1.0, 0.0, 0.0], atol=1e-14)


def test_kossakowski_invalid_dissipator_exit_3(tmp_path, capsys):
    path = tmp_path / "L.json"
    superop.save(superop.dissipator(-np.eye(4), 2), path)
    code, out, _ = run(capsys, "kossakowski", "--input", str(path))
    assert code == 3
    assert json.loads(out)["error"] == "invalid-dissipator"


def test_kossakowski_hamiltonian_exit_4(tmp_path, capsys):
    h = np.diag([0.5, -0.5])
    path = tmp_path / "L.json"
    superop.save(superop.from_map(lambda rho: -1j * (h @ rho - rho @ h), 2), path)
    code, out, _ = run(capsys, "kossakowski", "--input", str(path), "--method", "pinv")
    assert code == 4
    assert json.loads(out)["error"] == "non-gkls-representable"


def test_kossakowski_missing_and_malformed_input(tmp_path, capsys):
    assert run(capsys, "kossakowski", "--input", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "kossakowski", "--input", str(bad))[0] == 2


def _sweep(capsys, tmp_path, name, *extra):
    out = tmp_path / name
    code, _, _ = run(capsys, "sweep", "--out", str(out), "--ratios", "0.5", "1", "2", "--nbar", "0.01", "1",
                     "--p", "0", "1", *extra)
    assert code == 0
    return out.read_text()


def test_sweep_csv_layout(tmp_path, capsys):
    text = _sweep(capsys, tmp_path, "a.csv")
    rows = list(csv.DictReader(text.splitlines()))
    assert len(rows) == 2 * 3 * 2 * 2
    assert list(rows[0])[-3:] == ["min_ev", "is_cp", "vlambda_max_spectral_diff"]
    assert [r["model"] for r in rows[:12]] == ["v"] * 12
    assert [float(r["gamma1_over_gamma2"]) for r in rows[:3]] == [0.5, 1.0, 2.0]
    assert all(r["is_cp"] == "true" for r in rows)


def test_sweep_deterministic_across_jobs(tmp_path, capsys):
    serial = _sweep(capsys, tmp_path, "a.csv")
    assert _sweep(capsys, tmp_path, "b.csv") == serial
    assert _sweep(capsys, tmp_path, "c.csv", "--jobs", "2") == serial


def test_sweep_single_model_has_no_diff_column(tmp_path, capsys):
    text = _sweep(capsys, tmp_path, "v.csv", "--model", "v")
    assert "vlambda" not in text.splitlines()[0]


def test_sweep_bad_output_dir(tmp_path, capsys):
    code, _, err = run(capsys, "sweep", "--out", str(tmp_path / "no" / "x.csv"), "--ratios", "1")
    assert code == 2 and "does not exist" in err


def test_sweep_rejects_bad_grid(tmp_path, capsys):
    assert run(capsys, "sweep", "--out", str(tmp_path / "x.csv"), "--ratios", "-1")[0] == 2


def test_svd_tensor(capsys):
    code, out, _ = run(capsys, "svd-tensor", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert "count: 64" in lines
    assert lines[-1].endswith(": 8")
    values = [float(x) for x in lines[:64]]
    assert values == sorted(values, reverse=True)


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert len(out.splitlines()) == len(selftest.CHECKS)
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_selftest_catches_broken_model(monkeypatch, capsys):
    from lindform import models_psbr

    real = models_psbr.v_system_dissipator

    def broken(params):
        m = real(params).matrix.copy()
        m[0, 0] += 0.1
        return superop.Dissipator(3, superop.paper_v3(), m)

    monkeypatch.setattr(models_psbr, "v_system_dissipator", broken)
    code, out, _ = run(capsys, "selftest")
    assert code == 1
    assert "FAIL  model dissipators valid" in out
