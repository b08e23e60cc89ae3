"""End-to-end tests of the command-line interface."""

import numpy as np
import pytest

from entfid import DensityMatrix, bell_state, ghz_state, gvp_state, linalg, stateio
from entfid.cli import main


def _write(tmp_path, name, obj):
    path = tmp_path / name
    stateio.write_state(obj, path)
    return str(path)


def _bell_file(tmp_path):
    return _write(tmp_path, "bell.state", DensityMatrix((2, 2), bell_state().projector()))


def test_measure_bell(tmp_path, capsys):
    rc = main(["measure", _bell_file(tmp_path)])
    out = capsys.readouterr().out
    assert rc == 0
    fields = dict(
        line.split(" = ") for line in out.strip().splitlines() if " = " in line
    )
    assert fields["dims"] == "2 2"
    assert float(fields["e_geometric"]) == 0.5
    assert float(fields["f_separability"]) == 0.5
    assert abs(float(fields["e_bures"]) - (2.0 - np.sqrt(2.0))) <= 1e-12
    assert abs(float(fields["concurrence"]) - 1.0) <= 1e-12


def test_measure_accepts_pure_file(tmp_path, capsys):
    path = _write(tmp_path, "pure.state", bell_state())
    rc = main(["measure", path])
    assert rc == 0
    assert "e_geometric = 0.5" in capsys.readouterr().out


def test_measure_product_state(tmp_path, capsys):
    rho = DensityMatrix((2, 2), np.diag([1.0, 0, 0, 0]).astype(complex))
    rc = main(["measure", _write(tmp_path, "prod.state", rho)])
    out = capsys.readouterr().out
    assert rc == 0
    fields = dict(
        line.split(" = ") for line in out.strip().splitlines() if " = " in line
    )
    assert float(fields["concurrence"]) == 0.0
    assert float(fields["e_formation"]) == 0.0
    assert float(fields["f_separability"]) == 1.0


def test_measure_writes_out_file(tmp_path, capsys):
    out = tmp_path / "report.txt"
    rc = main(["measure", _bell_file(tmp_path), "--out", str(out)])
    assert rc == 0
    assert out.read_text(encoding="utf-8") == capsys.readouterr().out


def test_measure_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.state"
    bad.write_text("dims: 2\nkind: density\n1+0j 0+0j\n", encoding="utf-8")
    rc = main(["measure", str(bad)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_measure_invalid_state(tmp_path, capsys):
    bad = tmp_path / "bad.state"
    bad.write_text(
        "dims: 2\nkind: density\n0.5+0j 0+0j\n0+0j 0.3+0j\n", encoding="utf-8"
    )
    rc = main(["measure", str(bad)])
    assert rc == 2
    assert "trace" in capsys.readouterr().err


def test_roof_summary_and_bundle(tmp_path, capsys):
    rho = DensityMatrix((2, 2), linalg.random_density_matrix((2, 2), 3, 42))
    state = _write(tmp_path, "rho.state", rho)
    base = tmp_path / "run.txt"
    rc = main(["roof", state, "--out", str(base), "--seed", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    fields = dict(
        line.split(" = ") for line in out.strip().splitlines() if " = " in line
    )
    assert fields["converged"] == "true"
    assert fields["seed"] == "1"
    from entfid import fs_2q

    assert abs(float(fields["f_s"]) - fs_2q(rho)) <= 1e-6
    assert base.read_text(encoding="utf-8") == out
    dec = stateio.loads(
        (tmp_path / "run.txt.decomp").read_text(encoding="utf-8")
    )
    assert np.abs(dec.reconstruct().matrix - rho.matrix).max() <= 1e-8
    ens = stateio.loads((tmp_path / "run.txt.ensemble").read_text(encoding="utf-8"))
    assert abs(sum(ens.weights) - 1.0) <= 1e-12
    sigma = stateio.loads((tmp_path / "run.txt.sigma").read_text(encoding="utf-8"))
    assert isinstance(sigma, DensityMatrix)


def test_roof_stdout_blocks_without_out(tmp_path, capsys):
    rho = DensityMatrix((2, 2), linalg.random_density_matrix((2, 2), 2, 43))
    rc = main(["roof", _write(tmp_path, "rho.state", rho)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "kind: decomposition" in out
    assert "kind: ensemble" in out
    assert "kind: density" in out


def test_roof_multipartite(tmp_path, capsys):
    path = _write(tmp_path, "ghz.state", ghz_state(3))
    rc = main(["roof", path, "--restarts", "2"])
    out = capsys.readouterr().out
    assert rc == 0
    fields = dict(
        line.split(" = ") for line in out.strip().splitlines() if " = " in line
    )
    assert abs(float(fields["f_s"]) - 0.5) <= 1e-6


def test_figure_bures_curve(tmp_path):
    out = tmp_path / "bures.csv"
    rc = main(["figure", "bures-curve", "--out", str(out)])
    assert rc == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "C,E_G/(1/2),E_B/(2−√2),E_Gr/(1/√2)"
    first = [float(x) for x in lines[1].split(",")]
    last = [float(x) for x in lines[-1].split(",")]
    assert first == [0.0, 0.0, 0.0, 0.0]
    assert last == [1.0, 1.0, 1.0, 1.0]
    assert len(lines) == 1 + 1001


def test_figure_gvp(tmp_path):
    out = tmp_path / "gvp.csv"
    rc = main(["figure", "gvp", "--p", "0.99", "--out", str(out)])
    assert rc == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# ")
    assert lines[1] == "a,E_F,E_R,ℰ"
    rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[2:]])
    assert rows.shape == (1001, 4)
    # ordering E_F >= E_R >= calE everywhere on the family
    assert np.all(rows[:, 1] >= rows[:, 2] - 1e-9)
    assert np.all(rows[:, 2] >= rows[:, 3] - 1e-9)
    assert np.all(rows[[0, -1], 1:] <= 1e-12)


def test_figure_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["figure", "gvp", "--p", "0.9", "--out", str(a)]) == 0
    assert main(["figure", "gvp", "--p", "0.9", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_figure_requires_out_and_valid_p(tmp_path, capsys):
    assert main(["figure", "bures-curve"]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["figure", "gvp", "--out", str(tmp_path / "x.csv")]) == 2
    capsys.readouterr()
    assert main(["figure", "gvp", "--p", "1.5", "--out", str(tmp_path / "x.csv")]) == 2


def test_verify_suite_passes(tmp_path, capsys):
    out = tmp_path / "report.csv"
    rc = main(
        ["verify", "two-qubit-roof", "--n", "4", "--jobs", "2", "--out", str(out)]
    )
    stdout = capsys.readouterr().out
    assert rc == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "suite,check,samples,worst,threshold,status"
    assert all(ln.endswith("pass") for ln in lines[1:])
    assert stdout == out.read_text(encoding="utf-8")


def test_verify_failure_writes_reproduction(tmp_path, capsys, monkeypatch):
    """Force a failing threshold, expect exit 1 plus a reproduction file."""
    import entfid.verify as verify

    patched = dict(verify._THRESHOLDS)
    patched[("two-qubit-roof", "closed-form")] = -1.0
    monkeypatch.setattr(verify, "_THRESHOLDS", patched)
    out = tmp_path / "report.csv"
    rc = main(["verify", "two-qubit-roof", "--n", "3", "--out", str(out)])
    err = capsys.readouterr().err
    assert rc == 1
    repro = list(tmp_path.glob("repro-two-qubit-roof-closed-form-*.state"))
    assert repro
    assert "reproduction" in err
    back = stateio.read_state(repro[0])
    assert isinstance(back, DensityMatrix)


def test_config_file_defaults_and_flag_override(tmp_path, capsys):
    rho = DensityMatrix((2, 2), linalg.random_density_matrix((2, 2), 2, 44))
    state = _write(tmp_path, "rho.state", rho)
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nseed = 9\nrestarts = 2\n", encoding="utf-8")
    rc = main(["roof", state, "--config", str(cfg)])
    fields = dict(
        ln.split(" = ")
        for ln in capsys.readouterr().out.strip().splitlines()
        if " = " in ln
    )
    assert rc == 0
    assert fields["seed"] == "9"
    rc = main(["roof", state, "--config", str(cfg), "--seed", "2"])
    fields = dict(
        ln.split(" = ")
        for ln in capsys.readouterr().out.strip().splitlines()
        if " = " in ln
    )
    assert rc == 0
    assert fields["seed"] == "2"


def test_config_rejects_unknown_key(tmp_path, capsys):
    rho = DensityMatrix((2, 2), linalg.random_density_matrix((2, 2), 2, 45))
    state = _write(tmp_path, "rho.state", rho)
    cfg = tmp_path / "run.cfg"
    cfg.write_text("sede = 9\n", encoding="utf-8")
    rc = main(["roof", state, "--config", str(cfg)])
    assert rc == 2
    assert "sede" in capsys.readouterr().err


def test_invalid_run_settings(tmp_path, capsys):
    rho = DensityMatrix((2, 2), linalg.random_density_matrix((2, 2), 2, 46))
    state = _write(tmp_path, "rho.state", rho)
    assert main(["roof", state, "--restarts", "0"]) == 2
    assert "restarts" in capsys.readouterr().err


def test_gvp_curve_uses_closest_separable(tmp_path):
    """E_R column equals S(rho || sigma_known) at a spot-checked row."""
    out = tmp_path / "gvp.csv"
    assert main(["figure", "gvp", "--p", "0.9", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()[2:]
    from entfid import gvp_closest_separable, relative_entropy

    row = [float(x) for x in lines[500].split(",")]
    a = row[0]
    expected = relative_entropy(gvp_state(a, 0.9), gvp_closest_separable(a, 0.9))
    assert abs(row[2] - expected) <= 1e-12
