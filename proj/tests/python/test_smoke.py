import math
import os
import subprocess

import numpy as np
import pytest

import chieq


def test_pointwise_closures():
    assert chieq.mobility(0.5) == pytest.approx(0.25, rel=1e-15)
    assert chieq.mobility(0.0) == pytest.approx(0.00125, rel=1e-12)
    assert chieq.free_energy(0.5) == pytest.approx(math.log(0.5) + 0.625, rel=1e-14)
    x = np.linspace(-1.0, 2.0, 301)
    h = chieq.h_factor(x)
    f = chieq.free_energy_deriv(x)
    np.testing.assert_allclose(h**2 * (chieq.free_energy(x) + 3.5), f**2, rtol=1e-12, atol=1e-300)
    assert chieq.mobility(x).shape == x.shape


def test_shift_check():
    ok, _, _ = chieq.validate_shift()
    assert ok
    ok, lo, _ = chieq.validate_shift(chieq.PhysParams(bshift=0.0))
    assert not ok and lo < 0


def test_initial_fields():
    phi = chieq.init_sinusoidal(64)
    assert phi.shape == (64, 64)
    assert phi[0, 8] == pytest.approx(0.73)
    r = chieq.init_random(n=16, dim=3, mean=0.5, amplitude=0.01, seed=3)
    assert r.shape == (16, 16, 16)
    assert r.mean() == pytest.approx(0.5, abs=1e-14)
    np.testing.assert_array_equal(r, chieq.init_random(n=16, dim=3, mean=0.5, amplitude=0.01, seed=3))


def test_spectral_operators():
    n = 32
    x = 2 * np.pi * np.arange(n) / n
    s = np.tile(np.sin(2 * x), (n, 1))
    np.testing.assert_allclose(chieq.laplacian(s), -4 * s, atol=1e-12)
    m = np.full((n, n), 0.2)
    np.testing.assert_allclose(chieq.variable_laplacian(s, m), -0.8 * s, atol=1e-12)


def test_run_conserves_mass_and_decreases_energy(tmp_path):
    text = chieq.preset_config("fig4_1")
    text = text.replace("n = 128", "n = 16").replace("t_end = 10", "t_end = 0.05")
    text = text.replace("dt = 0.001", "dt = 0.005")
    out = chieq.run(text, out_dir=str(tmp_path))
    rec = out["records"]
    assert len(rec["step"]) == 11
    assert np.all(np.diff(rec["e_modified"]) <= 1e-9 * np.abs(rec["e_modified"][:-1]))
    np.testing.assert_allclose(rec["mass"], rec["mass"][0], rtol=1e-12)
    assert (tmp_path / "energy.csv").read_text().startswith(
        "step,time,e_original,e_modified,mass,dissipation,u_drift,outer_iters,inner_iters\n"
    )
    snap = chieq.read_snapshot(str(tmp_path / "snap_00000000.bin"))
    assert snap["scheme"] == "LS2-CN" and snap["n"] == 16


def test_progress_can_stop():
    text = chieq.preset_config("table4_1").replace("n = 128", "n = 16")
    out = chieq.run(text, progress=lambda step, t, e: step < 2)
    assert out["step"] == 2


def test_config_errors():
    with pytest.raises(chieq.ConfigError):
        chieq.normalize_config("colour = blue\n")
    assert "scheme = LS1" in chieq.normalize_config("scheme = ls1\n")
    assert set(chieq.preset_names()) >= {"fig4_1", "table4_1", "spinodal2d_05", "spinodal3d_07"}


def test_convergence_orders():
    rep = chieq.converge([0.02, 0.01, 0.005], 0.001, n=16, t_final=0.04, schemes=["LS2-CN"])
    rows = rep["LS2-CN"]
    assert math.isnan(rows[0]["order"])
    assert rows[2]["order"] > 1.5


def test_quick_verify():
    checks = chieq.verify(full=False, n=16)
    assert all(c["passed"] for c in checks), [c for c in checks if not c["passed"]]


CLI = os.environ.get("CHIEQ_CLI")


@pytest.mark.skipif(not CLI, reason="command-line binary not provided")
def test_cli_exit_codes(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert subprocess.run([CLI, "run", "--config", str(cfg)], capture_output=True).returncode == 1
    assert subprocess.run([CLI, "bogus"], capture_output=True).returncode == 1
    assert subprocess.run([CLI, "init-config", "--preset", "nope"], capture_output=True).returncode == 1

    good = tmp_path / "good.cfg"
    preset = subprocess.run([CLI, "init-config", "--preset", "table4_1"], capture_output=True, text=True)
    assert preset.returncode == 0
    good.write_text(preset.stdout.replace("n = 128", "n = 16"))
    out = tmp_path / "out"
    res = subprocess.run([CLI, "run", "--config", str(good), "--seed", "4", "--out", str(out)],
                         capture_output=True)
    assert res.returncode == 0, res.stderr
    lines = (out / "energy.csv").read_text().splitlines()
    assert len(lines) == 27

    failing = tmp_path / "fail.cfg"
    failing.write_text(preset.stdout.replace("n = 128", "n = 16").replace(
        "outer_tol = 1e-09", "outer_tol = 1e-15").replace("inner_tol = 1e-11", "inner_tol = 1e-16"))
    res = subprocess.run([CLI, "run", "--config", str(failing), "--out", str(tmp_path / "f")],
                         capture_output=True)
    assert res.returncode == 2, res.stderr
