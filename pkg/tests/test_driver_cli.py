import json

import numpy as np
import pytest

from vpsplit import config_from_mapping, l1_distance, load_snapshot
from vpsplit.cli import main
from vpsplit.driver import convergence_study, run_simulation

SMALL = {
    "grid.nx": 32,
    "grid.nv": 33,
    "scheme.tau": 0.125,
}


def _write_config(tmp_path, extra=None):
    data = dict(SMALL)
    if extra:
        data.update(extra)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return path


def test_run_simulation_artifacts(tmp_path):
    cfg = config_from_mapping(SMALL)
    artifacts = run_simulation(cfg, tmp_path / "out")
    assert len(artifacts.records) == 8
    for key in ("diagnostics", "snapshot", "diagnostics_figure", "phase_space_figure"):
        assert artifacts.paths[key].exists()
    text = artifacts.paths["diagnostics"].read_text().splitlines()
    assert text[0] == "step,t,mass,l1_norm,electric_energy,boundary_mass"
    assert len(text) == 9
    loaded, time = load_snapshot(artifacts.paths["snapshot"], expected=cfg.grid)
    assert time == 1.0
    assert np.array_equal(loaded.values, artifacts.final.values)


def test_run_simulation_snapshot_cadence(tmp_path):
    cfg = config_from_mapping({**SMALL, "output.snapshot_cadence": 3})
    run_simulation(cfg, tmp_path / "out")
    names = sorted(p.name for p in (tmp_path / "out").glob("state_step*.snap"))
    assert names == ["state_step3.snap", "state_step6.snap"]


def test_diagnostics_csv_is_deterministic(tmp_path):
    cfg = config_from_mapping(SMALL)
    a = run_simulation(cfg, tmp_path / "a")
    b = run_simulation(cfg, tmp_path / "b")
    assert a.paths["diagnostics"].read_bytes() == b.paths["diagnostics"].read_bytes()


def test_equilibrium_run_final_equals_initial_snapshot(tmp_path):
    from vpsplit import landau_initial_condition

    cfg = config_from_mapping({**SMALL, "alpha": 0.0})
    artifacts = run_simulation(cfg, tmp_path / "out")
    initial = landau_initial_condition(cfg.grid, 0.0)
    assert l1_distance(artifacts.final, initial) <= 1e-12


def test_convergence_study_reports_and_cache(tmp_path):
    cfg = config_from_mapping(SMALL)
    out = tmp_path / "conv"
    reports = convergence_study(cfg, taus=[0.25, 0.125], tau_ref=1.0 / 32.0,
                                methods=["strang", "lie"], out_dir=out)
    assert {r.method for r in reports} == {"strang", "lie"}
    for report in reports:
        assert all(np.isfinite(err) and err > 0 for _, err in report.points)
    assert (out / "convergence_strang.csv").exists()
    assert (out / "convergence_lie.csv").exists()
    assert (out / "convergence_summary.json").exists()
    assert (out / "convergence.png").exists()
    caches = list(out.glob("reference_*.snap"))
    assert len(caches) == 2

    # the cached reference makes the rerun identical
    strang_csv = (out / "convergence_strang.csv").read_bytes()
    mtimes = {p: p.stat().st_mtime_ns for p in caches}
    convergence_study(cfg, taus=[0.25, 0.125], tau_ref=1.0 / 32.0,
                      methods=["strang", "lie"], out_dir=out)
    assert (out / "convergence_strang.csv").read_bytes() == strang_csv
    assert all(p.stat().st_mtime_ns == mtimes[p] for p in caches)


def test_convergence_study_validates_protocol(tmp_path):
    from vpsplit import ConfigurationError

    cfg = config_from_mapping(SMALL)
    with pytest.raises(ConfigurationError):
        convergence_study(cfg, taus=[0.3], tau_ref=1.0 / 32.0, methods=["strang"])
    with pytest.raises(ConfigurationError):
        convergence_study(cfg, taus=[0.25], tau_ref=0.125, methods=["strang"])
    with pytest.raises(ConfigurationError):
        convergence_study(cfg, taus=[], tau_ref=0.125, methods=["strang"])


def test_cli_run(tmp_path, capsys):
    config = _write_config(tmp_path)
    rc = main(["run", "--config", str(config), "--out", str(tmp_path / "out")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "completed 8 steps" in out
    assert (tmp_path / "out" / "final_state.snap").exists()


def test_cli_run_default_config(tmp_path, capsys):
    # all keys defaulted: 80x80 weak Landau, tau = 1/16 -> 16 diagnostic rows
    config = tmp_path / "default.json"
    config.write_text("{}")
    rc = main(["run", "--config", str(config), "--out", str(tmp_path / "out")])
    assert rc == 0
    lines = (tmp_path / "out" / "diagnostics.csv").read_text().splitlines()
    assert len(lines) == 17  # header + 16 steps
    assert (tmp_path / "out" / "final_state.snap").exists()
    capsys.readouterr()


def test_cli_run_bad_config_exits_2(tmp_path, capsys):
    config = _write_config(tmp_path, {"scheme.tau": 0.3})
    rc = main(["run", "--config", str(config), "--out", str(tmp_path / "out")])
    assert rc == 2
    assert "configuration error" in capsys.readouterr().err


def test_cli_convergence(tmp_path, capsys):
    config = _write_config(tmp_path)
    rc = main([
        "convergence", "--config", str(config),
        "--taus", "1/4,1/8", "--tau-ref", "1/32",
        "--method", "strang", "--out", str(tmp_path / "conv"),
    ])
    assert rc == 0
    assert "fitted order" in capsys.readouterr().out
    assert (tmp_path / "conv" / "convergence_strang.csv").exists()


def test_cli_snapshot_info(tmp_path, capsys):
    config = _write_config(tmp_path)
    main(["run", "--config", str(config), "--out", str(tmp_path / "out")])
    capsys.readouterr()
    rc = main(["snapshot-info", str(tmp_path / "out" / "final_state.snap")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "nx: 32" in out and "nv: 33" in out
    rc = main(["snapshot-info", str(config)])  # not a snapshot
    assert rc == 2


def test_cli_verify_all_green(capsys):
    rc = main(["verify"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out
    assert "checks passed" in out


def test_cli_verify_forced_failure_names_suite(capsys):
    rc = main(["verify", "--override", "phi-recurrence=1e-30"])
    assert rc == 1
    out = capsys.readouterr().out
    assert "[FAIL] phi-recurrence" in out


def test_cli_verify_rejects_unknown_override(capsys):
    rc = main(["verify", "--override", "no-such-check=1e-3"])
    assert rc == 2
