"""Run orchestration: single simulations and convergence studies with artifacts.

A run writes per-step diagnostics (CSV + figures) and a final-state
snapshot.  A convergence study integrates once with a fine reference step,
then measures the discrete L1 error of each coarser step size against it
and fits the observed order.  Reference solutions are cached on disk keyed
by a hash of everything that determines them, since the reference run
dominates wall time.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from pathlib import Path

from .analysis import OrderFit, observed_order, pairwise_orders
from .config import RunConfig
from .errors import ConfigurationError, SnapshotFormatError
from .grid import DistributionField, l1_distance, landau_initial_condition, mass
from .reporting import (
    plot_convergence,
    plot_diagnostics,
    plot_phase_space,
    write_convergence_csv,
    write_convergence_summary,
    write_diagnostics_csv,
)
from .snapshot import load_snapshot, save_snapshot
from .splitting import SchemeConfig, StepRecord, integrate

__all__ = ["RunArtifacts", "ConvergenceReport", "run_simulation", "convergence_study"]


@dataclass(frozen=True)
class RunArtifacts:
    final: DistributionField
    records: list[StepRecord]
    initial_mass: float
    paths: dict[str, Path]


@dataclass(frozen=True)
class ConvergenceReport:
    """(tau, error) pairs of one method against its fine-step reference."""

    method: str
    tau_ref: float
    points: tuple[tuple[float, float], ...]
    pairwise: list[float]
    fit: OrderFit


def run_simulation(config: RunConfig, out_dir: str | Path) -> RunArtifacts:
    """Integrate the configured problem and write diagnostics, figures, snapshot."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    f0 = landau_initial_condition(config.grid, config.alpha)
    m0 = mass(f0)

    cadence = config.snapshot_cadence
    width = len(str(config.scheme.n_steps))

    def on_step(k: int, f: DistributionField) -> None:
        if cadence > 0 and k % cadence == 0 and k < config.scheme.n_steps:
            save_snapshot(out / f"state_step{k:0{width}d}.snap", f, time=k * config.scheme.tau)

    final, records = integrate(f0, config.scheme, on_step=on_step)

    paths = {
        "diagnostics": out / "diagnostics.csv",
        "snapshot": out / "final_state.snap",
        "diagnostics_figure": out / "diagnostics.png",
        "phase_space_figure": out / "phase_space.png",
    }
    write_diagnostics_csv(paths["diagnostics"], records)
    save_snapshot(paths["snapshot"], final, time=config.scheme.t_end)
    plot_diagnostics(records, m0, paths["diagnostics_figure"])
    plot_phase_space(final, paths["phase_space_figure"],
                     title=f"f(x, v) at t = {config.scheme.t_end:g}")
    return RunArtifacts(final=final, records=records, initial_mass=m0, paths=paths)


def _reference_key(config: RunConfig, method: str, tau_ref: float) -> str:
    scheme = config.scheme
    blob = json.dumps(
        {
            "L": config.grid.L,
            "vmax": config.grid.vmax,
            "nx": config.grid.nx,
            "nv": config.grid.nv,
            "alpha": config.alpha,
            "method": method,
            "midpoint": scheme.midpoint,
            "interpolation": scheme.interpolation,
            "tau_ref": tau_ref,
            "t_end": scheme.t_end,
        },
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _reference_solution(config: RunConfig, f0: DistributionField, method: str,
                        tau_ref: float, cache_dir: Path | None) -> DistributionField:
    cfg = replace(config.scheme, method=method, tau=tau_ref)
    if cache_dir is None:
        return integrate(f0, cfg)[0]
    cache_path = cache_dir / f"reference_{method}_{_reference_key(config, method, tau_ref)}.snap"
    if cache_path.exists():
        try:
            ref, _ = load_snapshot(cache_path, expected=config.grid)
            return ref
        except SnapshotFormatError:
            cache_path.unlink()
    ref = integrate(f0, cfg)[0]
    save_snapshot(cache_path, ref, time=cfg.t_end)
    return ref


def _validate_protocol(config: RunConfig, taus: list[float], tau_ref: float) -> None:
    t_end = config.scheme.t_end
    for tau in [*taus, tau_ref]:
        replace(config.scheme, tau=tau)  # raises ConfigurationError unless tau divides t_end
    if len(set(taus)) != len(taus):
        raise ConfigurationError("step sizes must be distinct")
    if tau_ref > min(taus) / 4:
        raise ConfigurationError(
            f"tau_ref={tau_ref} must be at least four times smaller than the "
            f"smallest studied step {min(taus)}"
        )


def convergence_study(config: RunConfig, taus: list[float], tau_ref: float,
                      methods: list[str], out_dir: str | Path | None = None,
                      use_cache: bool = True) -> list[ConvergenceReport]:
    """Measure final-time L1 errors against a same-method fine reference.

    With `out_dir` given, writes one CSV per method, a JSON summary, and a
    log-log error figure; the reference snapshot is cached there as well.
    """
    if not taus:
        raise ConfigurationError("need at least one step size")
    _validate_protocol(config, taus, tau_ref)
    out = None
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)

    f0 = landau_initial_condition(config.grid, config.alpha)
    reports = []
    for method in methods:
        ref = _reference_solution(config, f0, method, tau_ref,
                                  out if (use_cache and out is not None) else None)
        points = []
        for tau in sorted(taus, reverse=True):
            final, _ = integrate(f0, replace(config.scheme, method=method, tau=tau))
            err = l1_distance(final, ref)
            if not err > 0.0:
                raise ConfigurationError(
                    f"degenerate convergence point at tau={tau}: error {err}"
                )
            points.append((tau, err))
        reports.append(
            ConvergenceReport(
                method=method,
                tau_ref=tau_ref,
                points=tuple(points),
                pairwise=pairwise_orders(points),
                fit=observed_order(points),
            )
        )

    if out is not None:
        for report in reports:
            write_convergence_csv(out / f"convergence_{report.method}.csv", report)
        write_convergence_summary(out / "convergence_summary.json", reports)
        plot_convergence(reports, out / "convergence.png")
    return reports
