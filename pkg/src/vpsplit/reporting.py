"""Delimited diagnostics output and the matplotlib figures rendered next to it.

All CSV files carry a header row and full-precision scientific notation so
reruns with the same configuration are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .grid import DistributionField
from .splitting import StepRecord

__all__ = [
    "write_diagnostics_csv",
    "write_convergence_csv",
    "write_convergence_summary",
    "plot_diagnostics",
    "plot_phase_space",
    "plot_convergence",
]


def _fmt(x: float) -> str:
    return format(x, ".17e")


def write_diagnostics_csv(path, records: list[StepRecord]) -> None:
    lines = ["step,t,mass,l1_norm,electric_energy,boundary_mass"]
    for r in records:
        lines.append(
            f"{r.step},{_fmt(r.t)},{_fmt(r.mass)},{_fmt(r.l1_norm)},"
            f"{_fmt(r.electric_energy)},{_fmt(r.boundary_mass)}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_convergence_csv(path, report) -> None:
    """One row per step size, largest first; pairwise order vs the previous row."""
    lines = ["tau,l1_error,pairwise_order"]
    points = sorted(report.points, key=lambda p: -p[0])
    for i, (tau, err) in enumerate(points):
        pairwise = "" if i == 0 else _fmt(report.pairwise[i - 1])
        lines.append(f"{_fmt(tau)},{_fmt(err)},{pairwise}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_convergence_summary(path, reports) -> None:
    data = {
        report.method: {
            "tau_ref": report.tau_ref,
            "taus": [t for t, _ in report.points],
            "errors": [e for _, e in report.points],
            "pairwise_orders": report.pairwise,
            "slope": report.fit.slope,
            "intercept": report.fit.intercept,
        }
        for report in reports
    }
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def plot_diagnostics(records: list[StepRecord], initial_mass: float, path) -> None:
    t = [r.t for r in records]
    energies = [r.electric_energy for r in records]
    fig, (ax_e, ax_m) = plt.subplots(2, 1, figsize=(6.4, 6.0), sharex=True)
    ax_e.plot(t, energies, lw=1.5)
    if any(e > 0.0 for e in energies):
        ax_e.set_yscale("log")
    ax_e.set_ylabel(r"$\frac{1}{2}\int E^2\,\mathrm{d}x$")
    ax_e.grid(True, alpha=0.3)
    ax_m.plot(t, [r.mass / initial_mass - 1.0 for r in records], lw=1.5)
    ax_m.set_ylabel("relative mass drift")
    ax_m.set_xlabel("t")
    ax_m.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_phase_space(f: DistributionField, path, title: str = "") -> None:
    spec = f.spec
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    im = ax.imshow(
        f.values.T,
        origin="lower",
        aspect="auto",
        extent=[0.0, spec.L, -spec.vmax, spec.vmax],
    )
    ax.set_xlabel("x")
    ax.set_ylabel("v")
    if title:
        ax.set_title(title)
    fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_convergence(reports, path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for report in reports:
        taus = np.array([t for t, _ in report.points])
        errs = np.array([e for _, e in report.points])
        (line,) = ax.loglog(taus, errs, "o", label=f"{report.method} (slope {report.fit.slope:.2f})")
        grid = np.array([taus.min(), taus.max()])
        ax.loglog(grid, np.exp(report.fit.intercept) * grid ** report.fit.slope,
                  "--", color=line.get_color(), alpha=0.6)
    ax.set_xlabel(r"step size $\tau$")
    ax.set_ylabel(r"discrete $L^1$ error at $t=T$")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
