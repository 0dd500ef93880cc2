"""Self-contained verification suite behind the `verify` CLI subcommand.

Each check computes a measured quantity with an independent oracle (index
rotation, dense kernel quadrature, closed-form solutions) and compares it
against a fixed tolerance.  Tolerances can be overridden per check name,
which is mainly useful for exercising the failure path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import (
    groebner_alekseev_residual,
    phi,
    phi_recurrence_residual,
    shipped_flow_problems,
)
from .errors import QuadratureError
from .field import kernel_field_reference, solve_field
from .grid import ChargeDensity, GridSpec, charge_density, landau_initial_condition
from .interpolation import shift_periodic

__all__ = ["CheckResult", "run_verification", "format_report"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str


def _result(name, measured, tolerance, overrides, description) -> CheckResult:
    tol = overrides.get(name, tolerance)
    return CheckResult(
        name=name,
        passed=bool(measured <= tol),
        measured=float(measured),
        tolerance=float(tol),
        detail=description,
    )


def _seeded_operator(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(4, 4))
    radius = max(abs(np.linalg.eigvals(m)))
    return m * (2.0 * rng.uniform(0.05, 1.0) / radius)


def _check_phi_recurrence(overrides) -> CheckResult:
    worst = 0.0
    for seed in range(100):
        m = _seeded_operator(seed)
        for k in range(4):
            worst = max(worst, phi_recurrence_residual(k, m))
    return _result("phi-recurrence", worst, 1e-12, overrides,
                   "max defect of phi_k = I/k! + M phi_{k+1} over 100 seeded 4x4 operators")


def _check_phi_closed_forms(overrides) -> CheckResult:
    zs = np.array([-2.0, -0.5, 0.3, 1.0, 2.0])
    m = np.diag(zs)
    phi1 = np.expm1(zs) / zs
    phi2 = (np.expm1(zs) - zs) / (zs * zs)
    worst = max(
        float(np.max(np.abs(phi(1, m).diagonal() - phi1))),
        float(np.max(np.abs(phi(2, m).diagonal() - phi2))),
    )
    return _result("phi-closed-forms", worst, 1e-11, overrides,
                   "phi_1, phi_2 on diagonal operators vs scalar closed forms")


def _check_groebner(overrides) -> list[CheckResult]:
    tolerances = {"pure-decay": 1e-10, "logistic-decay": 1e-8, "linear-with-source": 1e-9}
    results = []
    for problem in shipped_flow_problems():
        name = f"groebner-alekseev[{problem.name}]"
        try:
            residual = groebner_alekseev_residual(problem, 1.0)
        except QuadratureError as exc:
            results.append(CheckResult(name, False, math.inf, tolerances[problem.name],
                                       f"quadrature failure: {exc}"))
            continue
        results.append(_result(name, residual, tolerances[problem.name], overrides,
                               "variation-of-constants identity residual at t=1"))
    return results


def _weak_landau_grid() -> GridSpec:
    return GridSpec(L=4.0 * np.pi, vmax=6.0, nx=80, nv=80)


def _check_field_oracle(overrides) -> CheckResult:
    spec = _weak_landau_grid()
    worst = 0.0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        values = 1.0 + 0.2 * rng.normal(size=spec.nx)
        values -= values.mean() - 1.0
        rho = ChargeDensity(spec, values)
        deviation = np.max(np.abs(solve_field(rho).values - kernel_field_reference(rho).values))
        worst = max(worst, float(deviation))
    return _result("field-oracle", worst, 1e-12, overrides,
                   "fast solve vs dense kernel quadrature on 50 seeded densities")


def _check_field_analytic(overrides) -> CheckResult:
    spec = _weak_landau_grid()
    rho = charge_density(landau_initial_condition(spec, 0.01))
    expected = 0.02 * np.sin(0.5 * spec.x)
    deviation = float(np.max(np.abs(solve_field(rho).values - expected)))
    return _result("field-analytic", deviation, 1e-6, overrides,
                   "weak-Landau field vs 0.02 sin(x/2)")


def _check_rotation(overrides) -> CheckResult:
    rng = np.random.default_rng(7)
    data = rng.normal(size=64)
    h = 0.173
    worst = 0.0
    for k in (1, 5, -3, 64, 131):
        out = shift_periodic(data, k * h, h)
        worst = max(worst, float(np.max(np.abs(out - np.roll(data, k)))))
    return _result("interpolation-rotation", worst / np.max(np.abs(data)), 1e-13, overrides,
                   "integer-cell periodic shifts vs index rotation (relative)")


def _check_constant(overrides) -> CheckResult:
    c = 3.7
    worst = 0.0
    for delta in (0.0, 0.21, -1.8, 12.0):
        out = shift_periodic(np.full(48, c), delta, 0.31)
        worst = max(worst, float(np.max(np.abs(out - c))) / c)
    return _result("interpolation-constant", worst, 1e-13, overrides,
                   "constant data reproduced for arbitrary shifts (relative)")


def _check_sum(overrides) -> CheckResult:
    rng = np.random.default_rng(11)
    data = rng.normal(size=80)
    h = 0.05
    scale = float(np.sum(np.abs(data)))
    worst = 0.0
    for delta in rng.uniform(-30.0, 30.0, size=16):
        out = shift_periodic(data, float(delta), h)
        worst = max(worst, abs(float(out.sum() - data.sum())) / scale)
    return _result("interpolation-sum", worst, 1e-12, overrides,
                   "periodic shift preserves the data sum (relative)")


def _interpolation_slope(scheme: str) -> float:
    errors, spacings = [], []
    for n in (16, 32, 64, 128):
        h = 2.0 * np.pi / n
        x = h * np.arange(n)
        delta = 0.5 * h
        out = shift_periodic(np.sin(x), delta, h, scheme)
        errors.append(np.max(np.abs(out - np.sin(x - delta))))
        spacings.append(h)
    return float(np.polyfit(np.log(spacings), np.log(errors), 1)[0])


def _check_orders(overrides) -> list[CheckResult]:
    results = []
    for scheme, nominal in (("linear", 2.0), ("cubic", 4.0)):
        slope = _interpolation_slope(scheme)
        results.append(_result(f"interpolation-order-{scheme}", abs(slope - nominal), 0.3,
                               overrides,
                               f"measured shift convergence order {slope:.3f} vs nominal {nominal:g}"))
    return results


def run_verification(overrides: dict[str, float] | None = None) -> list[CheckResult]:
    """Run every check; `overrides` replaces tolerances by check name."""
    ov = dict(overrides or {})
    results = [
        _check_phi_recurrence(ov),
        _check_phi_closed_forms(ov),
        *_check_groebner(ov),
        _check_field_oracle(ov),
        _check_field_analytic(ov),
        _check_rotation(ov),
        _check_constant(ov),
        _check_sum(ov),
        *_check_orders(ov),
    ]
    unknown = set(ov) - {r.name for r in results}
    if unknown:
        raise ValueError(f"unknown check names in overrides: {sorted(unknown)}")
    return results


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"[{status}] {r.name}: measured {r.measured:.3e} (tolerance {r.tolerance:.1e}) "
            f"- {r.detail}"
        )
    failed = [r.name for r in results if not r.passed]
    if failed:
        lines.append(f"{len(failed)} of {len(results)} checks failed: {', '.join(failed)}")
    else:
        lines.append(f"all {len(results)} checks passed")
    return "\n".join(lines)
