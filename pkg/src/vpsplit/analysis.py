r"""Desk-scale verification tools: phi functions, flow-expansion identity, order fits.

The phi functions generalize the exponential,

    phi_0(M) = e^M,    phi_k(M) = \int_0^1 e^((1-s) M) s^(k-1)/(k-1)! ds,

and satisfy phi_k(M) = I/k! + M phi_{k+1}(M).  They are computed here for
small dense matrices through the augmented block-matrix exponential, so the
recurrence can be checked numerically.

The Groebner-Alekseev (nonlinear variation-of-constants) identity expresses
the flow of f' = G(f) + R(f) through the flow of G alone:

    f(t) = E_G(t, f0) + \int_0^t d2 E_G(t-s, f(s)) R(f(s)) ds,

with d2 the derivative with respect to the initial value.  The residual
checker evaluates both sides independently for scalar problems whose G-flow
is known in closed form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.linalg import expm

from .errors import QuadratureError

__all__ = [
    "MAX_OPERATOR_DIM",
    "MAX_PHI_INDEX",
    "matrix_exponential",
    "phi",
    "phi_recurrence_residual",
    "ScalarFlowProblem",
    "groebner_alekseev_residual",
    "shipped_flow_problems",
    "OrderFit",
    "observed_order",
    "pairwise_orders",
]

MAX_OPERATOR_DIM = 32
MAX_PHI_INDEX = 8
MAX_FLOW_TIME = 5.0


def _as_operator(m) -> np.ndarray:
    mat = np.asarray(m, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"operator must be square, got shape {mat.shape}")
    if mat.shape[0] > MAX_OPERATOR_DIM:
        raise ValueError(f"operator dimension {mat.shape[0]} exceeds {MAX_OPERATOR_DIM}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("operator entries must be finite")
    return mat


def matrix_exponential(m) -> np.ndarray:
    """e^M for a small dense matrix (scaling-and-squaring Pade kernel)."""
    return expm(_as_operator(m))


def phi(k: int, m) -> np.ndarray:
    """phi_k(M) via the augmented block exponential.

    exp of the block matrix with M in the top-left corner and identity
    blocks along the superdiagonal carries phi_k(M) in its top-right block.
    """
    if not (0 <= k <= MAX_PHI_INDEX):
        raise ValueError(f"need 0 <= k <= {MAX_PHI_INDEX}, got {k}")
    mat = _as_operator(m)
    if k == 0:
        return expm(mat)
    n = mat.shape[0]
    aug = np.zeros(((k + 1) * n, (k + 1) * n))
    aug[:n, :n] = mat
    for block in range(k):
        start = block * n
        aug[start:start + n, start + n:start + 2 * n] = np.eye(n)
    return expm(aug)[:n, k * n:(k + 1) * n]


def phi_recurrence_residual(k: int, m) -> float:
    """Max-entry defect of phi_k(M) = I/k! + M phi_{k+1}(M)."""
    mat = _as_operator(m)
    lhs = phi(k, mat)
    rhs = np.eye(mat.shape[0]) / math.factorial(k) + mat @ phi(k + 1, mat)
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class ScalarFlowProblem:
    """Scalar ODE f' = g(f) + r(f) whose unperturbed flow is known in closed form.

    `flow(t, u0)` is the solution of u' = g(u), u(0) = u0, and `flow_d2` its
    derivative with respect to u0.  `exact`, when given, is the closed-form
    solution of the full problem (used as an extra oracle in tests).
    """

    name: str
    g: Callable[[float], float]
    r: Callable[[float], float]
    f0: float
    flow: Callable[[float, float], float]
    flow_d2: Callable[[float, float], float]
    exact: Callable[[float], float] | None = None


def groebner_alekseev_residual(problem: ScalarFlowProblem, t: float) -> float:
    """|lhs - rhs| of the variation-of-constants identity at time t.

    The left side integrates f' = g(f) + r(f) directly with tight
    tolerances; the right side evaluates the closed-form flow plus the
    adaptive quadrature of d2-flow times perturbation along the trajectory.
    """
    if not (0 < t <= MAX_FLOW_TIME):
        raise ValueError(f"need 0 < t <= {MAX_FLOW_TIME}, got {t}")

    def rhs_ode(_s, y):
        return [problem.g(y[0]) + problem.r(y[0])]

    sol = solve_ivp(rhs_ode, (0.0, t), [problem.f0], method="DOP853",
                    rtol=1e-12, atol=1e-14, dense_output=True)
    if not sol.success:
        raise QuadratureError(f"direct integration failed for {problem.name}: {sol.message}")
    lhs = float(sol.y[0, -1])

    def integrand(s):
        fs = float(sol.sol(s)[0])
        return problem.flow_d2(t - s, fs) * problem.r(fs)

    with warnings.catch_warnings():
        warnings.simplefilter("error", category=UserWarning)
        try:
            integral, abserr = quad(integrand, 0.0, t, epsabs=1e-12, epsrel=1e-12, limit=200)
        except UserWarning as exc:  # IntegrationWarning
            raise QuadratureError(f"quadrature did not converge for {problem.name}: {exc}") from exc
    if abserr > 1e-9:
        raise QuadratureError(
            f"quadrature error estimate {abserr:.3e} too large for {problem.name}"
        )
    rhs = problem.flow(t, problem.f0) + integral
    return abs(lhs - rhs)


def shipped_flow_problems() -> tuple[ScalarFlowProblem, ...]:
    """The three stock identity-check problems."""
    decay = ScalarFlowProblem(
        name="pure-decay",
        g=lambda f: -f,
        r=lambda f: 0.0,
        f0=1.0,
        flow=lambda t, u0: u0 * math.exp(-t),
        flow_d2=lambda t, u0: math.exp(-t),
        exact=lambda t: math.exp(-t),
    )
    logistic = ScalarFlowProblem(
        name="logistic-decay",
        g=lambda f: -f,
        r=lambda f: f * f,
        f0=0.5,
        flow=lambda t, u0: u0 * math.exp(-t),
        flow_d2=lambda t, u0: math.exp(-t),
        exact=lambda t: 1.0 / (1.0 + math.exp(t)),
    )
    lam, c = -0.7, 0.3
    linear = ScalarFlowProblem(
        name="linear-with-source",
        g=lambda f: lam * f,
        r=lambda f: c,
        f0=0.8,
        flow=lambda t, u0: u0 * math.exp(lam * t),
        flow_d2=lambda t, u0: math.exp(lam * t),
        exact=lambda t: 0.8 * math.exp(lam * t) + c * math.expm1(lam * t) / lam,
    )
    return decay, logistic, linear


@dataclass(frozen=True)
class OrderFit:
    """Least-squares line through (log tau, log error); the slope is the observed order."""

    points: tuple[tuple[float, float], ...]
    slope: float
    intercept: float


def _validated_points(points) -> tuple[tuple[float, float], ...]:
    pts = tuple((float(t), float(e)) for t, e in points)
    if len(pts) < 2:
        raise ValueError(f"need at least 2 points, got {len(pts)}")
    taus = [t for t, _ in pts]
    if len(set(taus)) != len(taus):
        raise ValueError("step sizes must be distinct")
    for t, e in pts:
        if not (np.isfinite(t) and t > 0):
            raise ValueError(f"step sizes must be positive and finite, got {t}")
        if not (np.isfinite(e) and e > 0):
            raise ValueError(f"errors must be positive and finite, got {e}")
    return pts


def observed_order(points) -> OrderFit:
    """Fit log(error) against log(tau) over all supplied points."""
    pts = _validated_points(points)
    log_tau = np.log([t for t, _ in pts])
    log_err = np.log([e for _, e in pts])
    slope, intercept = np.polyfit(log_tau, log_err, 1)
    return OrderFit(points=pts, slope=float(slope), intercept=float(intercept))


def pairwise_orders(points) -> list[float]:
    """Order estimates from consecutive point pairs (sorted by decreasing tau)."""
    pts = sorted(_validated_points(points), key=lambda p: -p[0])
    return [
        math.log(e0 / e1) / math.log(t0 / t1)
        for (t0, e0), (t1, e1) in zip(pts[:-1], pts[1:])
    ]
