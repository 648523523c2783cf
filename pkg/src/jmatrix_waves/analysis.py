"""Quantitative checks on the series solutions: phase fits, dead zones, residuals."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import waves1d, waves3d
from .exceptions import IllConditionedFitError
from .waves1d import CoefficientVector, Kind, ParityChannel
from .waves3d import AngularChannel, CoefficientVector3D

MAX_FIT_CONDITION = 1e8

RECURSION_TOL = {Kind.REGULAR: 1e-10, Kind.COMPLEMENTARY: 1e-9}


@dataclass(frozen=True)
class PhaseFitResult:
    amplitude: float
    phase: float
    rms_residual: float
    window: tuple[float, float]


@dataclass(frozen=True)
class DeadZoneResult:
    start_n: int
    epsilon: float
    radius: float


@dataclass(frozen=True)
class ResidualReport:
    check: str
    residuals: np.ndarray = field(repr=False)
    max_abs: float
    tolerance: float
    passed: bool

    @classmethod
    def from_residuals(cls, check: str, residuals, tolerance: float) -> "ResidualReport":
        res = np.atleast_1d(np.asarray(residuals, dtype=float))
        max_abs = float(np.max(np.abs(res))) if res.size else 0.0
        passed = bool(np.isfinite(max_abs) and max_abs <= tolerance)
        return cls(check, res, max_abs, tolerance, passed)

    def to_dict(self) -> dict:
        return {"check": self.check, "max_abs": self.max_abs, "tolerance": self.tolerance, "pass": self.passed}


@dataclass(frozen=True)
class SeriesQuery:
    """Everything needed to evaluate one series: dimension, kind, channel and summation options."""

    kind: Kind
    channel: ParityChannel | AngularChannel
    mu: float
    start_n: int = 0
    n_max: int | None = None
    accel: str = "avg"
    cutoff: str = "sharp"

    @property
    def radial(self) -> bool:
        return isinstance(self.channel, AngularChannel)

    def with_n_max(self, n_max: int) -> "SeriesQuery":
        return SeriesQuery(self.kind, self.channel, self.mu, self.start_n, n_max, self.accel, self.cutoff)

    def evaluate(self, y):
        evaluate = waves3d.eval_series_3d if self.radial else waves1d.eval_series_1d
        return evaluate(
            self.kind, self.channel, self.mu, y,
            start_n=self.start_n, n_max=self.n_max, accel=self.accel, cutoff=self.cutoff,
        )


def phase_fit(samples, mu: float, window: tuple[float, float]) -> PhaseFitResult:
    """Least-squares fit of value ~ amplitude * sin(mu y + phase) inside ``window``.

    Only the two-function basis {sin(mu y), cos(mu y)} is fitted; the
    frequency is taken as given.
    """
    data = np.asarray(samples, dtype=float)
    y_lo, y_hi = window
    if not y_hi > y_lo:
        raise ValueError("window must be non-empty")
    if y_hi - y_lo < 2 * math.pi / mu:
        raise ValueError("window must span at least one period 2*pi/mu")
    inside = (data[:, 0] >= y_lo) & (data[:, 0] <= y_hi)
    y, v = data[inside, 0], data[inside, 1]
    if len(y) < 8:
        raise ValueError(f"need at least 8 samples inside the window, got {len(y)}")
    design = np.column_stack([np.sin(mu * y), np.cos(mu * y)])
    normal = design.T @ design
    if np.linalg.cond(normal) > MAX_FIT_CONDITION:
        raise IllConditionedFitError(f"normal matrix condition {np.linalg.cond(normal):.3g} exceeds {MAX_FIT_CONDITION:g}")
    (alpha, beta), *_ = np.linalg.lstsq(design, v, rcond=None)
    rms = float(np.sqrt(np.mean((design @ [alpha, beta] - v) ** 2)))
    return PhaseFitResult(float(math.hypot(alpha, beta)), float(math.atan2(beta, alpha)), rms, (y_lo, y_hi))


def wrap_phase(angle: float) -> float:
    """Map an angle into (-pi, pi]."""
    wrapped = math.remainder(angle, 2 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


def dead_zone_radius(
    evaluator: Callable[[np.ndarray], np.ndarray],
    epsilon: float,
    y_max: float,
    step: float = 0.01,
    start_n: int = 0,
) -> DeadZoneResult:
    """Largest grid radius before the first sample with |value| >= epsilon.

    Samples y = 0, step, 2 step, ..., y_max are evaluated in one call.
    """
    if epsilon <= 0 or step <= 0:
        raise ValueError("epsilon and step must be positive")
    grid = np.arange(0, int(math.floor(y_max / step + 1e-9)) + 1) * step
    values = np.abs(np.asarray(evaluator(grid), dtype=float))
    loud = np.flatnonzero(values >= epsilon)
    if loud.size == 0:
        radius = float(grid[-1])
    elif loud[0] == 0:
        radius = 0.0
    else:
        radius = float(grid[loud[0] - 1])
    return DeadZoneResult(start_n, epsilon, radius)


def _relative(residual: float, *terms: float) -> float:
    scale = max(abs(t) for t in terms)
    return abs(residual) / scale if scale > 0 else abs(residual)


def recursion_residuals(coeffs: CoefficientVector | CoefficientVector3D, tolerance: float | None = None) -> ResidualReport:
    """Relative residual of the three-term recursion at n = 1 .. n_max - 1."""
    x = coeffs.values
    if len(x) < 3:
        raise ValueError("need at least three coefficients")
    if tolerance is None:
        tolerance = RECURSION_TOL[coeffs.kind]
    residuals = []
    if isinstance(coeffs, CoefficientVector3D):
        cos_t = coeffs.angle.cos_theta
        for n in range(1, len(x) - 1):
            diag, lower, upper = waves3d.recursion_weights_3d(n, coeffs.channel)
            lhs = diag * cos_t * x[n]
            residuals.append(_relative(lhs - lower * x[n - 1] - upper * x[n + 1], lhs, lower * x[n - 1], upper * x[n + 1]))
        label = f"recursion3d[{coeffs.kind.value}, l={coeffs.channel.ell}, mu={coeffs.mu:g}]"
    else:
        mu2 = coeffs.mu ** 2
        for n in range(1, len(x) - 1):
            diag, lower, upper = waves1d.recursion_terms(n, coeffs.channel)
            res = (mu2 - diag) * x[n] + lower * x[n - 1] + upper * x[n + 1]
            residuals.append(_relative(res, mu2 * x[n], diag * x[n], lower * x[n - 1], upper * x[n + 1]))
        label = f"recursion1d[{coeffs.kind.value}, {coeffs.channel.parity.value}, mu={coeffs.mu:g}]"
    return ResidualReport.from_residuals(label, residuals, tolerance)


def convergence_profile(
    query: SeriesQuery,
    point: float,
    n_max_list: Sequence[int],
    oracle: Callable[[float], float],
) -> list[tuple[int, float]]:
    """Absolute error against ``oracle`` at ``point`` for each truncation in ``n_max_list``."""
    target = float(oracle(point))
    return [(n, abs(float(query.with_n_max(n).evaluate(point)) - target)) for n in n_max_list]
