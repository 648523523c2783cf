"""Verification suites aggregating the identity checks into ResidualReports.

Each suite returns a list of reports; ``run_suite("all")`` concatenates them.
The quadrature-based checks are independent of the closed forms they test.
"""
from __future__ import annotations

import math

import numpy as np

from . import specfun, waves1d, waves3d
from .analysis import ResidualReport, SeriesQuery, phase_fit, recursion_residuals, wrap_phase
from .specfun import QuadratureSpec, adaptive_quad
from .waves1d import EVEN, ODD, Kind, ParityChannel
from .waves3d import AngularChannel, energy_angle

SUITES = ("recursion", "ode", "integrals", "jmatrix", "asymptotics")

CHANNELS_1D = (EVEN, ODD)
MU_1D = (0.5, 1.2, 3.0)


def _rel_diff(a, b) -> np.ndarray:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return np.abs(a - b) / np.maximum(1.0, np.abs(b))


# ---------------------------------------------------------------------------
# recursion
# ---------------------------------------------------------------------------

def recursion_suite(n_max: int = 200) -> list[ResidualReport]:
    reports = []
    for ch in CHANNELS_1D:
        for mu in MU_1D:
            closed = waves1d.s_closed_vector(ch, mu, n_max)
            reports.append(recursion_residuals(closed))
            rec = waves1d.propagate_regular(ch, mu, n_max)
            reports.append(ResidualReport.from_residuals(
                f"s_closed_vs_recursion[{ch.parity.value}, mu={mu:g}]", _rel_diff(rec.values, closed.values), 1e-10))

            c_rec = waves1d.propagate_complementary(ch, mu, n_max)
            c_closed = [waves1d.c_closed(n, ch, mu) for n in range(n_max + 1)]
            c_vec = waves1d.CoefficientVector(Kind.COMPLEMENTARY, ch, mu, c_closed, waves1d.Provenance.CLOSED_FORM)
            reports.append(recursion_residuals(c_vec))
            reports.append(ResidualReport.from_residuals(
                f"c_closed_vs_recursion[{ch.parity.value}, mu={mu:g}]",
                np.abs(c_rec.values - c_closed) / np.maximum(1e-300, np.abs(c_closed)), 1e-8))
            reports.append(ResidualReport.from_residuals(
                f"c_source_term[{ch.parity.value}, mu={mu:g}]",
                waves1d.initial_source_residual(ch, mu) / math.exp(0.5 * mu * mu), 1e-12))

    for ell in range(6):
        ch = AngularChannel(ell)
        for mu in (0.3, 1.0, 3.0):
            angle = energy_angle(mu)
            s_closed = waves3d.s_closed_vector_3d(ch, angle, n_max)
            reports.append(recursion_residuals(s_closed, 1e-9))
            s_rec = waves3d.propagate_3d(Kind.REGULAR, ch, angle, n_max)
            reports.append(ResidualReport.from_residuals(
                f"s3d_closed_vs_recursion[l={ell}, mu={mu:g}]", _rel_diff(s_rec.values, s_closed.values), 1e-10))
            c_rec = waves3d.propagate_3d(Kind.COMPLEMENTARY, ch, angle, n_max)
            c_closed = np.array([waves3d.c_closed_3d(n, ch, angle) for n in range(n_max + 1)])
            reports.append(ResidualReport.from_residuals(
                f"c3d_closed_vs_recursion[l={ell}, mu={mu:g}]", _rel_diff(c_rec.values, c_closed), 1e-8))
    return reports


# ---------------------------------------------------------------------------
# energy ODEs
# ---------------------------------------------------------------------------

ODE_CASES_1D = [
    (0, Kind.REGULAR, EVEN, 1.2),
    (3, Kind.REGULAR, ODD, 0.8),
    (2, Kind.COMPLEMENTARY, EVEN, 1.2),
    (3, Kind.COMPLEMENTARY, ODD, 1.2),
]
ODE_CASES_3D = [
    (0, Kind.REGULAR, 0, 0.6),
    (2, Kind.REGULAR, 1, 0.0),
    (3, Kind.REGULAR, 2, -0.3),
    (0, Kind.COMPLEMENTARY, 0, 0.6),
    (2, Kind.COMPLEMENTARY, 1, 0.3),
    (3, Kind.COMPLEMENTARY, 2, -0.3),
]


def halving_ratio(residual_fn, h: float) -> float:
    return residual_fn(h) / residual_fn(h / 2)


# below this the stencil is exact (coefficient polynomial in x) and the ratio is noise
ODE_EXACT_FLOOR = 1e-9


def _ode_report(label: str, residual_fn, h: float) -> ResidualReport:
    coarse = residual_fn(h)
    if abs(coarse) < ODE_EXACT_FLOOR:
        return ResidualReport.from_residuals(f"{label} exact", coarse, ODE_EXACT_FLOOR)
    ratio = coarse / residual_fn(h / 2)
    return ResidualReport.from_residuals(f"{label} ratio={ratio:.4f}", ratio - 4.0, 0.5)


def ode_suite(h: float = 1e-2) -> list[ResidualReport]:
    reports = []
    for n, kind, ch, mu in ODE_CASES_1D:
        label = f"energy_ode_1d[n={n}, {kind.value}, {ch.parity.value}, mu={mu:g}]"
        reports.append(_ode_report(label, lambda step: waves1d.energy_ode_residual_1d(n, kind, ch, mu, step), h))
    for n, kind, ell, x in ODE_CASES_3D:
        label = f"energy_ode_3d[n={n}, {kind.value}, l={ell}, x={x:g}]"
        reports.append(_ode_report(label, lambda step: waves3d.energy_ode_residual_3d(n, kind, ell, x, step), h))
    return reports


# ---------------------------------------------------------------------------
# integral identities
# ---------------------------------------------------------------------------

def hermite_projection(n: int, channel: ParityChannel, mu: float) -> tuple[float, float]:
    """(quadrature, closed form) for the Gaussian-weighted cos/sin projections onto H_{2n}/H_{2n+1}."""
    m = 2 * n + channel.offset
    trig = math.cos if channel.even else math.sin
    lo, hi = specfun.hermite_quad_bounds(m)

    def integrand(y):
        return math.exp(-0.5 * y * y) * trig(mu * y) * specfun.hermite_poly_from_fn(m, y)

    spec = QuadratureSpec(lo, hi, rel_tol=1e-13, max_subdivisions=1000, abs_tol=1e-13)
    quad = adaptive_quad(integrand, spec)
    closed = (-1) ** n * math.sqrt(2 * math.pi) * math.exp(-0.5 * mu * mu) * specfun.hermite_poly_from_fn(m, mu)
    return quad, closed


def integrals_suite(n_max: int = 8) -> list[ResidualReport]:
    reports = []
    for ch in CHANNELS_1D:
        for mu in (0.7, 1.2):
            pairs = [hermite_projection(n, ch, mu) for n in range(n_max + 1)]
            rel = [abs(q - c) / max(abs(c), 1e-12 * max(1.0, abs(q))) for q, c in pairs]
            reports.append(ResidualReport.from_residuals(
                f"hermite_projection[{ch.parity.value}, mu={mu:g}, n<={n_max}]", rel, 1e-8))
    for ell in (0, 3):
        ch = AngularChannel(ell)
        for mu in (0.6, 1.0):
            angle = energy_angle(mu)
            diffs = []
            for n in range(n_max + 1):
                quad = waves3d.coefficient_integral_oracle_3d(n, ch, mu)
                diffs.append(abs(quad - waves3d.s_closed_3d(n, ch, angle)))
            reports.append(ResidualReport.from_residuals(
                f"bessel_projection[l={ell}, mu={mu:g}, n<={n_max}]", diffs, 1e-8))
    reports.extend(orthonormality_reports())
    return reports


def orthonormality_reports(n_1d: int = 12, n_3d: int = 6) -> list[ResidualReport]:
    reports = []
    lo, hi = specfun.hermite_quad_bounds(2 * n_1d + 1)
    errs = []
    for n in range(n_1d + 1):
        for m in range(n, n_1d + 1):
            for p, q in ((2 * n, 2 * m), (2 * n + 1, 2 * m + 1), (2 * n, 2 * m + 1)):
                val = adaptive_quad(
                    lambda y: specfun.hermite_fn(p, y) * specfun.hermite_fn(q, y),
                    QuadratureSpec(lo, hi, rel_tol=1e-12, max_subdivisions=1000),
                )
                errs.append(val - (1.0 if p == q else 0.0))
    reports.append(ResidualReport.from_residuals(f"hermite_orthonormality[n<={n_1d}]", errs, 1e-10))
    for ell in (0, 3):
        ch = AngularChannel(ell)
        gram, weighted = laguerre_gram(ch, n_3d)
        reports.append(ResidualReport.from_residuals(
            f"laguerre_orthonormality_1/y[l={ell}, n<={n_3d}]", (weighted - np.eye(n_3d + 1)).ravel(), 1e-9))
        reports.append(ResidualReport.from_residuals(
            f"laguerre_overlap_tridiagonal[l={ell}, n<={n_3d}]", (gram - laguerre_overlap(ch, n_3d)).ravel(), 1e-9))
    return reports


def laguerre_gram(channel: AngularChannel, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature Gram matrices of phi_0..phi_n_max under dy and under dy / y."""
    upper = 2 * waves3d._laguerre_tail(n_max, channel.ell)
    size = n_max + 1
    plain, weighted = np.zeros((size, size)), np.zeros((size, size))
    for n in range(size):
        for m in range(n, size):
            prod = lambda y: waves3d.basis_fn_3d(n, channel, y) * waves3d.basis_fn_3d(m, channel, y)
            spec = QuadratureSpec(0.0, upper, rel_tol=1e-12, max_subdivisions=1000)
            plain[n, m] = plain[m, n] = adaptive_quad(prod, spec)
            weighted[n, m] = weighted[m, n] = adaptive_quad(lambda y: prod(y) / y if y > 0 else 0.0, spec)
    return plain, weighted


def laguerre_overlap(channel: AngularChannel, n_max: int) -> np.ndarray:
    """Exact <phi_n|phi_m> under dy: 2(n+l+1) on the diagonal, -sqrt((n+1)(n+2l+2)) beside it."""
    rows = []
    for n in range(n_max + 1):
        diag, lower, upper = waves3d.recursion_weights_3d(n, channel)
        rows.append((-lower, diag, -upper))
    return tridiagonal_from_rows(rows)


# ---------------------------------------------------------------------------
# tridiagonal wave operator
# ---------------------------------------------------------------------------

def jmatrix_block_1d(channel: ParityChannel, mu: float, size: int = 6) -> np.ndarray:
    """<phi_n | d^2/dy^2 + mu^2 | phi_m> by quadrature, using psi_k'' = (y^2 - 2k - 1) psi_k."""
    lo, hi = specfun.hermite_quad_bounds(2 * size + 1)
    block = np.zeros((size, size))
    for n in range(size):
        for m in range(size):
            p, q = 2 * n + channel.offset, 2 * m + channel.offset
            block[n, m] = adaptive_quad(
                lambda y: specfun.hermite_fn(p, y) * (y * y - 2 * q - 1 + mu * mu) * specfun.hermite_fn(q, y),
                QuadratureSpec(lo, hi, rel_tol=1e-12, max_subdivisions=1000, abs_tol=1e-13),
            )
    return block


def jmatrix_block_3d(channel: AngularChannel, mu: float, size: int = 6) -> np.ndarray:
    """Radial wave-operator matrix by quadrature with a sixth-order stencil for d^2/dy^2."""
    ell = channel.ell
    upper = 2 * waves3d._laguerre_tail(size, ell)
    block = np.zeros((size, size))
    for n in range(size):
        for m in range(size):
            def integrand(y, n=n, m=m):
                phi_m = lambda t: waves3d.basis_fn_3d(m, channel, t)
                op = specfun.central_second_derivative(phi_m, y) + (mu * mu - ell * (ell + 1) / (y * y)) * phi_m(y)
                return waves3d.basis_fn_3d(n, channel, y) * op

            block[n, m] = adaptive_quad(
                integrand, QuadratureSpec(0.0, upper, rel_tol=1e-11, max_subdivisions=1000, abs_tol=1e-12)
            )
    return block


def tridiagonal_from_rows(rows) -> np.ndarray:
    size = len(rows)
    mat = np.zeros((size, size))
    for n, (sub, diag, sup) in enumerate(rows):
        mat[n, n] = diag
        if n > 0:
            mat[n, n - 1] = sub
        if n + 1 < size:
            mat[n, n + 1] = sup
    return mat


def jmatrix_suite(size: int = 6, tol: float = 1e-7) -> list[ResidualReport]:
    reports = []
    for ch in CHANNELS_1D:
        mu = 1.2
        quad = jmatrix_block_1d(ch, mu, size)
        formula = tridiagonal_from_rows([waves1d.jmatrix_row_1d(n, ch, mu) for n in range(size)])
        reports.append(ResidualReport.from_residuals(
            f"jmatrix_1d[{ch.parity.value}, mu={mu:g}, {size}x{size}]", (quad - formula).ravel(), tol))
    for ell in (0, 1, 2):
        ch = AngularChannel(ell)
        mu = 1.0
        quad = jmatrix_block_3d(ch, mu, size)
        angle = energy_angle(mu)
        formula = tridiagonal_from_rows([waves3d.jmatrix_row_3d(n, ch, angle) for n in range(size)])
        reports.append(ResidualReport.from_residuals(
            f"jmatrix_3d[l={ell}, mu={mu:g}, {size}x{size}]", (quad - formula).ravel(), tol))
    return reports


# ---------------------------------------------------------------------------
# asymptotics and boundary behaviour
# ---------------------------------------------------------------------------

def fit_series(query: SeriesQuery, window: tuple[float, float], points: int = 401):
    y = np.linspace(window[0], window[1], points)
    return phase_fit(np.column_stack([y, query.evaluate(y)]), query.mu, window)


def asymptotics_suite(tol: float = 0.02) -> list[ResidualReport]:
    reports = []
    mu = 1.2
    window = (15.0, 25.0)
    for ch, target_phase in ((EVEN, 0.0), (ODD, math.pi / 2)):
        f = fit_series(SeriesQuery(Kind.REGULAR, ch, mu), window)
        g = fit_series(SeriesQuery(Kind.COMPLEMENTARY, ch, mu), window)
        label = ch.parity.value
        reports.append(ResidualReport.from_residuals(f"g_amplitude_1d[{label}]", g.amplitude - abs(ch.amplitude), tol))
        reports.append(ResidualReport.from_residuals(f"g_phase_1d[{label}]", wrap_phase(g.phase - target_phase), tol))
        reports.append(ResidualReport.from_residuals(
            f"fg_phase_gap_1d[{label}]", abs(wrap_phase(f.phase - g.phase)) - math.pi / 2, tol))

    g_odd_origin = waves1d.eval_series_1d(Kind.COMPLEMENTARY, ODD, mu, 0.0)
    reports.append(ResidualReport.from_residuals("g_odd_at_origin", g_odd_origin, 0.0))
    h = 1e-4
    pair = waves1d.eval_series_1d(Kind.COMPLEMENTARY, EVEN, mu, np.array([h, -h]))
    reports.append(ResidualReport.from_residuals("g_even_slope_at_origin", (pair[0] - pair[1]) / (2 * h), 1e-6))

    window3 = (40.0, 60.0)
    for ell in (0, 3):
        ch = AngularChannel(ell)
        f = fit_series(SeriesQuery(Kind.REGULAR, ch, 1.0), window3)
        g = fit_series(SeriesQuery(Kind.COMPLEMENTARY, ch, 1.0), window3)
        reports.append(ResidualReport.from_residuals(
            f"fg_phase_gap_3d[l={ell}]", wrap_phase(g.phase - f.phase) - math.pi / 2, tol))
        reports.append(ResidualReport.from_residuals(
            f"fg_amplitude_ratio_3d[l={ell}]", g.amplitude / f.amplitude - 1.0, tol))
    return reports


def run_suite(name: str) -> list[ResidualReport]:
    runners = {
        "recursion": recursion_suite,
        "ode": ode_suite,
        "integrals": integrals_suite,
        "jmatrix": jmatrix_suite,
        "asymptotics": asymptotics_suite,
    }
    if name == "all":
        return [r for suite in SUITES for r in runners[suite]()]
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
    return runners[name]()
