"""Radial (3D) free-wave reference solutions in the Laguerre basis.

The regular solution (2A/sqrt(pi)) (mu y) j_l(mu y) is expanded in
phi_n(y) = a_n y^(l+1) e^(-y/2) L_n^(2l+1)(y) with Gegenbauer coefficients;
the complementary solution shares the basis and has terminating
Gauss-hypergeometric coefficients.  The wave number enters only through
the energy angle theta, cos(theta) = (mu^2 - 1/4) / (mu^2 + 1/4).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import specfun
from .series import DEFAULT_WINDOW, sum_series
from .waves1d import Kind, Provenance, check_mu


@dataclass(frozen=True)
class AngularChannel:
    ell: int = 0
    amplitude: float = 1.0

    def __post_init__(self):
        if int(self.ell) != self.ell or self.ell < 0:
            raise ValueError(f"ell must be a non-negative integer, got {self.ell}")
        object.__setattr__(self, "ell", int(self.ell))
        if self.amplitude == 0:
            raise ValueError("amplitude must be non-zero")

    @property
    def alpha(self) -> int:
        """Laguerre index 2l + 1."""
        return 2 * self.ell + 1


@dataclass(frozen=True)
class EnergyAngle:
    mu: float
    theta: float
    cos_theta: float
    sin_theta: float

    @property
    def sin2_half(self) -> float:
        """sin^2(theta/2) = 1 / (4 mu^2 + 1), formed without cancellation."""
        return 1.0 / (4.0 * self.mu * self.mu + 1.0)

    @property
    def scale(self) -> float:
        """mu^2 + 1/4, the overall factor of the wave-operator matrix."""
        return self.mu * self.mu + 0.25


@dataclass(frozen=True)
class CoefficientVector3D:
    kind: Kind
    channel: AngularChannel
    angle: EnergyAngle
    values: np.ndarray
    provenance: Provenance

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1 or len(vals) < 1:
            raise ValueError("values must be a non-empty 1D sequence")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "provenance", Provenance(self.provenance))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    @property
    def mu(self) -> float:
        return self.angle.mu


def _channel(channel) -> AngularChannel:
    return channel if isinstance(channel, AngularChannel) else AngularChannel(int(channel))


def _angle(angle) -> EnergyAngle:
    return angle if isinstance(angle, EnergyAngle) else energy_angle(angle)


def energy_angle(mu: float) -> EnergyAngle:
    mu = check_mu(mu)
    denom = mu * mu + 0.25
    cos_t = (mu * mu - 0.25) / denom
    sin_t = mu / denom
    return EnergyAngle(mu, math.atan2(sin_t, cos_t), cos_t, sin_t)


def angle_from_cos(x: float) -> EnergyAngle:
    """Invert the energy map: mu^2 = (1/4)(1 + x)/(1 - x)."""
    if not -1.0 < x < 1.0:
        raise ValueError("cos(theta) must lie strictly inside (-1, 1)")
    return energy_angle(0.5 * math.sqrt((1.0 + x) / (1.0 - x)))


def log_norm(n: int, ell: int) -> float:
    """log a_n = (1/2) log(n! / (n + 2l + 1)!)."""
    return 0.5 * (gammaln(n + 1) - gammaln(n + 2 * ell + 2))


# ---------------------------------------------------------------------------
# Basis
# ---------------------------------------------------------------------------

def iter_basis_3d(n_max: int, channel: AngularChannel, y):
    """Yield phi_0(y) .. phi_{n_max}(y) using the normalized Laguerre recurrence."""
    channel = _channel(channel)
    y = np.asarray(y, dtype=float)
    alpha = channel.alpha
    prev = np.zeros_like(y)
    cur = math.exp(log_norm(0, channel.ell)) * y ** (channel.ell + 1) * np.exp(-0.5 * y)
    yield cur
    for n in range(n_max):
        nxt = ((2 * n + 1 + alpha - y) * cur - math.sqrt(n * (n + alpha)) * prev) / math.sqrt(
            (n + 1) * (n + alpha + 1)
        )
        prev, cur = cur, nxt
        yield cur


def basis_fn_3d(n: int, channel: AngularChannel, y):
    """a_n y^(l+1) e^(-y/2) L_n^(2l+1)(y)."""
    channel = _channel(channel)
    if n < 0:
        raise ValueError("n must be non-negative")
    y = np.asarray(y, dtype=float)
    out = (
        math.exp(log_norm(n, channel.ell))
        * y ** (channel.ell + 1)
        * np.exp(-0.5 * y)
        * specfun.laguerre_poly(n, channel.alpha, y)
    )
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# Coefficients
# ---------------------------------------------------------------------------

def _s_prefactor(channel: AngularChannel, angle: EnergyAngle) -> float:
    ell = channel.ell
    log_pref = -0.5 * math.log(math.pi) + (ell + 1) * math.log(2.0) + gammaln(ell + 1)
    log_pref += (ell + 1) * math.log(angle.sin_theta)
    return channel.amplitude * math.exp(log_pref)


def s_closed_3d(n: int, channel: AngularChannel, angle: EnergyAngle) -> float:
    """A pi^(-1/2) 2^(l+1) l! a_n sin^(l+1)(theta) C_n^(l+1)(cos theta)."""
    channel, angle = _channel(channel), _angle(angle)
    gegen = specfun.gegenbauer_poly(n, channel.ell + 1, angle.cos_theta)
    return _s_prefactor(channel, angle) * math.exp(log_norm(n, channel.ell)) * gegen


def s_closed_vector_3d(channel: AngularChannel, angle: EnergyAngle, n_max: int) -> CoefficientVector3D:
    channel, angle = _channel(channel), _angle(angle)
    lam = channel.ell + 1
    x = angle.cos_theta
    gegen = np.empty(n_max + 1)
    gegen[0] = 1.0
    if n_max >= 1:
        gegen[1] = 2.0 * lam * x
    for k in range(1, n_max):
        gegen[k + 1] = (2.0 * (k + lam) * x * gegen[k] - (k + 2.0 * lam - 1.0) * gegen[k - 1]) / (k + 1)
    n = np.arange(n_max + 1)
    a_n = np.exp(0.5 * (gammaln(n + 1) - gammaln(n + 2 * channel.ell + 2)))
    values = _s_prefactor(channel, angle) * a_n * gegen
    return CoefficientVector3D(Kind.REGULAR, channel, angle, values, Provenance.CLOSED_FORM)


def c_closed_3d(n: int, channel: AngularChannel, angle: EnergyAngle) -> float:
    """-A pi^(-1) 2^(l+1) Gamma(l+1/2) a_n sin^(-l)(theta) 2F1(-n-2l-1, n+1; 1/2-l; sin^2(theta/2))."""
    channel, angle = _channel(channel), _angle(angle)
    ell = channel.ell
    log_pref = -math.log(math.pi) + (ell + 1) * math.log(2.0) + gammaln(ell + 0.5)
    log_pref += log_norm(n, ell) - ell * math.log(angle.sin_theta)
    hyp = specfun.hyp2f1_terminating(n + 2 * ell + 1, n + 1, 0.5 - ell, angle.sin2_half)
    return -channel.amplitude * math.exp(log_pref) * hyp


def recursion_weights_3d(n: int, channel: AngularChannel) -> tuple[float, float, float]:
    """(diag factor 2(n+l+1), lower sqrt(n(n+2l+1)), upper sqrt((n+1)(n+2l+2)))."""
    ell = _channel(channel).ell
    return 2.0 * (n + ell + 1), math.sqrt(n * (n + 2 * ell + 1)), math.sqrt((n + 1) * (n + 2 * ell + 2))


def propagate_3d(kind: Kind, channel: AngularChannel, angle: EnergyAngle, n_max: int) -> CoefficientVector3D:
    """Upward three-term propagation seeded from the closed forms."""
    kind, channel, angle = Kind(kind), _channel(channel), _angle(angle)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    values = np.zeros(n_max + 1)
    if kind is Kind.REGULAR:
        values[0] = s_closed_3d(0, channel, angle)
        diag, _, upper = recursion_weights_3d(0, channel)
        values[1] = diag * angle.cos_theta * values[0] / upper
    else:
        values[0] = c_closed_3d(0, channel, angle)
        values[1] = c_closed_3d(1, channel, angle)
    x = angle.cos_theta
    for n in range(1, n_max):
        diag, lower, upper = recursion_weights_3d(n, channel)
        values[n + 1] = (diag * x * values[n] - lower * values[n - 1]) / upper
    return CoefficientVector3D(kind, channel, angle, values, Provenance.RECURSION)


def coefficients_3d(kind: Kind, channel: AngularChannel, angle: EnergyAngle, n_max: int) -> CoefficientVector3D:
    """Closed form for s (Gegenbauer recurrence), propagation for c."""
    kind, channel, angle = Kind(kind), _channel(channel), _angle(angle)
    if kind is Kind.REGULAR:
        return s_closed_vector_3d(channel, angle, n_max)
    if n_max < 2:
        vals = [c_closed_3d(n, channel, angle) for n in range(n_max + 1)]
        return CoefficientVector3D(kind, channel, angle, vals, Provenance.CLOSED_FORM)
    return propagate_3d(kind, channel, angle, n_max)


# ---------------------------------------------------------------------------
# Wave operator, reference solutions, energy equation
# ---------------------------------------------------------------------------

def jmatrix_row_3d(n: int, channel: AngularChannel, angle: EnergyAngle) -> tuple[float, float, float]:
    """(sub, diag, sup) of the tridiagonal wave-operator matrix in the Laguerre basis."""
    angle = _angle(angle)
    diag, lower, upper = recursion_weights_3d(n, channel)
    return -angle.scale * lower, angle.scale * diag * angle.cos_theta, -angle.scale * upper


def reference_solution_3d(kind: str, channel: AngularChannel, mu: float, y):
    """(2A/sqrt(pi)) (mu y) j_l(mu y) for ``regular``; n_l in place of j_l for ``irregular``."""
    channel = _channel(channel)
    mu = check_mu(mu)
    z = mu * np.asarray(y, dtype=float)
    return 2.0 * channel.amplitude / math.sqrt(math.pi) * z * specfun.spherical_bessel(channel.ell, kind, z)


def energy_ode_residual_3d(n: int, kind: Kind, channel: AngularChannel, x: float, h: float) -> float:
    """Central-difference residual of the Gegenbauer-type energy equation in x = cos(theta)."""
    channel = _channel(channel)
    if not (h > 0 and abs(x) + h < 1):
        raise ValueError("need h > 0 and |x| + h < 1")
    func = s_closed_3d if Kind(kind) is Kind.REGULAR else c_closed_3d
    lo, mid, hi = (func(n, channel, angle_from_cos(t)) for t in (x - h, x, x + h))
    ell = channel.ell
    d2 = (hi - 2.0 * mid + lo) / (h * h)
    d1 = (hi - lo) / (2.0 * h)
    return (1 - x * x) * d2 - x * d1 - ell * (ell + 1) / (1 - x * x) * mid + (n + ell + 1) ** 2 * mid


def default_n_max_3d(y_extent: float, mu: float, window: int = DEFAULT_WINDOW) -> int:
    """ceil(4 Y / theta^2) + 4 * window terms for a grid with 0 <= y <= Y.

    At fixed y and n >> y the basis oscillates in n with frequency about
    sqrt(y / n) while the coefficients rotate by theta per step.  The tail
    average only cancels once the two are well separated, n >~ y / theta^2;
    the factor 4 and the extra windows keep the error near 1e-8 for mu <= 1.
    """
    theta = energy_angle(mu).theta
    return int(math.ceil(4.0 * y_extent / theta**2)) + 4 * window


def eval_series_3d(
    kind: Kind,
    channel: AngularChannel,
    mu: float,
    y,
    start_n: int = 0,
    n_max: int | None = None,
    accel: str = "avg",
    cutoff: str = "sharp",
    coeffs: CoefficientVector3D | None = None,
):
    """Sum x_n phi_n(y) for n = start_n .. n_max with tail acceleration."""
    channel = _channel(channel)
    mu = check_mu(mu)
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr < 0):
        raise ValueError("radial coordinate y must be non-negative")
    extent = float(y_arr.max()) if y_arr.size else 0.0
    if n_max is None:
        n_max = coeffs.n_max if coeffs is not None else default_n_max_3d(extent, mu)
    if start_n < 0 or start_n > n_max:
        raise ValueError(f"need 0 <= start_n <= n_max, got start_n={start_n}, n_max={n_max}")
    if coeffs is None:
        coeffs = coefficients_3d(kind, channel, energy_angle(mu), n_max)
    elif coeffs.n_max < n_max:
        raise ValueError("supplied coefficient vector is shorter than n_max")
    out = sum_series(coeffs.values[: n_max + 1], iter_basis_3d(n_max, channel, y_arr), start_n, accel, cutoff=cutoff)
    return float(out) if out.ndim == 0 else out


def coefficient_integral_oracle_3d(n: int, channel: AngularChannel, mu: float, rel_tol: float = 1e-12) -> float:
    """Expansion coefficient s_n by direct quadrature of the Bessel projection integral."""
    channel = _channel(channel)
    mu = check_mu(mu)
    if n > 10:
        raise ValueError("the quadrature oracle is meant for n <= 10")
    ell = channel.ell
    a_n = math.exp(log_norm(n, ell))

    def bessel_j_half(z):
        # J_{l+1/2}(z) = sqrt(2 z / pi) j_l(z)
        return math.sqrt(2.0 * z / math.pi) * specfun.spherical_bessel(ell, "regular", z)

    def integrand(y):
        if y == 0.0:
            return 0.0
        return y ** (ell + 0.5) * math.exp(-0.5 * y) * specfun.laguerre_poly(n, channel.alpha, y) * bessel_j_half(mu * y)

    upper = _laguerre_tail(n, ell)
    spec = specfun.QuadratureSpec(0.0, upper, rel_tol=rel_tol, max_subdivisions=2000, abs_tol=1e-15)
    return channel.amplitude * math.sqrt(2.0 * mu) * a_n * specfun.adaptive_quad(integrand, spec)


def _laguerre_tail(n: int, ell: int) -> float:
    """Point past which y^(l+1) e^(-y/2) |L_n| stays below 1e-18."""
    y = 4.0 * n + 2 * ell + 10.0
    while True:
        bound = (ell + 1.5) * math.log(y) - 0.5 * y + n * math.log(1.0 + y) + gammaln(n + 2 * ell + 2) - gammaln(2 * ell + 2)
        if bound < math.log(1e-18):
            return y
        y += 5.0
