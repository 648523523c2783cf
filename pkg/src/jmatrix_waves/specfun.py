"""Special functions used by the 1D and 3D reference-solution series.

Everything that feeds a basis function is evaluated in *normalized* form
(weight folded into the recurrence), so orders in the thousands never
overflow.  The quadrature wrapper is only used to verify identities.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate

from .exceptions import ConvergenceError, QuadratureError

PI_M14 = math.pi ** -0.25

_RESCALE_AT = 1e150
_LOG_RESCALE = math.log(_RESCALE_AT)


# ---------------------------------------------------------------------------
# Hermite functions
# ---------------------------------------------------------------------------

def _hermite_start(x):
    """Mantissa/log-scale pair for psi_0, psi_1 so that psi_m = v_m * exp(s)."""
    x = np.asarray(x, dtype=float)
    scale = -0.5 * x * x
    v0 = np.full_like(x, PI_M14)
    v1 = math.sqrt(2.0) * x * v0
    return x, scale, v0, v1


def iter_hermite_functions(m_max: int, x):
    """Yield psi_0(x), ..., psi_{m_max}(x) as arrays shaped like ``x``.

    The upward recurrence runs on mantissas with a separate log-scale so
    that the Gaussian factor cannot underflow before the polynomial grows.
    """
    x, scale, prev, cur = _hermite_start(x)
    yield prev * np.exp(scale)
    if m_max == 0:
        return
    yield cur * np.exp(scale)
    for m in range(1, m_max):
        nxt = x * math.sqrt(2.0 / (m + 1)) * cur - math.sqrt(m / (m + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE_AT
        if big.any():
            cur = np.where(big, cur / _RESCALE_AT, cur)
            prev = np.where(big, prev / _RESCALE_AT, prev)
            scale = np.where(big, scale + _LOG_RESCALE, scale)
        yield cur * np.exp(scale)


def hermite_functions(m_max: int, x) -> np.ndarray:
    """Table of psi_m(x) for m = 0..m_max, shape ``(m_max + 1,) + x.shape``."""
    return np.array(list(iter_hermite_functions(m_max, x)))


def hermite_fn(m: int, x):
    """Normalized Hermite function psi_m(x) = (sqrt(pi) 2^m m!)^(-1/2) e^(-x^2/2) H_m(x)."""
    if m < 0:
        raise ValueError(f"order must be non-negative, got {m}")
    x_arr, scale, prev, cur = _hermite_start(x)
    if m == 0:
        out = prev * np.exp(scale)
    else:
        for k in range(1, m):
            nxt = x_arr * math.sqrt(2.0 / (k + 1)) * cur - math.sqrt(k / (k + 1)) * prev
            prev, cur = cur, nxt
            big = np.abs(cur) > _RESCALE_AT
            if big.any():
                cur = np.where(big, cur / _RESCALE_AT, cur)
                prev = np.where(big, prev / _RESCALE_AT, prev)
                scale = np.where(big, scale + _LOG_RESCALE, scale)
        out = cur * np.exp(scale)
    return float(out) if np.ndim(out) == 0 else out


def hermite_poly_from_fn(m: int, x):
    """Physicists' H_m(x) rebuilt from psi_m; only sensible for modest m and |x|."""
    norm = math.sqrt(math.sqrt(math.pi) * 2.0 ** m * math.factorial(m))
    return hermite_fn(m, x) * norm * np.exp(0.5 * np.asarray(x, dtype=float) ** 2)


# ---------------------------------------------------------------------------
# Orthogonal polynomials
# ---------------------------------------------------------------------------

def laguerre_poly(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^alpha(x) by upward recurrence."""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return float(prev) if prev.ndim == 0 else prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return float(cur) if np.ndim(cur) == 0 else cur


def gegenbauer_poly(n: int, lam: float, x):
    """Gegenbauer (ultraspherical) polynomial C_n^lam(x) by upward recurrence."""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return float(prev) if prev.ndim == 0 else prev
    cur = 2.0 * lam * x
    for k in range(1, n):
        prev, cur = cur, (2.0 * (k + lam) * x * cur - (k + 2.0 * lam - 1.0) * prev) / (k + 1)
    return float(cur) if np.ndim(cur) == 0 else cur


# ---------------------------------------------------------------------------
# Hypergeometric functions
# ---------------------------------------------------------------------------

# A float sum is kept when its estimated rounding error, (terms) * eps * sum|t|,
# stays below this fraction of |sum|; otherwise it is redone in decimal.
_FLOAT_REL_TOL = 1e-13
_DECIMAL_GUARD = 20
_DECIMAL_MAX_PREC = 4000


def _as_fraction(v: float) -> Fraction:
    return Fraction(v) if not isinstance(v, Fraction) else v


def _float_is_enough(terms: list[float], total: float) -> bool:
    if not all(math.isfinite(t) for t in terms):
        return False
    spread = math.fsum(abs(t) for t in terms)
    return len(terms) * 2.3e-16 * spread <= _FLOAT_REL_TOL * abs(total)


def _start_prec(terms: list[float], total: float) -> int:
    finite = [abs(t) for t in terms if math.isfinite(t)]
    if len(finite) < len(terms) or total == 0.0:
        return 60
    lost = math.log10(max(max(finite), 1e-300) / abs(total))
    return 30 + max(0, math.ceil(lost))


def _decimal_settle(summer, prec: int) -> float | None:
    """Run ``summer(prec)`` at growing precision until two levels agree."""
    while prec <= _DECIMAL_MAX_PREC:
        lo, hi = summer(prec), summer(prec + _DECIMAL_GUARD)
        if lo is not None and hi is not None and abs(lo - hi) <= Decimal("1e-17") * abs(hi):
            return float(hi)
        prec *= 2
    return None


def _hyp1f1_exact(a: float, c: float, z: float, max_terms: int) -> float:
    a_q, c_q, z_q = _as_fraction(a), _as_fraction(c), _as_fraction(z)
    term = Fraction(1)
    total = Fraction(1)
    small = 0
    for k in range(max_terms):
        term = term * (a_q + k) * z_q / ((c_q + k) * (k + 1))
        total += term
        if term == 0 or (a_q + k + 1 > 0 and abs(float(term)) < 1e-17 * abs(float(total))):
            small += 1
            if small == 4:
                return float(total)
        else:
            small = 0
    raise ConvergenceError(f"1F1({a}; {c}; {z}) did not converge in {max_terms} terms")


def _hyp1f1_decimal(a: float, c: float, z: float, max_terms: int, prec: int):
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        a_d, c_d, z_d = Decimal(a), Decimal(c), Decimal(z)
        cut = Decimal(10) ** (-(prec - 5))
        term = total = Decimal(1)
        small = 0
        for k in range(max_terms):
            term = term * (a_d + k) * z_d / ((c_d + k) * (k + 1))
            total += term
            if term == 0 or (a + k + 1 > 0 and abs(term) < cut * abs(total)):
                small += 1
                if small == 4:
                    return total
            else:
                small = 0
    return None


def hyp1f1(a: float, c: float, z: float, max_terms: int = 100_000, exact: bool | None = None) -> float:
    """Kummer's 1F1(a; c; z) by power series with exactly-rounded accumulation.

    Stops once four consecutive terms are below 1e-16 of the running sum.
    For negative ``a`` the alternating terms can cancel by many orders of
    magnitude; by default (``exact=None``) such sums are redone in decimal
    arithmetic at a precision sized from the cancellation.  ``exact=True``
    sums in rationals, ``exact=False`` forces the plain float series.
    """
    if c <= 0 and float(c).is_integer():
        raise ValueError(f"c must not be a non-positive integer, got {c}")
    if z < 0:
        raise ValueError("hyp1f1 is only supported for z >= 0")
    if exact:
        return _hyp1f1_exact(a, c, z, max_terms)
    terms = [1.0]
    term = 1.0
    total = 1.0
    small = 0
    for k in range(max_terms):
        term *= (a + k) / (c + k) * z / (k + 1)
        terms.append(term)
        total += term
        if term == 0.0 or abs(term) < 1e-16 * abs(total):
            small += 1
            if small == 4:
                break
        else:
            small = 0
    else:
        raise ConvergenceError(f"1F1({a}; {c}; {z}) did not converge in {max_terms} terms")
    total = math.fsum(terms)
    if exact is False or _float_is_enough(terms, total):
        return total
    value = _decimal_settle(lambda p: _hyp1f1_decimal(a, c, z, max_terms, p), _start_prec(terms, total))
    return value if value is not None else _hyp1f1_exact(a, c, z, max_terms)


def _hyp2f1_decimal(m: int, b: float, c: float, z: float, prec: int):
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        b_d, c_d, z_d = Decimal(b), Decimal(c), Decimal(z)
        term = total = Decimal(1)
        for k in range(m):
            term = term * (k - m) * (b_d + k) * z_d / ((c_d + k) * (k + 1))
            total += term
        return total


def hyp2f1_terminating(m: int, b: float, c: float, z: float, exact: bool | None = None) -> float:
    """2F1(-m, b; c; z) summed over its m + 1 terms.

    Sums whose cancellation would cost float accuracy are redone in decimal
    arithmetic (``exact=None``); ``exact=True`` uses rationals throughout and
    ``exact=False`` keeps the float sum.
    """
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    for k in range(m):
        if c + k == 0:
            raise ValueError(f"c = {c} reaches zero in the Pochhammer product at k = {k}")
    if exact:
        b_q, c_q, z_q = _as_fraction(b), _as_fraction(c), _as_fraction(z)
        term = total = Fraction(1)
        for k in range(m):
            term = term * (k - m) * (b_q + k) * z_q / ((c_q + k) * (k + 1))
            total += term
        return float(total)
    terms = [1.0]
    term = 1.0
    for k in range(m):
        term *= (-m + k) * (b + k) / ((c + k) * (k + 1)) * z
        terms.append(term)
    total = math.fsum(terms)
    if exact is False or _float_is_enough(terms, total):
        return total
    value = _decimal_settle(lambda p: _hyp2f1_decimal(m, b, c, z, p), _start_prec(terms, total))
    return value if value is not None else hyp2f1_terminating(m, b, c, z, exact=True)


# ---------------------------------------------------------------------------
# Spherical Bessel functions
# ---------------------------------------------------------------------------

def _spherical_j(ell: int, z: np.ndarray) -> np.ndarray:
    if ell == 0:
        return np.sin(z) / z
    start = ell + 20 + int(math.ceil(float(z.max())))
    nxt = np.zeros_like(z)
    cur = np.full_like(z, 1e-30)
    j_ell = np.zeros_like(z)
    for k in range(start, 0, -1):
        # cur holds f_k; produce f_{k-1}
        prev = (2 * k + 1) / z * cur - nxt
        nxt, cur = cur, prev
        big = np.abs(cur) > _RESCALE_AT
        if big.any():
            cur = np.where(big, cur / _RESCALE_AT, cur)
            nxt = np.where(big, nxt / _RESCALE_AT, nxt)
            j_ell = np.where(big, j_ell / _RESCALE_AT, j_ell)
        if k - 1 == ell:
            j_ell = cur.copy()
    f0, f1 = cur, nxt
    sin_z, cos_z = np.sin(z), np.cos(z)
    j0 = sin_z / z
    j1 = sin_z / z ** 2 - cos_z / z
    use_j0 = np.abs(j0) >= np.abs(j1)
    norm = np.where(use_j0, j0 / np.where(f0 == 0, 1.0, f0), j1 / np.where(f1 == 0, 1.0, f1))
    return j_ell * norm


def _spherical_y(ell: int, z: np.ndarray) -> np.ndarray:
    prev = -np.cos(z) / z
    if ell == 0:
        return prev
    cur = -np.cos(z) / z ** 2 - np.sin(z) / z
    for k in range(1, ell):
        prev, cur = cur, (2 * k + 1) / z * cur - prev
    return cur


def spherical_bessel(ell: int, kind: str, z):
    """Spherical Bessel j_ell(z) (``kind="regular"``) or Neumann n_ell(z) (``"irregular"``).

    The regular kind uses Miller's downward recurrence normalized by whichever of
    j_0, j_1 is larger in magnitude; the irregular kind recurs upward.
    """
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr <= 0):
        raise ValueError("spherical_bessel requires z > 0")
    flat = np.atleast_1d(z_arr).ravel()
    if kind == "regular":
        out = _spherical_j(ell, flat)
    elif kind == "irregular":
        out = _spherical_y(ell, flat)
    else:
        raise ValueError(f"kind must be 'regular' or 'irregular', got {kind!r}")
    out = out.reshape(z_arr.shape)
    return float(out) if out.ndim == 0 else out


def spherical_bessel_deriv(ell: int, kind: str, z):
    """Derivative via the ladder relation f_ell' = f_{ell-1} - (ell+1)/z f_ell."""
    z_arr = np.asarray(z, dtype=float)
    if ell == 0:
        return -np.asarray(spherical_bessel(1, kind, z_arr))
    return np.asarray(spherical_bessel(ell - 1, kind, z_arr)) - (ell + 1) / z_arr * np.asarray(
        spherical_bessel(ell, kind, z_arr)
    )


# ---------------------------------------------------------------------------
# Verification quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    lower: float
    upper: float
    rel_tol: float = 1e-12
    max_subdivisions: int = 500
    abs_tol: float = 1e-14
    points: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"need lower < upper, got [{self.lower}, {self.upper}]")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")


def hermite_quad_bounds(m_max: int) -> tuple[float, float]:
    """Symmetric truncation of the real line for integrands carrying psi_m, m <= m_max."""
    half = 14.0 + math.sqrt(2 * m_max + 1)
    return -half, half


def adaptive_quad(integrand: Callable[[float], float], spec: QuadratureSpec) -> float:
    """Adaptive Gauss-Kronrod integral of ``integrand`` over ``[spec.lower, spec.upper]``."""
    kwargs = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdivisions, full_output=1)
    if spec.points:
        kwargs["points"] = spec.points
    value, _err, _info, *message = integrate.quad(integrand, spec.lower, spec.upper, **kwargs)
    if message and "maximum number of subdivisions" in message[0]:
        raise QuadratureError(
            f"tolerance {spec.rel_tol:g} not met on [{spec.lower}, {spec.upper}] "
            f"within {spec.max_subdivisions} subdivisions"
        )
    return float(value)


def central_second_derivative(f: Callable[[float], float], x: float, h: float = 1e-2) -> float:
    """Sixth-order central difference for f''(x)."""
    c = (2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0)
    return sum(ck * f(x + (k - 3) * h) for k, ck in enumerate(c)) / (180.0 * h * h)
