"""One-dimensional free-wave reference solutions in a parity-adapted Hermite basis.

The even channel expands ``A cos(mu y)`` in psi_{2n} and the odd channel
expands ``B sin(mu y)`` in psi_{2n+1}.  The complementary solutions use the
same basis with confluent-hypergeometric coefficients and tend to
``A sin(mu |y|)``-like (even) and ``B cos(mu y)``-like (odd) waves far from
the origin while obeying the basis boundary condition at ``y = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import gammaln

from . import specfun
from .exceptions import TurningPointError
from .series import DEFAULT_WINDOW, sum_series

SQRT_2PI = math.sqrt(2.0 * math.pi)


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class Kind(str, Enum):
    REGULAR = "regular"
    COMPLEMENTARY = "complementary"


class Provenance(str, Enum):
    CLOSED_FORM = "closed_form"
    RECURSION = "recursion"


@dataclass(frozen=True)
class ParityChannel:
    """Even (``+``) or odd (``-``) subspace together with its amplitude A or B."""

    parity: Parity = Parity.EVEN
    amplitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        if self.amplitude == 0:
            raise ValueError("amplitude must be non-zero")

    @property
    def even(self) -> bool:
        return self.parity is Parity.EVEN

    @property
    def sign(self) -> float:
        """The upper/lower sign choice: +1/2 for even, -1/2 for odd."""
        return 0.5 if self.even else -0.5

    @property
    def offset(self) -> int:
        """Hermite order of basis element n is ``2n + offset``."""
        return 0 if self.even else 1


EVEN = ParityChannel(Parity.EVEN)
ODD = ParityChannel(Parity.ODD)


@dataclass(frozen=True)
class CoefficientVector:
    kind: Kind
    channel: ParityChannel
    mu: float
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


def check_mu(mu: float) -> float:
    mu = float(mu)
    if not mu > 0:
        raise ValueError(f"wave number mu must be positive, got {mu}")
    return mu


def _channel(channel) -> ParityChannel:
    if isinstance(channel, ParityChannel):
        return channel
    return ParityChannel(Parity(channel))


# ---------------------------------------------------------------------------
# Basis
# ---------------------------------------------------------------------------

def basis_fn_1d(n: int, channel: ParityChannel, y):
    """phi_n^+(y) = psi_{2n}(y) or phi_n^-(y) = psi_{2n+1}(y)."""
    channel = _channel(channel)
    if n < 0:
        raise ValueError("n must be non-negative")
    return specfun.hermite_fn(2 * n + channel.offset, y)


def iter_basis_1d(n_max: int, channel: ParityChannel, y):
    """Yield phi_0(y) .. phi_{n_max}(y) for the channel, one array per index."""
    channel = _channel(channel)
    for m, row in enumerate(specfun.iter_hermite_functions(2 * n_max + 1, y)):
        if m % 2 == channel.offset:
            yield row


# ---------------------------------------------------------------------------
# Regular coefficients s_n
# ---------------------------------------------------------------------------

def s_closed(n: int, channel: ParityChannel, mu: float) -> float:
    """s_n^+(mu) = (-1)^n sqrt(2 pi) A psi_{2n}(mu); s_n^- likewise with psi_{2n+1}."""
    channel = _channel(channel)
    mu = check_mu(mu)
    return (-1.0) ** n * SQRT_2PI * channel.amplitude * specfun.hermite_fn(2 * n + channel.offset, mu)


def s_closed_vector(channel: ParityChannel, mu: float, n_max: int) -> CoefficientVector:
    channel = _channel(channel)
    mu = check_mu(mu)
    psi = specfun.hermite_functions(2 * n_max + 1, mu)[channel.offset :: 2][: n_max + 1]
    signs = (-1.0) ** np.arange(n_max + 1)
    values = signs * SQRT_2PI * channel.amplitude * psi
    return CoefficientVector(Kind.REGULAR, channel, mu, values, Provenance.CLOSED_FORM)


def seed_s(channel: ParityChannel, mu: float) -> float:
    channel = _channel(channel)
    mu = check_mu(mu)
    gauss = math.exp(-0.5 * mu * mu)
    if channel.even:
        return math.sqrt(2.0) * channel.amplitude * math.pi ** 0.25 * gauss
    return 2.0 * math.pi ** 0.25 * channel.amplitude * mu * gauss


def recursion_terms(n: int, channel: ParityChannel) -> tuple[float, float, float]:
    """(diagonal, lower, upper) weights of the three-term relation at index n.

    mu^2 x_n = diag x_n - lower x_{n-1} - upper x_{n+1}.
    """
    sg = _channel(channel).sign
    return 2 * n + 1 - sg, math.sqrt(n * (n - sg)), math.sqrt((n + 1) * (n + 1 - sg))


def _propagate(values: np.ndarray, channel: ParityChannel, mu: float, first: int) -> None:
    mu2 = mu * mu
    for n in range(first, len(values) - 1):
        diag, lower, upper = recursion_terms(n, channel)
        values[n + 1] = ((diag - mu2) * values[n] - lower * values[n - 1]) / upper


def propagate_regular(channel: ParityChannel, mu: float, n_max: int) -> CoefficientVector:
    """s_0 .. s_{n_max} from the seed, the homogeneous initial relation and upward recursion."""
    channel = _channel(channel)
    mu = check_mu(mu)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    values = np.zeros(n_max + 1)
    values[0] = seed_s(channel, mu)
    diag, _, upper = recursion_terms(0, channel)
    values[1] = (diag - mu * mu) * values[0] / upper
    _propagate(values, channel, mu, 1)
    return CoefficientVector(Kind.REGULAR, channel, mu, values, Provenance.RECURSION)


# ---------------------------------------------------------------------------
# Complementary coefficients c_n
# ---------------------------------------------------------------------------

D_EVEN = 2.0 * math.sqrt(2.0)
D_ODD = math.sqrt(2.0)


def c_closed(n: int, channel: ParityChannel, mu: float) -> float:
    """Complementary coefficient from the confluent hypergeometric closed form."""
    channel = _channel(channel)
    mu = check_mu(mu)
    gauss = math.exp(-0.5 * mu * mu)
    if channel.even:
        norm = D_EVEN * math.exp(0.5 * (gammaln(n + 1) - gammaln(n + 0.5)))
        return channel.amplitude * norm * mu * gauss * specfun.hyp1f1(-n + 0.5, 1.5, mu * mu)
    norm = D_ODD * math.exp(0.5 * (gammaln(n + 1) - gammaln(n + 1.5)))
    return channel.amplitude * norm * gauss * specfun.hyp1f1(-n - 0.5, 0.5, mu * mu)


def propagate_complementary(channel: ParityChannel, mu: float, n_max: int) -> CoefficientVector:
    """c_0, c_1 from the closed form, then the same upward recursion as s_n."""
    channel = _channel(channel)
    mu = check_mu(mu)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    values = np.zeros(n_max + 1)
    values[0] = c_closed(0, channel, mu)
    values[1] = c_closed(1, channel, mu)
    _propagate(values, channel, mu, 1)
    return CoefficientVector(Kind.COMPLEMENTARY, channel, mu, values, Provenance.RECURSION)


def initial_source_residual(channel: ParityChannel, mu: float) -> float:
    """LHS - RHS of the inhomogeneous n = 0 relation obeyed by c_0, c_1."""
    channel = _channel(channel)
    mu = check_mu(mu)
    c0 = c_closed(0, channel, mu)
    c1 = c_closed(1, channel, mu)
    grow = math.exp(0.5 * mu * mu)
    if channel.even:
        source = math.pi ** -0.25 * math.sqrt(2.0) * channel.amplitude * mu * grow
        return (mu * mu - 0.5) * c0 + math.sqrt(0.5) * c1 - source
    source = -(math.pi ** -0.25) * channel.amplitude * grow
    return (mu * mu - 1.5) * c0 + math.sqrt(1.5) * c1 - source


def coefficients(kind: Kind, channel: ParityChannel, mu: float, n_max: int) -> CoefficientVector:
    """Coefficients used for series evaluation: closed form for s, recursion for c."""
    kind = Kind(kind)
    if kind is Kind.REGULAR:
        return s_closed_vector(channel, mu, n_max)
    if n_max < 2:
        vals = [c_closed(n, channel, mu) for n in range(n_max + 1)]
        return CoefficientVector(kind, _channel(channel), mu, vals, Provenance.CLOSED_FORM)
    return propagate_complementary(channel, mu, n_max)


# ---------------------------------------------------------------------------
# Wave operator and energy equation
# ---------------------------------------------------------------------------

def jmatrix_row_1d(n: int, channel: ParityChannel, mu: float) -> tuple[float, float, float]:
    """(sub, diag, sup) of <phi_n|d^2/dy^2 + mu^2|phi_m> for m = n-1, n, n+1."""
    mu = float(mu)
    diag, lower, upper = recursion_terms(n, channel)
    return lower, mu * mu - diag, upper


def energy_ode_residual_1d(n: int, kind: Kind, channel: ParityChannel, mu: float, h: float) -> float:
    """Central-difference residual of the second-order energy equation for x_n(mu)."""
    channel = _channel(channel)
    mu = check_mu(mu)
    if not (h > 0 and mu - h > 0):
        raise ValueError("need h > 0 and mu - h > 0")
    func = s_closed if Kind(kind) is Kind.REGULAR else c_closed
    lo, mid, hi = (func(n, channel, m) for m in (mu - h, mu, mu + h))
    eigen = 2 * (2 * n + 1) - (1 if channel.even else -1)
    return (hi - 2 * mid + lo) / (h * h) - mu * mu * mid + eigen * mid


# ---------------------------------------------------------------------------
# Series evaluation
# ---------------------------------------------------------------------------

def default_n_max(y_extent: float, window: int = DEFAULT_WINDOW) -> int:
    """ceil(Y^2 / 2) + window terms for a grid with |y| <= Y."""
    return int(math.ceil(y_extent * y_extent / 2.0)) + window


def eval_series_1d(
    kind: Kind,
    channel: ParityChannel,
    mu: float,
    y,
    start_n: int = 0,
    n_max: int | None = None,
    accel: str = "avg",
    cutoff: str = "sharp",
    coeffs: CoefficientVector | None = None,
):
    """Sum x_n phi_n(y) for n = start_n .. n_max with tail acceleration.

    ``y`` may be a scalar or an array; arrays are evaluated in one sweep of
    the Hermite recurrence.  Pass ``coeffs`` to reuse a precomputed vector.
    """
    channel = _channel(channel)
    mu = check_mu(mu)
    y_arr = np.asarray(y, dtype=float)
    extent = float(np.max(np.abs(y_arr))) if y_arr.size else 0.0
    if n_max is None:
        n_max = coeffs.n_max if coeffs is not None else default_n_max(extent)
    if start_n < 0 or start_n > n_max:
        raise ValueError(f"need 0 <= start_n <= n_max, got start_n={start_n}, n_max={n_max}")
    if 2 * n_max + 1 <= extent * extent:
        raise TurningPointError(
            f"n_max={n_max} leaves |y|={extent:g} beyond the basis turning point; need 2*n_max+1 > y^2"
        )
    if coeffs is None:
        coeffs = coefficients(kind, channel, mu, n_max)
    elif coeffs.n_max < n_max:
        raise ValueError("supplied coefficient vector is shorter than n_max")
    out = sum_series(coeffs.values[: n_max + 1], iter_basis_1d(n_max, channel, y_arr), start_n, accel, cutoff=cutoff)
    return float(out) if out.ndim == 0 else out
