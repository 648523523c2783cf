"""scikit-learn style wrappers that evaluate the (f, g) pair of reference waves.

``fit`` computes and stores the coefficient vectors; ``transform`` maps a
column of coordinates ``y`` to two feature columns ``[f, g]``.  The
estimators hold no trainable state beyond those coefficients, so ``fit``
ignores its data apart from sizing the default truncation.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import waves1d, waves3d
from .series import normalize_accel
from .waves1d import Kind, ParityChannel
from .waves3d import AngularChannel

FEATURE_NAMES = np.array(["f", "g"], dtype=object)


class _ReferenceWavesBase(TransformerMixin, BaseEstimator):
    def _check_params(self):
        normalize_accel(self.accel)
        if self.cutoff not in ("sharp", "smooth"):
            raise ValueError(f"cutoff must be 'sharp' or 'smooth', got {self.cutoff!r}")
        if self.start_n < 0:
            raise ValueError("start_n must be non-negative")
        if self.n_max is not None and self.n_max < self.start_n:
            raise ValueError("n_max must be at least start_n")

    def _coords(self, X) -> np.ndarray:
        X = check_array(X, ensure_2d=False, dtype=float)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"expected a single coordinate column, got {X.shape[1]} columns")
            X = X[:, 0]
        return X

    def fit(self, X=None, y=None):
        self._check_params()
        if self.n_max is not None:
            n_max = self.n_max
        elif X is not None:
            n_max = self._default_n_max(float(np.max(np.abs(self._coords(X)), initial=0.0)))
        else:
            n_max = self._default_n_max(0.0)
        n_max = max(n_max, self.start_n, 2)
        channel = self._channel()
        self.regular_ = self._coefficients(Kind.REGULAR, channel, n_max)
        self.complementary_ = self._coefficients(Kind.COMPLEMENTARY, channel, n_max)
        self.n_max_ = n_max
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, ("regular_", "complementary_"))
        y = self._coords(X)
        f = self._evaluate(Kind.REGULAR, y, self.regular_)
        g = self._evaluate(Kind.COMPLEMENTARY, y, self.complementary_)
        return np.column_stack([np.atleast_1d(f), np.atleast_1d(g)])

    def get_feature_names_out(self, input_features=None):
        return FEATURE_NAMES.copy()


class ReferenceWaves1D(_ReferenceWavesBase):
    """Regular and complementary 1D waves in one parity channel.

    Parameters
    ----------
    mu : float
        Wave number, positive.
    parity : {"even", "odd"}
    amplitude : float
        A for the even channel, B for the odd one.
    start_n : int
        Index of the first retained term.
    n_max : int or None
        Truncation; ``None`` sizes it from the data passed to ``fit``.
    accel : {"none", "avg", "wynn"}
    cutoff : {"sharp", "smooth"}
        How terms below ``start_n`` are removed.
    """

    def __init__(self, mu=1.2, parity="even", amplitude=1.0, start_n=0, n_max=None, accel="avg", cutoff="sharp"):
        self.mu = mu
        self.parity = parity
        self.amplitude = amplitude
        self.start_n = start_n
        self.n_max = n_max
        self.accel = accel
        self.cutoff = cutoff

    def _channel(self) -> ParityChannel:
        return ParityChannel(self.parity, self.amplitude)

    def _default_n_max(self, extent: float) -> int:
        return waves1d.default_n_max(extent)

    def _coefficients(self, kind, channel, n_max):
        return waves1d.coefficients(kind, channel, self.mu, n_max)

    def _evaluate(self, kind, y, coeffs):
        return waves1d.eval_series_1d(
            kind, coeffs.channel, self.mu, y, start_n=self.start_n, n_max=self.n_max_,
            accel=self.accel, cutoff=self.cutoff, coeffs=coeffs,
        )


class ReferenceWaves3D(_ReferenceWavesBase):
    """Regular and complementary radial waves for angular momentum ``ell``.

    Parameters are as for :class:`ReferenceWaves1D` with ``ell`` in place of
    ``parity``; coordinates must be non-negative.
    """

    def __init__(self, mu=1.0, ell=0, amplitude=1.0, start_n=0, n_max=None, accel="avg", cutoff="sharp"):
        self.mu = mu
        self.ell = ell
        self.amplitude = amplitude
        self.start_n = start_n
        self.n_max = n_max
        self.accel = accel
        self.cutoff = cutoff

    def _channel(self) -> AngularChannel:
        return AngularChannel(self.ell, self.amplitude)

    def _default_n_max(self, extent: float) -> int:
        return waves3d.default_n_max_3d(extent, self.mu)

    def _coefficients(self, kind, channel, n_max):
        return waves3d.coefficients_3d(kind, channel, waves3d.energy_angle(self.mu), n_max)

    def _evaluate(self, kind, y, coeffs):
        return waves3d.eval_series_3d(
            kind, coeffs.channel, self.mu, y, start_n=self.start_n, n_max=self.n_max_,
            accel=self.accel, cutoff=self.cutoff, coeffs=coeffs,
        )
