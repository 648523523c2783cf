import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from jmatrix_waves import specfun
from jmatrix_waves.exceptions import ConvergenceError, QuadratureError
from jmatrix_waves.specfun import QuadratureSpec, adaptive_quad

# reference values below were computed with mpmath at 50 digits
PSI_2_AT_1 = 0.32214418255673759075
HYP1F1_HALF_3HALF_1 = 1.46265174590718160880
J1_AT_1 = 0.30116867893975678925
GAUSS_COS_INTEGRAL = 1.22010696752969086833  # sqrt(2 pi) exp(-0.72)


def mp_hermite_fn(m, x):
    mpmath.mp.dps = 40
    x = mpmath.mpf(x)
    val = mpmath.exp(-x * x / 2) * mpmath.hermite(m, x) / mpmath.sqrt(mpmath.sqrt(mpmath.pi) * 2**m * mpmath.factorial(m))
    return float(val)


class TestHermite:
    def test_examples(self):
        assert specfun.hermite_fn(0, 0.0) == pytest.approx(math.pi**-0.25, abs=1e-15)
        assert specfun.hermite_fn(1, 0.0) == 0.0
        assert specfun.hermite_fn(2, 1.0) == pytest.approx(PSI_2_AT_1, rel=1e-14)

    @pytest.mark.parametrize("m", [0, 1, 5, 17, 40, 85, 150])
    @pytest.mark.parametrize("x", [-7.5, -1.3, 0.2, 3.0, 12.0])
    def test_matches_mpmath(self, m, x):
        assert specfun.hermite_fn(m, x) == pytest.approx(mp_hermite_fn(m, x), rel=1e-11, abs=1e-300)

    def test_no_overflow_at_high_order(self):
        vals = specfun.hermite_functions(20000, np.array([0.0, 3.0, 49.0, 50.0]))
        assert np.all(np.isfinite(vals))
        assert np.max(np.abs(vals)) <= math.pi**-0.25 + 1e-12

    def test_deep_tail_underflows_gracefully(self):
        # far outside the turning point the value is below double range but must not be nan
        assert specfun.hermite_fn(10, 45.0) == pytest.approx(mp_hermite_fn(10, 45.0), rel=1e-10, abs=1e-300)

    @given(st.integers(0, 300), st.floats(-40, 40, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_parity_exact_and_bounded(self, m, x):
        a, b = specfun.hermite_fn(m, x), specfun.hermite_fn(m, -x)
        assert a == (-1) ** m * b
        assert abs(a) <= 0.7511255444649425 + 1e-14

    def test_table_matches_scalar(self):
        x = np.linspace(-6, 6, 13)
        table = specfun.hermite_functions(30, x)
        for m in (0, 7, 30):
            np.testing.assert_allclose(table[m], [specfun.hermite_fn(m, v) for v in x], rtol=1e-14, atol=1e-300)

    def test_orthonormality_up_to_30(self):
        spec = QuadratureSpec(-14.0, 14.0, rel_tol=1e-12, max_subdivisions=1000)
        for n in range(0, 31, 3):
            for m in range(n, 31, 2):
                val = adaptive_quad(lambda y: specfun.hermite_fn(n, y) * specfun.hermite_fn(m, y), spec)
                assert val == pytest.approx(float(n == m), abs=1e-10)

    def test_poly_from_fn_reconstructs_hermite(self):
        for m in (0, 3, 8, 16):
            assert specfun.hermite_poly_from_fn(m, 1.1) == pytest.approx(special.eval_hermite(m, 1.1), rel=1e-12)


class TestOrthogonalPolynomials:
    def test_laguerre_examples(self):
        assert specfun.laguerre_poly(0, 3, 5.0) == 1.0
        assert specfun.laguerre_poly(1, 1, 2.0) == 0.0
        assert specfun.laguerre_poly(2, 1, 2.0) == pytest.approx(-1.0, abs=1e-15)

    @pytest.mark.parametrize("n,alpha,x", [(5, 1, 0.3), (12, 7, 9.5), (40, 3, 30.0)])
    def test_laguerre_vs_scipy(self, n, alpha, x):
        assert specfun.laguerre_poly(n, alpha, x) == pytest.approx(special.eval_genlaguerre(n, alpha, x), rel=1e-11)

    def test_gegenbauer_examples(self):
        assert specfun.gegenbauer_poly(0, 1, 0.6) == 1.0
        assert specfun.gegenbauer_poly(1, 1, 0.6) == pytest.approx(1.2)
        assert specfun.gegenbauer_poly(2, 1, 0.6) == pytest.approx(0.44, abs=1e-15)

    @pytest.mark.parametrize("theta", [0.3, 1.0, 2.5])
    def test_chebyshev_second_kind_identity(self, theta):
        for n in range(51):
            lhs = specfun.gegenbauer_poly(n, 1, math.cos(theta)) * math.sin(theta)
            assert lhs == pytest.approx(math.sin((n + 1) * theta), abs=1e-12)

    def test_gegenbauer_vs_scipy(self):
        assert specfun.gegenbauer_poly(9, 4, -0.35) == pytest.approx(special.eval_gegenbauer(9, 4, -0.35), rel=1e-12)


class TestHypergeometric:
    def test_1f1_examples(self):
        assert specfun.hyp1f1(0.5, 1.5, 0.0) == 1.0
        assert specfun.hyp1f1(-1, 0.5, 2.0) == pytest.approx(-3.0, abs=1e-15)
        assert specfun.hyp1f1(0.5, 1.5, 1.0) == pytest.approx(HYP1F1_HALF_3HALF_1, rel=1e-15)

    @pytest.mark.parametrize("k", [1, 2, 5, 9, 14])
    def test_1f1_terminating_polynomial(self, k):
        # exact rational evaluation of the k-term polynomial
        c, z = Fraction(1, 2), Fraction(1.7)
        term, poly = Fraction(1), Fraction(1)
        for j in range(k):
            term *= (-k + j) * z / ((c + j) * (j + 1))
            poly += term
        c, z, poly = 0.5, 1.7, float(poly)
        assert specfun.hyp1f1(-k, c, z) == pytest.approx(poly, rel=1e-14, abs=1e-14)

    @pytest.mark.parametrize("a,c,z", [(-199.5, 1.5, 1.44), (-50.5, 0.5, 9.0), (3.2, 1.5, 40.0), (-0.5, 0.5, 100.0)])
    def test_1f1_vs_mpmath(self, a, c, z):
        mpmath.mp.dps = 60
        ref = float(mpmath.hyp1f1(a, c, z))
        assert specfun.hyp1f1(a, c, z) == pytest.approx(ref, rel=1e-12)

    def test_1f1_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            specfun.hyp1f1(0.5, -2.0, 1.0)
        with pytest.raises(ValueError):
            specfun.hyp1f1(0.5, 1.5, -1.0)

    def test_1f1_nonconvergence_signalled(self):
        with pytest.raises(ConvergenceError):
            specfun.hyp1f1(0.5, 1.5, 100.0, max_terms=10)

    def test_2f1_examples(self):
        assert specfun.hyp2f1_terminating(0, 3.3, 0.7, 0.9) == 1.0
        assert specfun.hyp2f1_terminating(1, 1, 0.5, 0.2) == pytest.approx(0.6, abs=1e-15)
        assert specfun.hyp2f1_terminating(1, 1, 0.5, 0.0) == 1.0

    @pytest.mark.parametrize("m,b,c,z", [(5, 2, -1.5, 0.2), (41, 20, -4.5, 0.04), (211, 200, -4.5, 0.1)])
    def test_2f1_vs_mpmath(self, m, b, c, z):
        mpmath.mp.dps = 80
        ref = float(mpmath.hyp2f1(-m, b, c, z))
        assert specfun.hyp2f1_terminating(m, b, c, z) == pytest.approx(ref, rel=1e-12)

    # short sums at large z cancel enough to defeat plain float accumulation
    @pytest.mark.parametrize("m,b,c,ref", [(15, 1, 0.5, -0.04892525510989873768763), (14, 2, -0.5, 0.06442734951994497047252)])
    def test_2f1_short_cancelling_sums(self, m, b, c, ref):
        z = 1 / (4 * 0.09 + 1)
        assert specfun.hyp2f1_terminating(m, b, c, z) == pytest.approx(ref, rel=1e-13)
        assert specfun.hyp2f1_terminating(m, b, c, z, exact=True) == pytest.approx(ref, rel=1e-14)

    def test_1f1_decimal_path_matches_rationals(self):
        ref = -110186673958.4278408277
        assert specfun.hyp1f1(-40.5, 1.5, 60.0) == pytest.approx(ref, rel=1e-13)
        assert specfun.hyp1f1(-40.5, 1.5, 60.0, exact=True) == pytest.approx(ref, rel=1e-14)

    def test_2f1_rejects_pole(self):
        with pytest.raises(ValueError):
            specfun.hyp2f1_terminating(4, 1.0, -2.0, 0.3)


class TestSphericalBessel:
    def test_examples(self):
        assert specfun.spherical_bessel(0, "regular", math.pi) == pytest.approx(0.0, abs=1e-16)
        assert specfun.spherical_bessel(0, "irregular", math.pi) == pytest.approx(1 / math.pi, rel=1e-15)
        assert specfun.spherical_bessel(1, "regular", 1.0) == pytest.approx(J1_AT_1, rel=1e-14)

    @pytest.mark.parametrize("ell", [0, 1, 3, 6, 12])
    def test_vs_scipy(self, ell):
        z = np.array([0.05, 0.5, 2.0, 9.0, 40.0])
        np.testing.assert_allclose(specfun.spherical_bessel(ell, "regular", z), special.spherical_jn(ell, z), rtol=1e-12)
        np.testing.assert_allclose(specfun.spherical_bessel(ell, "irregular", z), special.spherical_yn(ell, z), rtol=1e-12)

    @pytest.mark.parametrize("ell", range(7))
    def test_wronskian(self, ell):
        z = np.linspace(0.5, 50, 200)
        j, n = specfun.spherical_bessel(ell, "regular", z), specfun.spherical_bessel(ell, "irregular", z)
        dj, dn = specfun.spherical_bessel_deriv(ell, "regular", z), specfun.spherical_bessel_deriv(ell, "irregular", z)
        np.testing.assert_allclose(z**2 * (j * dn - dj * n), 1.0, atol=1e-10)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            specfun.spherical_bessel(0, "regular", 0.0)
        with pytest.raises(ValueError):
            specfun.spherical_bessel(0, "other", 1.0)


class TestQuadrature:
    def test_examples(self):
        assert adaptive_quad(lambda x: x, QuadratureSpec(-1, 1)) == pytest.approx(0.0, abs=1e-15)
        assert adaptive_quad(math.sin, QuadratureSpec(0, math.pi)) == pytest.approx(2.0, rel=1e-13)
        val = adaptive_quad(lambda y: math.exp(-y * y / 2) * math.cos(1.2 * y), QuadratureSpec(-14, 14))
        assert val == pytest.approx(GAUSS_COS_INTEGRAL, rel=1e-12)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(1.0, 1.0)
        with pytest.raises(ValueError):
            QuadratureSpec(0.0, 1.0, rel_tol=0.0)

    def test_subdivision_exhaustion_signalled(self):
        spec = QuadratureSpec(0.0, 200.0, rel_tol=1e-14, max_subdivisions=3, abs_tol=1e-15)
        with pytest.raises(QuadratureError):
            adaptive_quad(lambda x: math.sin(x * x), spec)

    def test_truncation_bounds(self):
        lo, hi = specfun.hermite_quad_bounds(12)
        assert hi == pytest.approx(14 + 5.0) and lo == -hi

    def test_second_derivative_stencil_sixth_order(self):
        err = abs(specfun.central_second_derivative(math.sin, 0.7, h=0.05) + math.sin(0.7))
        assert err < 1e-10
