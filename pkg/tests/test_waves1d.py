import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jmatrix_waves import specfun, waves1d
from jmatrix_waves.analysis import recursion_residuals
from jmatrix_waves.exceptions import TurningPointError
from jmatrix_waves.verification import hermite_projection, jmatrix_block_1d
from jmatrix_waves.waves1d import EVEN, ODD, Kind, ParityChannel

MU = 1.2

# mpmath oracles at 50 digits (normalized Hermite functions, 1F1 with Gamma-ratio prefactors)
S0_EVEN = 0.91645351029120895246
S0_ODD = 1.55527318024591024452
S1_EVEN = -1.21829732452596302487
S1_ODD = 0.07619251404476260146
S1_EVEN_MU0 = 1.33133536380038971280  # pi^(1/4)
C_EVEN = {0: 2.21407192273855865466, 1: 0.76022912465423572195, 5: -0.71055452294399598646,
          20: -0.65243395025201489821, 50: -0.51049811841809681332, 200: 0.21402727674461245042}
C_ODD = {0: -0.67113012162411402413, 1: -1.29284482686593183054, 5: 0.77312354617885243864,
         20: -0.06269270875515147581, 50: -0.10624444081430346007, 200: -0.31787013475925027866}


class TestBasis:
    def test_examples(self):
        assert waves1d.basis_fn_1d(0, EVEN, 0.0) == pytest.approx(math.pi**-0.25)
        assert waves1d.basis_fn_1d(0, ODD, 0.0) == 0.0
        assert waves1d.basis_fn_1d(1, EVEN, 1.0) == pytest.approx(0.32214418255673759, rel=1e-14)

    def test_iterator_matches_pointwise(self):
        y = np.linspace(-5, 5, 11)
        rows = list(waves1d.iter_basis_1d(6, ODD, y))
        for n in (0, 3, 6):
            np.testing.assert_allclose(rows[n], waves1d.basis_fn_1d(n, ODD, y), rtol=1e-13, atol=1e-300)


class TestRegularCoefficients:
    def test_closed_form_examples(self):
        assert waves1d.s_closed(0, EVEN, MU) == pytest.approx(S0_EVEN, rel=1e-14)
        assert waves1d.s_closed(0, ODD, MU) == pytest.approx(S0_ODD, rel=1e-14)
        assert waves1d.s_closed(1, EVEN, 1e-12) == pytest.approx(S1_EVEN_MU0, rel=1e-12)

    def test_seed_examples(self):
        assert waves1d.seed_s(EVEN, MU) == pytest.approx(S0_EVEN, rel=1e-14)
        assert waves1d.seed_s(ODD, 1e-12) == pytest.approx(2 * math.pi**0.25 * 1e-12, rel=1e-10)
        assert waves1d.seed_s(ParityChannel("even", 2.0), MU) == pytest.approx(2 * S0_EVEN, rel=1e-14)
        for ch in (EVEN, ODD):
            assert waves1d.seed_s(ch, MU) == pytest.approx(waves1d.s_closed(0, ch, MU), rel=1e-15)

    def test_propagation_examples(self):
        even = waves1d.propagate_regular(EVEN, MU, 1)
        odd = waves1d.propagate_regular(ODD, MU, 1)
        assert even[0] == waves1d.seed_s(EVEN, MU)
        assert even[1] == pytest.approx(S1_EVEN, rel=1e-13)
        assert odd[1] == pytest.approx(S1_ODD, rel=1e-12)

    @pytest.mark.parametrize("ch", [EVEN, ODD])
    @pytest.mark.parametrize("mu", [0.5, 1.2, 3.0])
    def test_closed_vs_recursion(self, ch, mu):
        rec = waves1d.propagate_regular(ch, mu, 200).values
        closed = waves1d.s_closed_vector(ch, mu, 200).values
        assert np.all(np.abs(rec - closed) <= 1e-10 * np.maximum(1.0, np.abs(closed)))

    def test_vector_is_read_only(self):
        vec = waves1d.s_closed_vector(EVEN, MU, 5)
        with pytest.raises(ValueError):
            vec.values[0] = 1.0
        assert vec.n_max == 5 and vec.provenance is waves1d.Provenance.CLOSED_FORM


class TestComplementaryCoefficients:
    @pytest.mark.parametrize("n", sorted(C_EVEN))
    def test_closed_form_vs_mpmath(self, n):
        assert waves1d.c_closed(n, EVEN, MU) == pytest.approx(C_EVEN[n], rel=1e-12)
        assert waves1d.c_closed(n, ODD, MU) == pytest.approx(C_ODD[n], rel=1e-12)

    def test_small_mu_limit(self):
        assert abs(waves1d.c_closed(0, EVEN, 1e-9)) < 1e-8

    @pytest.mark.parametrize("ch,table", [(EVEN, C_EVEN), (ODD, C_ODD)])
    def test_recursion_vs_oracle(self, ch, table):
        rec = waves1d.propagate_complementary(ch, MU, 200)
        assert rec[0] == waves1d.c_closed(0, ch, MU)
        for n, ref in table.items():
            assert rec[n] == pytest.approx(ref, rel=1e-8)

    @pytest.mark.parametrize("ch", [EVEN, ODD])
    def test_source_terms_as_printed(self, ch):
        # both sides are O(e^{mu^2/2}); mpmath gives a residual below 1e-50
        assert abs(waves1d.initial_source_residual(ch, MU)) < 1e-13 * math.exp(0.5 * MU**2)

    def test_source_residual_linear_in_amplitude(self):
        r1 = waves1d.initial_source_residual(ParityChannel("odd", 1.0), 2.0)
        r3 = waves1d.initial_source_residual(ParityChannel("odd", 3.0), 2.0)
        assert r3 == pytest.approx(3 * r1, abs=1e-12)

    def test_homogeneous_initial_relation_fails_for_c(self):
        for ch in (EVEN, ODD):
            c0, c1 = waves1d.c_closed(0, ch, MU), waves1d.c_closed(1, ch, MU)
            diag, _, upper = waves1d.recursion_terms(0, ch)
            assert abs((MU**2 - diag) * c0 + upper * c1) > 0.1


class TestRecursionAndOperator:
    def test_jmatrix_examples(self):
        sub, diag, sup = waves1d.jmatrix_row_1d(0, EVEN, MU)
        assert (sub, diag, sup) == pytest.approx((0.0, 0.94, math.sqrt(0.5)))
        sub, diag, sup = waves1d.jmatrix_row_1d(0, ODD, MU)
        assert (sub, diag, sup) == pytest.approx((0.0, -0.06, math.sqrt(1.5)))
        assert waves1d.jmatrix_row_1d(1, EVEN, 0.0)[1] == pytest.approx(-2.5)

    @pytest.mark.parametrize("ch", [EVEN, ODD])
    def test_tridiagonal_oracle(self, ch):
        block = jmatrix_block_1d(ch, MU, 7)
        for n in range(7):
            sub, diag, sup = waves1d.jmatrix_row_1d(n, ch, MU)
            for m in range(7):
                expected = {n - 1: sub, n: diag, n + 1: sup}.get(m, 0.0)
                assert block[n, m] == pytest.approx(expected, abs=1e-8)

    @pytest.mark.parametrize("ch", [EVEN, ODD])
    def test_integral_identities(self, ch):
        for n in range(9):
            quad, closed = hermite_projection(n, ch, MU)
            assert quad == pytest.approx(closed, rel=1e-9, abs=1e-12)

    def test_recursion_residuals_pass_and_detect_corruption(self):
        closed = waves1d.s_closed_vector(EVEN, MU, 200)
        assert recursion_residuals(closed).passed
        vals = closed.values.copy()
        vals[57] *= 1 + 1e-6
        bad = waves1d.CoefficientVector(Kind.REGULAR, EVEN, MU, vals, waves1d.Provenance.CLOSED_FORM)
        assert not recursion_residuals(bad).passed


class TestEnergyOde:
    @pytest.mark.parametrize("n,kind,ch", [(0, "regular", EVEN), (3, "complementary", ODD), (4, "regular", ODD),
                                          (1, "complementary", EVEN)])
    def test_second_order(self, n, kind, ch):
        h = 1e-2
        r1 = waves1d.energy_ode_residual_1d(n, kind, ch, MU, h)
        r2 = waves1d.energy_ode_residual_1d(n, kind, ch, MU, h / 2)
        assert r2 / r1 == pytest.approx(0.25, abs=0.05)

    def test_examples_magnitude(self):
        assert abs(waves1d.energy_ode_residual_1d(0, "regular", EVEN, MU, 1e-3)) < 1e-4
        assert abs(waves1d.energy_ode_residual_1d(3, "complementary", ODD, MU, 1e-3)) < 1e-3

    def test_rejects_bad_step(self):
        with pytest.raises(ValueError):
            waves1d.energy_ode_residual_1d(0, "regular", EVEN, 0.1, 0.2)


class TestSeries:
    def test_examples(self):
        assert waves1d.eval_series_1d("regular", EVEN, MU, 0.0) == pytest.approx(1.0, abs=1e-3)
        assert waves1d.eval_series_1d("regular", EVEN, MU, 2.0) == pytest.approx(math.cos(2.4), abs=1e-3)
        assert waves1d.eval_series_1d("complementary", ODD, MU, 0.0) == 0.0

    @pytest.mark.parametrize("accel", ["avg", "wynn"])
    def test_regular_matches_trig(self, accel):
        y = np.linspace(-10, 10, 201)
        np.testing.assert_allclose(waves1d.eval_series_1d("regular", EVEN, MU, y, accel=accel), np.cos(MU * y), atol=1e-5)
        np.testing.assert_allclose(waves1d.eval_series_1d("regular", ODD, MU, y, accel=accel), np.sin(MU * y), atol=1e-5)

    def test_amplitude_scales_series(self):
        y = np.linspace(0, 5, 6)
        one = waves1d.eval_series_1d("complementary", EVEN, MU, y)
        three = waves1d.eval_series_1d("complementary", ParityChannel("even", 3.0), MU, y)
        np.testing.assert_allclose(three, 3 * one, rtol=1e-12, atol=1e-14)

    def test_complementary_asymptotics(self):
        y = np.linspace(15, 25, 101)
        np.testing.assert_allclose(waves1d.eval_series_1d("complementary", EVEN, MU, y), np.sin(MU * y), atol=1e-6)
        np.testing.assert_allclose(waves1d.eval_series_1d("complementary", ODD, MU, y), np.cos(MU * y), atol=1e-6)

    @given(st.floats(0.0, 12.0), st.sampled_from(["regular", "complementary"]))
    @settings(max_examples=30, deadline=None)
    def test_parity_exact(self, y, kind):
        pair = waves1d.eval_series_1d(kind, EVEN, MU, np.array([y, -y]), n_max=150)
        assert pair[0] == pair[1]
        pair = waves1d.eval_series_1d(kind, ODD, MU, np.array([y, -y]), n_max=150)
        assert pair[0] == -pair[1]

    def test_even_complementary_flat_at_origin(self):
        for h in (1e-2, 1e-3, 1e-4):
            pair = waves1d.eval_series_1d("complementary", EVEN, MU, np.array([h, -h]))
            assert abs(pair[0] - pair[1]) / (2 * h) < 1e-6

    def test_turning_point_guard(self):
        with pytest.raises(TurningPointError):
            waves1d.eval_series_1d("regular", EVEN, MU, 20.0, n_max=100)

    def test_start_beyond_nmax_rejected(self):
        with pytest.raises(ValueError):
            waves1d.eval_series_1d("regular", EVEN, MU, 1.0, start_n=200, n_max=100)

    def test_rejects_non_positive_mu(self):
        with pytest.raises(ValueError):
            waves1d.s_closed(0, EVEN, 0.0)
        with pytest.raises(ValueError):
            ParityChannel("even", 0.0)

    def test_default_n_max_rule(self):
        assert waves1d.default_n_max(10.0) == 50 + 64
        assert waves1d.default_n_max(30.0) == 450 + 64

    def test_reuses_supplied_coefficients(self):
        coeffs = waves1d.coefficients("complementary", ODD, MU, 300)
        y = np.array([0.5, 3.0])
        a = waves1d.eval_series_1d("complementary", ODD, MU, y, coeffs=coeffs)
        b = waves1d.eval_series_1d("complementary", ODD, MU, y, n_max=300)
        np.testing.assert_array_equal(a, b)

    def test_hermite_reconstruction_consistent(self):
        # sqrt(2 pi) psi_m(mu) == e^{-mu^2/2} H_m(mu) * sqrt(2 pi) / norm
        m = 6
        norm = math.sqrt(math.sqrt(math.pi) * 2**m * math.factorial(m))
        assert specfun.hermite_poly_from_fn(m, MU) * math.exp(-MU**2 / 2) / norm == pytest.approx(specfun.hermite_fn(m, MU))
