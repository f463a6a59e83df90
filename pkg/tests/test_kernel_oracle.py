import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from fgcap.errors import DomainError, EvaluationError, ToleranceNotMet
from fgcap.exact_capacity import Arbitrary, Fixed, mean_capacity
from fgcap.kernel_oracle import (
    JacobiParams,
    bin_probabilities,
    integrate,
    jacobi_poly,
    jacobi_series_mixed,
    jacobi_series_plus,
    jacobi_table,
    kernel_arbitrary,
    kernel_fixed,
    kernel_fixed_cd,
    norm_h,
    norm_h_even,
    quad_mean_capacity,
)

params_st = st.tuples(
    st.floats(-0.9, 5), st.floats(-0.9, 5), st.integers(0, 8), st.floats(-1, 1)
)


class TestJacobi:
    def test_degree_zero(self):
        assert jacobi_poly(JacobiParams(1.5, 0.3, 0), 0.2) == 1.0

    @given(params_st)
    def test_matches_scipy(self, p):
        a, b, k, x = p
        ref = special.eval_jacobi(k, a, b, x)
        assert jacobi_poly(JacobiParams(a, b, k), x) == pytest.approx(ref, rel=1e-10, abs=1e-10)

    @given(params_st)
    def test_series_representations(self, p):
        a, b, k, x = p
        par = JacobiParams(a, b, k)
        v = jacobi_poly(par, x)
        scale = max(1.0, abs(v))
        assert abs(jacobi_series_plus(par, x) - v) < 1e-10 * scale
        assert abs(jacobi_series_mixed(par, x) - v) < 1e-10 * scale

    @given(params_st)
    def test_parity(self, p):
        a, b, k, x = p
        lhs = jacobi_poly(JacobiParams(a, b, k), -x)
        rhs = (-1) ** k * jacobi_poly(JacobiParams(b, a, k), x)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))

    def test_vectorised(self):
        xs = np.linspace(-1, 1, 7)
        table = jacobi_table(4, 1.0, 2.0, xs)
        assert table.shape == (5, 7)
        assert table[3, 2] == pytest.approx(jacobi_poly(JacobiParams(1.0, 2.0, 3), xs[2]))

    @pytest.mark.parametrize("bad", [(-1.0, 0.0, 1), (0.0, -2.0, 1), (0.0, 0.0, -1)])
    def test_bad_params(self, bad):
        with pytest.raises(DomainError):
            JacobiParams(*bad)


def _weighted_inner(k, l, a, b):
    def f(x, glo, ghi):
        return (ghi / 2) ** a * (glo / 2) ** b * jacobi_table(max(k, l), a, b, x)[k] * jacobi_table(max(k, l), a, b, x)[l]

    return integrate(f, -1, 1, tol=1e-13, with_gaps=True, vectorized=True).value


class TestNorms:
    def test_closed_values(self):
        assert norm_h(0, 0, 0) == pytest.approx(2.0, rel=1e-15)
        assert norm_h_even(0, 0) == pytest.approx(1.0, rel=1e-15)

    @pytest.mark.parametrize("a", [0, 1, 2])
    @pytest.mark.parametrize("b", [0, 1, 2])
    def test_against_quadrature(self, a, b):
        for k in range(7):
            assert _weighted_inner(k, k, a, b) == pytest.approx(norm_h(k, a, b), rel=1e-9)

    def test_orthogonality(self):
        a, b = 0.7, 1.9
        for k in range(7):
            for l in range(7):
                expected = norm_h(k, a, b) if k == l else 0.0
                assert abs(_weighted_inner(k, l, a, b) - expected) < 1e-9

    @pytest.mark.parametrize("a", [0, 1, 3, 0.5])
    def test_even_norm_against_quadrature(self, a):
        for k in range(5):
            def f(x, glo, ghi):
                return ((1 + x) * ghi / 4) ** a * jacobi_table(2 * k, a, a, x)[2 * k] ** 2

            val = integrate(f, 0, 1, tol=1e-13, with_gaps=True, vectorized=True).value
            assert val == pytest.approx(norm_h_even(k, a), rel=1e-9)

    def test_small_parameters_at_k0(self):
        # a + b + 1 < 0 here, so the general-k gamma ratio would hit a pole
        assert norm_h(0, -0.7, -0.6) == pytest.approx(
            2 * math.gamma(0.3) * math.gamma(0.4) / math.gamma(0.7), rel=1e-13
        )


class TestKernels:
    def test_m1(self):
        assert kernel_fixed(0.37, 1, 0, 0) == pytest.approx(0.5)
        assert kernel_arbitrary(0.37, 1, 0) == pytest.approx(1.0)
        x = 0.2
        w = ((1 - x) / 2) ** 2 * ((1 + x) / 2) ** 1
        assert kernel_fixed_cd(x, 1, 2, 1) == pytest.approx(w / norm_h(0, 2, 1), rel=1e-14)

    def test_cd_example(self):
        assert kernel_fixed_cd(0.3, 3, 1, 2) == pytest.approx(kernel_fixed(0.3, 3, 1, 2), rel=1e-9)

    @pytest.mark.parametrize("m", range(1, 9))
    def test_cd_matches_direct(self, m):
        rng = np.random.default_rng(m)
        xs = rng.uniform(-1, 1, 1000)
        for a, b in [(0, 0), (1, 2), (3, 0), (0.4, 2.6)]:
            direct = kernel_fixed(xs, m, a, b)
            cd = kernel_fixed_cd(xs, m, a, b)
            assert np.max(np.abs(cd - direct) / np.abs(direct)) < 1e-9

    @pytest.mark.parametrize("m", range(1, 6))
    def test_normalisation(self, m):
        for a in range(4):
            for b in range(4):
                total = integrate(lambda x: kernel_fixed(x, m, a, b), -1, 1, vectorized=True).value
                assert abs(total - m) < 1e-8
            total = integrate(lambda x: kernel_arbitrary(x, m, a), 0, 1, vectorized=True).value
            assert abs(total - m) < 1e-8

    def test_nonnegative(self):
        xs = np.linspace(-1, 1, 401)
        assert np.all(kernel_fixed(xs, 6, 2, 3) >= 0)
        assert np.all(kernel_arbitrary(np.linspace(0, 1, 201), 6, 2) >= 0)


class TestIntegrate:
    def test_constant(self):
        assert abs(integrate(lambda x: 1.0, 0, 1).value - 1) < 1e-14

    def test_log_endpoint(self):
        assert abs(integrate(math.log, 0, 1).value + 1) < 1e-12

    def test_capacity_symmetric_integral(self):
        r = integrate(lambda x: (1 - x * x) / 4 * math.log((1 + x) / (1 - x)) ** 2, -1, 1)
        assert r.value == pytest.approx(2 * (math.pi**2 / 18 - 1 / 3), abs=1e-12)

    def test_result_fields(self):
        r = integrate(lambda x: x**3, 0, 2)
        assert r.value == pytest.approx(4.0, rel=1e-14)
        assert r.n_nodes > 0
        assert r.est_error < 1e-10

    def test_nan_is_reported(self):
        with pytest.raises(EvaluationError):
            integrate(lambda x: math.nan, 0, 1)

    def test_cap_carries_best(self):
        # too oscillatory to settle within two levels
        with pytest.raises(ToleranceNotMet) as info:
            integrate(lambda x: math.cos(40 * x), 0, 10, levels=2, tol=1e-14)
        assert info.value.best is not None

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            integrate(lambda x: x, 1, 0)


class TestQuadMeanCapacity:
    def test_anchor(self):
        anchor = math.pi**2 / 18 - 1 / 3
        assert abs(quad_mean_capacity(Fixed(1, 1, 1)).value - anchor) < 1e-10
        assert abs(quad_mean_capacity(Arbitrary(1, 1)).value - anchor) < 1e-10

    def test_cross_oracle(self):
        s = Fixed(3, 5, 4)
        assert abs(quad_mean_capacity(s).value - mean_capacity(s).float_value) < 1e-8

    @pytest.mark.parametrize("m", range(1, 9))
    def test_equal_dimensions(self, m):
        s = Arbitrary(m, m)
        assert abs(quad_mean_capacity(s).value - mean_capacity(s).float_value) < 1e-8

    def test_larger_fixed(self):
        s = Fixed(10, 20, 14)
        assert abs(quad_mean_capacity(s).value - mean_capacity(s).float_value) < 1e-8


def test_bin_probabilities_sum_to_one():
    for spec in (Fixed(2, 4, 3), Arbitrary(3, 5)):
        lo = -1.0 if isinstance(spec, Fixed) else 0.0
        probs = bin_probabilities(spec, np.linspace(lo, 1, 17))
        assert probs.sum() == pytest.approx(1.0, abs=1e-10)
        assert np.all(probs > 0)
