import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from fgcap.errors import DomainError, NumericalError
from fgcap.ensembles import (
    RngStream,
    RunningStats,
    Spectrum,
    capacity_of_spectrum,
    estimate_mean_capacity,
    hermitian_eigenvalues,
    sample_arbitrary_spectra,
    sample_arbitrary_spectrum,
    sample_fixed_spectra,
    sample_fixed_spectrum,
    sample_haar_orthogonal,
    sample_haar_unitary,
    symplectic_unit,
    u,
)
from fgcap.exact_capacity import Arbitrary, Fixed


class TestRngStream:
    def test_reproducible(self):
        a = RngStream(5, 2).generator().standard_normal(4)
        b = RngStream(5, 2).generator().standard_normal(4)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = RngStream(5, 0).generator().standard_normal(4)
        b = RngStream(5, 1).generator().standard_normal(4)
        assert not np.array_equal(a, b)

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, seed):
        with pytest.raises(DomainError):
            RngStream(seed)


class TestHaar:
    def test_unitary(self):
        rng = RngStream(1)
        for N in (1, 2, 5, 9):
            U = sample_haar_unitary(N, rng)
            assert np.max(np.abs(U.conj().T @ U - np.eye(N))) < 1e-10

    def test_batched_unitary(self):
        U = sample_haar_unitary(4, np.random.default_rng(0), size=50)
        err = np.abs(np.conj(np.swapaxes(U, 1, 2)) @ U - np.eye(4))
        assert err.max() < 1e-10

    def test_mean_entry_weight(self):
        U = sample_haar_unitary(4, np.random.default_rng(11), size=100_000)
        w = np.abs(U[:, 0, 0]) ** 2
        sigma = w.std(ddof=1) / math.sqrt(w.size)
        assert abs(w.mean() - 0.25) < 4 * sigma

    def test_n2_entry_uniform(self):
        U = sample_haar_unitary(2, np.random.default_rng(12), size=100_000)
        ks = stats.kstest(np.abs(U[:, 0, 0]) ** 2, "uniform").statistic
        assert ks < 0.01

    def test_phase_uniform(self):
        # the R-diagonal correction is what makes the phase of U_11 uniform
        U = sample_haar_unitary(3, np.random.default_rng(13), size=50_000)
        theta = (np.angle(U[:, 0, 0]) + math.pi) / (2 * math.pi)
        assert stats.kstest(theta, "uniform").pvalue > 1e-3

    def test_orthogonal(self):
        O = sample_haar_orthogonal(6, np.random.default_rng(3), size=200)
        assert np.abs(np.swapaxes(O, 1, 2) @ O - np.eye(6)).max() < 1e-10
        dets = np.round(np.linalg.det(O))
        assert set(dets) == {-1.0, 1.0}

    def test_orthogonal_entry_law(self):
        # for Haar O(N), O_11^2 ~ Beta(1/2, (N-1)/2)
        O = sample_haar_orthogonal(3, np.random.default_rng(4), size=50_000)
        assert stats.kstest(O[:, 0, 0] ** 2, stats.beta(0.5, 1.0).cdf).pvalue > 1e-3


class TestEigenvalues:
    def test_identity(self):
        assert np.allclose(hermitian_eigenvalues(np.eye(3)), [1, 1, 1])

    def test_similarity(self):
        U = sample_haar_unitary(2, RngStream(7))
        M = U @ np.diag([0.2, 0.7]) @ U.conj().T
        assert np.max(np.abs(hermitian_eigenvalues(M) - [0.2, 0.7])) < 1e-10

    @pytest.mark.parametrize("n", [1, 2, 3, 6, 17, 40])
    def test_trace_and_lapack(self, n):
        rng = np.random.default_rng(n)
        Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        H = Z + Z.conj().T
        ev = hermitian_eigenvalues(H)
        assert abs(ev.sum() - np.trace(H).real) < 1e-10 * max(1, n)
        assert np.max(np.abs(ev - np.linalg.eigvalsh(H))) < 1e-10 * np.abs(ev).max()
        assert np.all(np.diff(ev) >= 0)

    def test_real_symmetric_stack(self):
        rng = np.random.default_rng(9)
        A = rng.standard_normal((30, 5, 5))
        S = A + np.swapaxes(A, 1, 2)
        assert np.max(np.abs(hermitian_eigenvalues(S) - np.linalg.eigvalsh(S))) < 1e-12

    def test_degenerate(self):
        U = sample_haar_unitary(4, RngStream(2))
        M = U @ np.diag([1.0, 1.0, -2.0, -2.0]) @ U.conj().T
        assert np.allclose(hermitian_eigenvalues(M), [-2, -2, 1, 1], atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            hermitian_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_sweep_cap(self):
        M = np.array([[1.0, 0.5], [0.5, 2.0]])
        with pytest.raises(NumericalError):
            hermitian_eigenvalues(M, max_sweeps=0)

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            hermitian_eigenvalues(np.eye(2), method="qr")


class TestSpectra:
    def test_fixed_range(self):
        x = sample_fixed_spectra(Fixed(3, 5, 4), np.random.default_rng(0), 2000)
        assert x.shape == (2000, 3)
        assert np.all((x >= -1) & (x <= 1))
        assert np.all(np.diff(x, axis=1) >= 0)

    def test_arbitrary_range(self):
        x = sample_arbitrary_spectra(Arbitrary(3, 5), np.random.default_rng(0), 2000)
        assert x.shape == (2000, 3)
        assert np.all((x >= 0) & (x <= 1))

    def test_covariance_is_antisymmetric_and_paired(self):
        O = sample_haar_orthogonal(8, np.random.default_rng(1))
        J = O.T @ symplectic_unit(4) @ O
        assert np.max(np.abs(J + J.T)) < 1e-12
        JA = J[:4, :4]
        ev = np.linalg.eigvalsh(JA.T @ JA)
        assert np.max(np.abs(ev[0::2] - ev[1::2])) < 1e-8

    def test_uniform_cases(self):
        gen = np.random.default_rng(2)
        x = sample_fixed_spectra(Fixed(1, 1, 1), gen, 100_000)[:, 0]
        assert abs(x.mean()) < 4 * x.std(ddof=1) / math.sqrt(x.size)
        y = sample_arbitrary_spectra(Arbitrary(1, 1), gen, 100_000)[:, 0]
        assert abs(y.mean() - 0.5) < 4 * y.std(ddof=1) / math.sqrt(y.size)

    def test_single_draw_wrappers(self):
        s = sample_fixed_spectrum(Fixed(2, 3, 2), RngStream(4))
        assert isinstance(s, Spectrum) and s.kind == "fixed" and s.values.shape == (2,)
        t = sample_arbitrary_spectrum(Arbitrary(2, 3), RngStream(4))
        assert t.kind == "arbitrary" and t.values.shape == (2,)

    def test_lapack_agrees_with_jacobi(self):
        a = sample_arbitrary_spectra(Arbitrary(2, 4), np.random.default_rng(5), 300)
        b = sample_arbitrary_spectra(Arbitrary(2, 4), np.random.default_rng(5), 300, method="lapack")
        assert np.max(np.abs(a - b)) < 1e-10


class TestCapacityFunction:
    def test_values(self):
        assert u(0.0) == 0.0
        assert u(0.5) == pytest.approx(3 / 16 * math.log(3) ** 2, rel=1e-14)
        assert u(1.0) == 0.0 and u(-1.0) == 0.0
        v = u(1 - 1e-12)
        assert 0 <= v < 1e-9

    def test_even(self):
        xs = np.linspace(-0.99, 0.99, 51)
        assert np.allclose(u(xs), u(-xs), rtol=1e-14)

    def test_spectrum_sum(self):
        assert capacity_of_spectrum(Spectrum(np.array([0.0, 0.0]), "fixed")) == 0.0
        assert capacity_of_spectrum([0.5, -0.5]) == pytest.approx(2 * u(0.5))

    def test_collar(self):
        assert u(1 + 5e-10) == 0.0
        with pytest.raises(DomainError):
            u(1 + 1e-8)
        with pytest.raises(DomainError):
            capacity_of_spectrum([0.1, math.nan])


@given(st.lists(st.floats(-1e3, 1e3), min_size=0, max_size=40), st.integers(0, 40))
def test_running_stats_merge_matches_numpy(xs, cut):
    cut = min(cut, len(xs))
    left, right = RunningStats(), RunningStats()
    for x in xs[:cut]:
        left.push(x)
    right.push_batch(xs[cut:])
    left.merge(right)
    assert left.count == len(xs)
    if xs:
        assert left.mean == pytest.approx(float(np.mean(xs)), abs=1e-9)
    if len(xs) > 1:
        assert left.variance == pytest.approx(float(np.var(xs, ddof=1)), rel=1e-8, abs=1e-8)


class TestEstimate:
    def test_fields(self):
        est = estimate_mean_capacity(Fixed(1, 1, 1), 1000, seed=9)
        assert est.n_samples == 1000 and est.seed == 9
        assert est.stderr > 0

    def test_bit_identical(self):
        a = estimate_mean_capacity(Arbitrary(2, 3), 3000, seed=17, batch=256)
        b = estimate_mean_capacity(Arbitrary(2, 3), 3000, seed=17, batch=256)
        assert a == b

    def test_thread_count_does_not_matter(self):
        a = estimate_mean_capacity(Fixed(2, 3, 2), 5000, seed=3, workers=1)
        b = estimate_mean_capacity(Fixed(2, 3, 2), 5000, seed=3, workers=4)
        assert a == b

    def test_uneven_partition(self):
        est = estimate_mean_capacity(Fixed(1, 2, 1), 11, seed=0, n_streams=4)
        assert est.n_samples == 11

    @pytest.mark.parametrize("n", [0, 1])
    def test_too_few(self, n):
        with pytest.raises(DomainError):
            estimate_mean_capacity(Fixed(1, 1, 1), n, seed=0)
