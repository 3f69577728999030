import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sinespline import (
    HarmonicSpec,
    InsufficientDataError,
    InvalidSpecError,
    RankDeficiencyError,
    SplineSpec,
    assemble_basis,
    covariance,
    estimate_sigma2,
    generate_synthetic,
    get_preset,
    project,
    solve_linear,
    vpf_cost,
)

BENCH_SSPEC = SplineSpec(degree=2, breakpoints=(0.0, 0.25, 0.5, 0.75, 1.0))


def normal_equations(A, y):
    # independent oracle: explicit (A^T A)^-1 A^T y
    return np.linalg.solve(A.T @ A, A.T @ y)


class TestSolveLinear:
    def test_identity_basis(self):
        y = np.array([3.0, -1.0, 2.0])
        sol = solve_linear(np.eye(3), y)
        np.testing.assert_array_equal(sol.gamma, y)
        np.testing.assert_array_equal(sol.residual, 0 * y)

    def test_constant_column_fits_mean(self):
        sol = solve_linear(np.ones((3, 1)), np.array([1.0, 2.0, 3.0]))
        np.testing.assert_allclose(sol.gamma, [2.0])
        np.testing.assert_allclose(sol.residual, [-1.0, 0.0, 1.0])

    def test_matches_normal_equations(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            A = rng.normal(size=(50, 8))
            y = rng.normal(size=50)
            sol = solve_linear(A, y)
            np.testing.assert_allclose(sol.gamma, normal_equations(A, y),
                                       rtol=1e-8, atol=1e-10)

    def test_residual_orthogonal_to_columns(self):
        rng = np.random.default_rng(3)
        A = rng.normal(size=(50, 5))
        y = rng.normal(size=50)
        sol = solve_linear(A, y)
        np.testing.assert_allclose(A.T @ sol.residual, np.zeros(5), atol=1e-10)

    def test_duplicate_column_rejected(self):
        A = np.ones((10, 2))
        with pytest.raises(RankDeficiencyError):
            solve_linear(A, np.arange(10.0))

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidSpecError):
            solve_linear(np.eye(3), np.arange(4.0))

    def test_underdetermined_rejected(self):
        with pytest.raises(InvalidSpecError):
            solve_linear(np.ones((2, 3)), np.arange(2.0))

    def test_accepts_basis_matrix(self):
        x = np.linspace(0, 1, 20)
        B = assemble_basis(x, HarmonicSpec(omega=7.0, harmonics=1),
                           SplineSpec(degree=1, breakpoints=(0.0, 1.0)))
        sol = solve_linear(B, np.sin(7.0 * x))
        np.testing.assert_allclose(sol.gamma[0], 1.0, atol=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(scale=st.floats(min_value=-100, max_value=100,
                           allow_nan=False).filter(lambda s: abs(s) > 1e-6),
           seed=st.integers(min_value=0, max_value=2**16))
    def test_scale_equivariance(self, scale, seed):
        rng = np.random.default_rng(seed)
        A = rng.normal(size=(25, 4))
        y = rng.normal(size=25)
        base = solve_linear(A, y).gamma
        scaled = solve_linear(A, scale * y).gamma
        np.testing.assert_allclose(scaled, scale * base, rtol=1e-9, atol=1e-12)


class TestProject:
    def test_idempotent(self):
        rng = np.random.default_rng(0)
        A = rng.normal(size=(40, 6))
        y = rng.normal(size=40)
        p = project(A, y)
        np.testing.assert_allclose(project(A, p), p, atol=1e-10)

    def test_reproduces_column_space_member(self):
        rng = np.random.default_rng(1)
        A = rng.normal(size=(30, 4))
        y = A @ np.array([1.0, -2.0, 0.5, 3.0])
        np.testing.assert_allclose(project(A, y), y, atol=1e-10)

    def test_orthogonal_input_projects_to_zero(self):
        # zero-mean y has no component along a constant column
        A = np.ones((4, 1))
        y = np.array([1.0, -1.0, 2.0, -2.0])
        np.testing.assert_allclose(project(A, y), np.zeros(4), atol=1e-12)

    def test_pythagoras(self):
        rng = np.random.default_rng(2)
        A = rng.normal(size=(35, 5))
        y = rng.normal(size=35)
        p = project(A, y)
        r = y - p
        np.testing.assert_allclose(y @ y, p @ p + r @ r, rtol=1e-12)


class TestVpfCost:
    def test_representable_signal_is_exact(self):
        """A signal inside the model space costs numerically zero."""
        x = np.arange(1024) / 1024.0
        omega = 36.96
        B = assemble_basis(x, HarmonicSpec(omega=omega, harmonics=3), BENCH_SSPEC)
        rng = np.random.default_rng(9)
        y = B.values @ rng.normal(size=B.n_columns)
        assert vpf_cost(omega, x, y, 3, BENCH_SSPEC) <= 1e-18

    def test_equals_normal_equations_residual(self):
        rng = np.random.default_rng(21)
        x = np.arange(256) / 256.0
        for _ in range(5):
            omega = rng.uniform(5, 60)
            y = rng.normal(size=256)
            got = vpf_cost(omega, x, y, 2, BENCH_SSPEC)
            A = assemble_basis(x, HarmonicSpec(omega=omega, harmonics=2),
                               BENCH_SSPEC).values
            r = y - A @ normal_equations(A, y)
            np.testing.assert_allclose(got, r @ r, rtol=1e-10)

    def test_grid_scan_locates_true_frequency(self):
        """Coarse scan over the benchmark realization dips at the generator."""
        spec = get_preset("benchmark", seed=2)
        ds = generate_synthetic(spec).dataset
        omegas = np.linspace(30, 44, 2000)
        costs = [vpf_cost(w, ds.x, ds.y, 3, spec.sspec) for w in omegas]
        w_min = omegas[int(np.argmin(costs))]
        step = omegas[1] - omegas[0]
        assert abs(w_min - 36.96) <= step
        np.testing.assert_allclose(w_min, 36.961481, atol=1e-6)

    def test_orthogonal_signal_pays_full_cost(self):
        """Nothing in the model space to absorb: cost equals the energy."""
        x = np.arange(128) / 128.0
        sspec = SplineSpec(degree=1, breakpoints=(0.0, 1.0))
        B = assemble_basis(x, HarmonicSpec(omega=9.0, harmonics=2), sspec)
        rng = np.random.default_rng(14)
        raw = rng.normal(size=128)
        y = raw - B.values @ normal_equations(B.values, raw)
        np.testing.assert_allclose(vpf_cost(9.0, x, y, 2, sspec), y @ y,
                                   rtol=1e-12)

    def test_nonnegative(self):
        x = np.linspace(0, 1, 64)
        y = np.sin(10 * x)
        assert vpf_cost(10.0, x, y, 1, SplineSpec(degree=1, breakpoints=(0.0, 1.0))) >= 0


class TestEstimateSigma2:
    def test_zero_residual(self):
        sigma2, _ = estimate_sigma2(np.zeros(20), n_linear=4)
        assert sigma2 == 0.0

    def test_direct_formula(self):
        r = np.zeros(100)
        r[0] = np.sqrt(8.9)
        sigma2, n_df = estimate_sigma2(r, n_linear=10)
        assert n_df == 11
        np.testing.assert_allclose(sigma2, 8.9 / 89)

    def test_known_residual(self):
        r = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])
        sigma2, n_df = estimate_sigma2(r, n_linear=3)
        assert n_df == 4
        np.testing.assert_allclose(sigma2, 6.0 / (6 - 4))

    def test_frequency_counts_as_one_df(self):
        _, n_df = estimate_sigma2(np.ones(10), n_linear=7)
        assert n_df == 8

    def test_too_few_samples(self):
        with pytest.raises(InsufficientDataError):
            estimate_sigma2(np.ones(4), n_linear=4)


class TestCovariance:
    def test_orthonormal_columns_give_sigma2_identity(self):
        Q, _ = np.linalg.qr(np.random.default_rng(4).normal(size=(30, 4)))
        rep = covariance(Q, sigma2=0.25)
        np.testing.assert_allclose(rep.covariance, 0.25 * np.eye(4), atol=1e-12)
        assert rep.n_df == 5

    def test_matches_inverse_gram(self):
        rng = np.random.default_rng(8)
        A = rng.normal(size=(50, 6))
        rep = covariance(A, sigma2=2.0)
        np.testing.assert_allclose(rep.covariance,
                                   2.0 * np.linalg.inv(A.T @ A), rtol=1e-8)

    def test_zero_noise_gives_zero_matrix(self):
        rng = np.random.default_rng(15)
        rep = covariance(rng.normal(size=(20, 3)), sigma2=0.0)
        np.testing.assert_array_equal(rep.covariance, np.zeros((3, 3)))

    def test_symmetric_psd(self):
        rng = np.random.default_rng(12)
        A = rng.normal(size=(25, 5))
        C = covariance(A, sigma2=1.3).covariance
        np.testing.assert_array_equal(C, C.T)
        assert np.linalg.eigvalsh(C).min() >= -1e-12

    def test_rank_deficient_rejected(self):
        with pytest.raises(RankDeficiencyError):
            covariance(np.ones((10, 2)), sigma2=1.0)

    def test_monte_carlo_smoke(self):
        """Closed form tracks an empirical estimate on a tiny configuration."""
        rng = np.random.default_rng(7)
        x = np.arange(64) / 64.0
        A = assemble_basis(x, HarmonicSpec(omega=12.0, harmonics=1),
                           SplineSpec(degree=1, breakpoints=(0.0, 1.0))).values
        sigma = 0.1
        pinv = np.linalg.pinv(A)
        draws = pinv @ rng.normal(0.0, sigma, size=(64, 4000))
        empirical = np.cov(draws)
        rep = covariance(A, sigma2=sigma**2)
        np.testing.assert_allclose(np.diag(rep.covariance), np.diag(empirical),
                                   rtol=0.15)
