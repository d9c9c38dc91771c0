import numpy as np
import pytest

from dmdsep import signals
from dmdsep.lagstats import ar_theoretical_acf, empirical_acf


class TestCosineSpec:
    def test_rejects_duplicate_frequencies(self):
        with pytest.raises(ValueError, match="duplicate"):
            signals.CosineSpec(omegas=(0.3, 0.3))

    @pytest.mark.parametrize("w", [0.0, np.pi, -0.2, 4.0])
    def test_rejects_out_of_band_frequency(self, w):
        with pytest.raises(ValueError, match="outside"):
            signals.CosineSpec(omegas=(w,))


class TestGenCosines:
    def test_quarter_period_grid(self):
        C = signals.gen_cosines(signals.CosineSpec(omegas=(np.pi / 2,)), 4)
        assert np.allclose(C[:, 0], [0.0, -1.0, 0.0, 1.0], atol=1e-12)

    def test_walker_inputs(self):
        C = signals.gen_cosines(signals.CosineSpec(omegas=(2.0, 0.25)), 1000)
        t = np.arange(1, 1001)
        assert np.array_equal(C[:, 0], np.cos(2 * t))
        assert np.array_equal(C[:, 1], np.cos(t / 4))

    def test_column_norms_match_closed_form(self):
        # ||c||^2 = n/2 + sin(w n)/(2 sin w) * cos(w (n+1) + 2 phi)
        rng = np.random.default_rng(0)
        for _ in range(50):
            n = int(rng.integers(4, 3000))
            w = rng.uniform(0.05, np.pi - 0.05)
            phi = rng.uniform(-np.pi, np.pi)
            C = signals.gen_cosines(signals.CosineSpec(omegas=(w,), phases=(phi,)), n)
            expected = n / 2 + np.sin(w * n) / (2 * np.sin(w)) * np.cos(w * (n + 1) + 2 * phi)
            assert abs(np.sum(C[:, 0] ** 2) - expected) <= 1e-9 * (1 + expected)

    def test_rejects_too_few_samples(self):
        with pytest.raises(ValueError, match="n >= 2k"):
            signals.gen_cosines(signals.CosineSpec(omegas=(0.3, 0.7)), 3)


class TestGenArma:
    def test_white_noise_variance(self):
        x = signals.gen_arma(signals.ArmaSpec(innovation_std=1.5), 100_000, seed=1)
        assert abs(np.var(x) - 1.5**2) <= 0.03 * 1.5**2

    def test_ar1_lag1_autocorrelation(self):
        x = signals.gen_arma(signals.ArmaSpec(ar_coeffs=(0.7,)), 100_000, seed=2)
        rho = empirical_acf(x, 1)
        assert abs(rho[1] - 0.7) <= 0.02

    def test_intro_demo_coefficients(self):
        for coeff in (0.2, 0.7):
            x = signals.gen_arma(signals.ArmaSpec(ar_coeffs=(coeff,)), 50_000, seed=3)
            rho = empirical_acf(x, 1)
            assert abs(rho[1] - coeff) <= 0.03

    def test_ar2_autocorrelation_matches_yule_walker(self):
        for coeffs in ((0.2, 0.7), (0.3, 0.5)):
            x = signals.gen_arma(signals.ArmaSpec(ar_coeffs=coeffs), 100_000, seed=4)
            rho = empirical_acf(x, 2)
            theory = ar_theoretical_acf(coeffs, 2)
            assert np.abs(rho - theory).max() <= 0.03

    def test_bitwise_reproducible(self):
        spec = signals.ArmaSpec(ar_coeffs=(0.5,), ma_coeffs=(0.2,))
        a = signals.gen_arma(spec, 5000, seed=42)
        b = signals.gen_arma(spec, 5000, seed=42)
        assert np.array_equal(a, b)
        c = signals.gen_arma(spec, 5000, seed=43)
        assert not np.array_equal(a, c)

    def test_rejects_nonstationary_with_root_moduli(self):
        with pytest.raises(ValueError, match="root moduli"):
            signals.ArmaSpec(ar_coeffs=(1.2,))
        with pytest.raises(ValueError, match="root moduli"):
            signals.ArmaSpec(ar_coeffs=(0.5, 0.6))


class TestChangepointSuite:
    def test_structural_zero_pattern(self):
        C = signals.gen_changepoint_suite(1000, seed=0)
        assert C.shape == (1000, 4)
        assert np.all(C[500:, 0] == 0.0)
        assert np.all(C[:500, 1] == 0.0)
        assert np.all(C[500:, 2] == 0.0)
        assert np.all(C[:500, 3] == 0.0)
        t = np.arange(1, 501)
        assert np.array_equal(C[:500, 2], np.cos(2.0 * t))

    def test_smallest_case(self):
        C = signals.gen_changepoint_suite(8, seed=1)
        assert np.all(C[4:, 0] == 0.0)
        assert np.all(C[:4, 1] == 0.0)

    def test_rejects_odd_n(self):
        with pytest.raises(ValueError, match="even"):
            signals.gen_changepoint_suite(999, seed=0)

    def test_deterministic(self):
        a = signals.gen_changepoint_suite(200, seed=9)
        b = signals.gen_changepoint_suite(200, seed=9)
        assert np.array_equal(a, b)


class TestRandomUnitColumns:
    def test_single_vector_unit_norm(self):
        q = signals.random_unit_columns(3, 1, seed=0)
        assert abs(np.linalg.norm(q) - 1.0) <= 1e-12

    def test_sphere_concentration(self):
        # two independent directions in R^100 are nearly orthogonal
        for seed in range(1000):
            Q = signals.random_unit_columns(100, 2, seed=seed)
            assert abs(Q[:, 0] @ Q[:, 1]) < 0.5

    def test_reproducible(self):
        a = signals.random_unit_columns(50, 3, seed=11)
        b = signals.random_unit_columns(50, 3, seed=11)
        assert np.array_equal(a, b)

    def test_rejects_k_above_p(self):
        with pytest.raises(ValueError, match="k=4"):
            signals.random_unit_columns(3, 4, seed=0)


class TestAssemble:
    def test_source_model_invariants(self):
        rng = np.random.default_rng(5)
        Q = signals.random_unit_columns(10, 3, seed=5)
        d = np.array([0.5, 2.0, 1.0])
        C_raw = rng.standard_normal((200, 3)) + 3.0
        model = signals.assemble(Q, d, C_raw)
        assert np.allclose(np.linalg.norm(model.Q, axis=0), 1.0, atol=1e-12)
        assert np.allclose(np.linalg.norm(model.S, axis=0), 1.0, atol=1e-12)
        assert np.abs(model.S.sum(axis=0)).max() <= 1e-10
        assert np.all(np.diff(model.d) <= 0)
        assert np.linalg.norm(model.X - (model.Q * model.d) @ model.S.T) <= 1e-10

    def test_identity_mixing(self):
        C = np.column_stack(
            [np.r_[np.ones(4), -np.ones(4)], np.r_[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0]]
        )
        model = signals.assemble(np.eye(2), np.ones(2), C)
        assert np.allclose(model.X, model.S.T, atol=1e-12)

    def test_walker_mixing_matrix(self):
        Q = np.array([[1 / 3, 2 / np.sqrt(5)], [2 / 3, 1 / np.sqrt(5)], [2 / 3, 0.0]])
        C = signals.gen_cosines(signals.CosineSpec(omegas=(2.0, 0.25)), 1000)
        model = signals.assemble(Q, np.ones(2), C)
        assert model.X.shape == (3, 1000)
        assert np.allclose(np.linalg.norm(model.Q, axis=0), 1.0, atol=1e-12)

    def test_audio_demo_mixing_matrix(self):
        Q = np.array([[1.0, 2.0], [2.0, 1.0]]) / np.sqrt(5)
        C = signals.gen_cosines(signals.CosineSpec(omegas=(0.3, 0.8)), 500)
        model = signals.assemble(Q, np.array([2.0, 1.0]), C)
        assert np.allclose(np.linalg.norm(model.Q, axis=0), 1.0, atol=1e-12)

    def test_rejects_constant_column(self):
        C = np.column_stack([np.ones(10), np.arange(10.0)])
        with pytest.raises(ValueError, match="constant"):
            signals.assemble(np.eye(2), np.ones(2), C)


class TestApplyMask:
    def test_q_one_is_identity(self):
        X = np.random.default_rng(0).standard_normal((20, 30))
        out = signals.apply_mask(X, signals.MaskSpec(q=1.0, seed=3))
        assert np.array_equal(out, X)

    def test_degenerate_mask(self):
        X = np.ones((10, 10))
        out = signals.apply_mask(X, signals.MaskSpec(q=1e-9, seed=4))
        assert np.all(out == 0.0)

    def test_observed_fraction(self):
        X = np.ones((1000, 1000))
        out = signals.apply_mask(X, signals.MaskSpec(q=0.5, seed=5))
        # binomial concentration: 6 sigma on 1e6 entries is +-0.003
        assert abs(out.mean() - 0.5) <= 0.01

    def test_kept_entries_bit_identical(self):
        X = np.random.default_rng(1).standard_normal((50, 60))
        out = signals.apply_mask(X, signals.MaskSpec(q=0.7, seed=6))
        kept = out != 0.0
        assert np.array_equal(out[kept], X[kept])
        assert np.all(out[~kept] == 0.0)

    def test_deterministic_per_seed(self):
        X = np.random.default_rng(2).standard_normal((40, 40))
        a = signals.apply_mask(X, signals.MaskSpec(q=0.3, seed=7))
        b = signals.apply_mask(X, signals.MaskSpec(q=0.3, seed=7))
        assert np.array_equal(a, b)

    def test_rejects_bad_probability(self):
        with pytest.raises(ValueError, match="q="):
            signals.MaskSpec(q=0.0)
