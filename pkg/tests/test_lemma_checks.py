import numpy as np
import pytest

from fkdvlab.errors import ConfigurationError, DomainError
from fkdvlab.lemma_checks import (
    check_dispersive_estimate,
    check_interpolation_inequality,
    check_oscillatory_gaussian,
    check_phase_expansion,
    check_pseudo_product,
    check_trilinear_identity,
    dispersive_rhs,
    oscillatory_gaussian_closed_form,
    profile_rhs_double_sum,
    profile_rhs_pseudospectral,
    resonance_function,
    _evolved_band_sup,
)
from fkdvlab.spectral import SpectralField, make_grid

TWO_PI = 2.0 * np.pi


class TestTrilinearIdentity:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_band_limited(self, seed):
        result = check_trilinear_identity(16, seed)
        assert result["relative_sup_difference"] <= 1e-10

    def test_larger_grid(self):
        result = check_trilinear_identity(32, 0, t=1.3)
        assert result["relative_sup_difference"] <= 1e-10

    def test_zero_profile(self):
        g = make_grid(16, TWO_PI)
        fhat = SpectralField(g, np.zeros(16, complex))
        assert np.max(np.abs(profile_rhs_double_sum(fhat, 0.7, -0.5))) == 0.0
        assert np.max(np.abs(profile_rhs_pseudospectral(fhat, 0.7, -0.5))) < 1e-300

    def test_single_mode_pair(self):
        # one Hermitian mode pair: both sides live on reachable triple sums
        g = make_grid(16, TWO_PI)
        c = np.zeros(16, complex)
        c[8 + 1] = 0.2 + 0.1j
        c[8 - 1] = np.conj(c[8 + 1])
        fhat = SpectralField(g, c)
        oracle = profile_rhs_double_sum(fhat, 0.7, -0.5)
        target = profile_rhs_pseudospectral(fhat, 0.7, -0.5)
        assert np.max(np.abs(oracle - target)) <= 1e-12 * np.max(np.abs(target))

    def test_size_guard(self):
        with pytest.raises(ConfigurationError):
            check_trilinear_identity(128, 0)


class TestPhaseExpansion:
    def test_diagonal_cancellation(self):
        # eta = sigma = xi makes the resonance function vanish identically
        assert resonance_function(-0.5, 1.0, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_quadratic_limit(self):
        result = check_phase_expansion(-0.5, 1.0)
        d = result["deltas"][-1]
        phi = resonance_function(-0.5, 1.0, 1.0 - d, 1.0 - d)
        assert phi / d ** 2 == pytest.approx(-0.25, rel=1e-3)
        assert result["quadratic_coefficient"] == pytest.approx(-0.25)

    @pytest.mark.parametrize("alpha,xi", [(-0.5, 1.0), (-0.8, 2.0), (-0.2, 0.5)])
    def test_cubic_remainder_ratios(self, alpha, xi):
        result = check_phase_expansion(alpha, xi)
        assert all(6.5 <= r <= 9.5 for r in result["halving_ratios"])

    def test_domain_guards(self):
        with pytest.raises(DomainError):
            check_phase_expansion(-0.5, 0.0)
        with pytest.raises(DomainError):
            check_phase_expansion(-0.5, 1.0, delta_range=(0.25,))


class TestInterpolation:
    def test_chain_constants_and_dilation(self):
        result = check_interpolation_inequality(num_trials=12, seed=0)
        sharp1 = result["sharp_constants"]["bandsup_vs_l1"]
        sharp2 = result["sharp_constants"]["l1_vs_weighted_l2"]
        assert result["bandsup_vs_l1"]["ratio_stats"]["max"] <= sharp1 * (1 + 1e-9)
        assert result["l1_vs_weighted_l2"]["ratio_stats"]["max"] <= sharp2 * (1 + 1e-9)
        assert result["max_dilation_defect"] <= 1e-6

    def test_amplitude_quadratic_invariance(self):
        from fkdvlab.lemma_checks import _random_band_field, interpolation_members
        rng = np.random.default_rng(0)
        grid, fld = _random_band_field(rng, 0)
        s1, l1, r1 = interpolation_members(grid, fld, 0)
        doubled = SpectralField(grid, 2.0 * fld.coeffs)
        s2, l2, r2 = interpolation_members(grid, doubled, 0)
        assert s2 == pytest.approx(4.0 * s1, rel=1e-12)
        assert l2 == pytest.approx(4.0 * l1, rel=1e-12)
        assert r2 == pytest.approx(4.0 * r1, rel=1e-12)


class TestPseudoProduct:
    def test_kernel_l1_matches_closed_form(self):
        result = check_pseudo_product("gaussian", seed=0, num_trials=3)
        assert result["kernel_l1"] == pytest.approx(4.0 * np.pi ** 2, rel=1e-6)

    def test_factorization_oracle(self):
        result = check_pseudo_product("gaussian", seed=0, num_trials=1)
        assert result["factored_defect"] <= 1e-10

    def test_bound_holds_and_is_seed_stable(self):
        r0 = check_pseudo_product("gaussian", seed=0, num_trials=20)
        r1 = check_pseudo_product("gaussian", seed=1, num_trials=20)
        assert r0["max_ratio"] < 1.0          # far below the analytic bound
        assert abs(r1["max_ratio"] - r0["max_ratio"]) <= 0.2 * r0["max_ratio"]

    def test_unknown_kernel(self):
        with pytest.raises(ConfigurationError):
            check_pseudo_product("cauchy")


class TestOscillatoryGaussian:
    def test_closed_form_values(self):
        assert oscillatory_gaussian_closed_form(1.0) == pytest.approx(TWO_PI / np.sqrt(5.0))
        assert oscillatory_gaussian_closed_form(10.0) == pytest.approx(
            TWO_PI * 10.0 / np.sqrt(0.04 + 100.0))

    def test_quadrature_matches_closed_form(self):
        result = check_oscillatory_gaussian(N_list=(1.0, 10.0),
                                            cutoff_N_list=(3.0, 4.0),
                                            cutoff_N_check=6.0)
        for entry in result["gaussian"]:
            assert entry["abs_error"] <= 1e-8

    def test_cutoff_variant_rate(self):
        result = check_oscillatory_gaussian()
        # decays at least as fast as the inverse square root upper bound
        assert result["cutoff_rate"] <= -0.5
        check = result["cutoff_check"]
        assert check["error"] <= 2.0 * max(check["fit_prediction"], 1e-9)


class TestDispersiveEstimate:
    def test_sweep_bounded_and_dilation_invariant(self):
        result = check_dispersive_estimate(-0.5, k_range=(-1, 0, 1),
                                           t_range=(1.0, 4.0))
        assert result["freq_side"]["ratio_stats"]["max"] < 10.0
        assert result["phys_side"]["ratio_stats"]["max"] < 10.0
        assert result["dilation_defect"] <= 1e-6

    def test_alpha_range_guard(self):
        with pytest.raises(ConfigurationError):
            check_dispersive_estimate(1.5)

    def test_ratio_time_stability_dispersed_regime(self):
        # once the packet is fully dispersed the sup obeys the predicted
        # t^(-1/2) law and both sides' ratios freeze (to within 20% per 4x)
        for side in ("freq", "phys"):
            r1 = _evolved_band_sup(-0.5, 0, 1024.0) / dispersive_rhs(-0.5, 0, 1024.0)[side]
            r4 = _evolved_band_sup(-0.5, 0, 4096.0) / dispersive_rhs(-0.5, 0, 4096.0)[side]
            assert abs(r4 - r1) <= 0.2 * r1
