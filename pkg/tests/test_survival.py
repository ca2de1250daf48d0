"""Survival-law sampler: simplex/sphere geometry, Monte Carlo survival
probabilities against the closed-form generator, copula marginals, and
Kendall's tau at the minimal-association endpoint."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from lpsym import (
    ClaytonRadial,
    ErlangRadial,
    ParameterError,
    RngStream,
    UnitPointMass,
    beta_cdf,
    copula_sample,
    copula_sample_batch,
    empirical_kendall_tau,
    kendall_tau_outer_power,
    lp_norm,
    min_kendall_tau,
    sample_lp_sphere,
    sample_lp_sphere_batch,
    sample_simplex,
    sample_simplex_batch,
    sample_survival,
    sample_survival_batch,
    survival_value,
)
from lpsym.verify import binomial_sigma_ratio, ks_one_sample

N = 100_000


class TestSimplex:
    def test_l1_norm_is_one(self):
        u = sample_simplex_batch(5, 20_000, RngStream(1))
        assert np.max(np.abs(u.sum(axis=1) - 1.0)) <= 1e-12
        assert u.min() > 0.0

    def test_marginals_are_beta(self):
        d = 5
        u = sample_simplex_batch(d, N, RngStream(2))
        res = ks_one_sample(np.sort(u[:, 2]), lambda x: beta_cdf(1, d - 1, x))
        assert res.passed

    def test_d2_first_coordinate_uniform(self):
        u = sample_simplex_batch(2, N, RngStream(3))
        res = ks_one_sample(np.sort(u[:, 0]), lambda x: np.clip(x, 0, 1))
        assert res.passed

    def test_scalar_draw(self):
        point = sample_simplex(3, RngStream(4))
        assert point.shape == (3,)
        assert abs(point.sum() - 1.0) <= 1e-12


class TestLpSphere:
    def test_lp_norm_is_one(self):
        u = sample_lp_sphere_batch(4, 3.0, 20_000, RngStream(5))
        assert np.max(np.abs((u**3.0).sum(axis=1) - 1.0)) <= 1e-10

    def test_p_one_matches_simplex_law(self):
        d = 3
        u = sample_lp_sphere_batch(d, 1.0, N, RngStream(6))
        res = ks_one_sample(np.sort(u[:, 0]), lambda x: beta_cdf(1, d - 1, x))
        assert res.passed

    def test_p2_d2_squares_have_arcsine_law(self):
        u = sample_lp_sphere_batch(2, 2.0, N, RngStream(7))
        res = ks_one_sample(
            np.sort(u[:, 0] ** 2), lambda x: 2.0 / np.pi * np.arcsin(np.sqrt(x))
        )
        assert res.passed

    def test_scalar_draw(self):
        point = sample_lp_sphere(3, 2.5, RngStream(8))
        assert abs((point**2.5).sum() - 1.0) <= 1e-10


class TestSurvivalSampler:
    def test_unit_radial_keeps_coordinates_below_one(self):
        batch = sample_survival_batch(3, 2.0, UnitPointMass(d=3), 20_000, RngStream(9))
        assert batch.z.max() <= 1.0
        assert batch.z.min() > 0.0

    def test_provenance_reconstructs_samples(self):
        batch = sample_survival_batch(
            3, 2.0, ErlangRadial(d=3), 500, RngStream(10), provenance=True
        )
        rebuilt = (batch.r * batch.vp)[:, None] * batch.u ** (1.0 / 2.0)
        assert_allclose(rebuilt, batch.z, rtol=0, atol=0)

    def test_scalar_draw_carries_factors(self):
        s = sample_survival(2, 2.0, UnitPointMass(d=2), RngStream(11))
        assert_allclose(s.z, s.r * s.vp * s.u**0.5)

    def test_simplex_case_survival_probability(self):
        """p=1 with unit radial gives the uniform simplex law:
        P(Z > z) = (1 - ||z||_1)_+^(d-1)."""
        d = 3
        batch = sample_survival_batch(d, 1.0, UnitPointMass(d=d), N, RngStream(12))
        z = np.array([0.2, 0.1, 0.15])
        freq = np.mean(np.all(batch.z > z, axis=1))
        truth = (1.0 - z.sum()) ** (d - 1)
        assert binomial_sigma_ratio(float(freq), truth, N) < 4.0

    def test_pythagorean_point(self):
        # ||(0.3, 0.4)||_2 = 0.5, so the survival probability is 0.5 exactly
        batch = sample_survival_batch(2, 2.0, UnitPointMass(d=2), N, RngStream(13))
        freq = np.mean(np.all(batch.z > np.array([0.3, 0.4]), axis=1))
        assert binomial_sigma_ratio(float(freq), 0.5, N) < 4.0

    @pytest.mark.parametrize("law,p", [(ClaytonRadial(a=1.75, d=2), 2.5), (ErlangRadial(d=3), 2.0)])
    def test_general_radial_survival_matches_generator(self, law, p):
        batch = sample_survival_batch(law.d, p, law, N, RngStream(14).child(str(p)))
        for r in (0.3, 0.7):
            z = np.full(law.d, r * law.d ** (-1.0 / p))
            freq = np.mean(np.all(batch.z > z, axis=1))
            truth = float(law.generator_value(lp_norm(z, p)))
            assert binomial_sigma_ratio(float(freq), truth, N) < 4.0

    def test_batch_determinism(self):
        a = sample_survival_batch(2, 2.0, UnitPointMass(d=2), 5000, RngStream(15))
        b = sample_survival_batch(2, 2.0, UnitPointMass(d=2), 5000, RngStream(15), threads=3)
        assert np.array_equal(a.z, b.z)


class TestSurvivalValue:
    def test_norm_beyond_support(self):
        law = UnitPointMass(d=3)
        assert survival_value(law.generator_value, [0.8, 0.9], 1.0) == 0.0

    def test_clayton_hand_value(self):
        # ||(0.5, 0.5)||_2.5 = 0.5 * 2**0.4
        law = ClaytonRadial(a=1.75, d=2)
        expected = (1.0 - 0.5 * 2**0.4 / 1.75) ** 1.75
        assert survival_value(law.generator_value, [0.5, 0.5], 2.5) == pytest.approx(expected, rel=1e-14)

    def test_at_origin(self):
        law = ErlangRadial(d=4)
        assert survival_value(law.generator_value, [1e-300, 1e-300, 1e-300, 1e-300], 2.0) == pytest.approx(1.0)


class TestCopula:
    def test_marginals_uniform(self):
        u = copula_sample_batch(2, 2.5, ClaytonRadial(a=1.75, d=2), N, RngStream(16))
        for j in range(2):
            res = ks_one_sample(np.sort(u[:, j]), lambda x: np.clip(x, 0, 1))
            assert res.passed
        assert u.min() > 0.0
        assert u.max() < 1.0

    def test_scalar_draw(self):
        u = copula_sample(2, 1.0, ClaytonRadial(a=1.75, d=2), RngStream(17))
        assert u.shape == (2,)
        assert np.all((u > 0) & (u < 1))


class TestKendall:
    def test_formula_endpoints(self):
        assert kendall_tau_outer_power(1.0, -0.4) == -0.4
        assert kendall_tau_outer_power(2.0, -1.0) == 0.0
        assert min_kendall_tau(2) == -1.0
        assert min_kendall_tau(3) == pytest.approx(-1.0 / 3.0)
        assert kendall_tau_outer_power(2.0, min_kendall_tau(3)) == pytest.approx(1.0 / 3.0)

    def test_formula_domain(self):
        with pytest.raises(ParameterError):
            kendall_tau_outer_power(2.0, -1.5)
        with pytest.raises(ParameterError):
            min_kendall_tau(1)

    def test_estimator_hand_case(self):
        # pairs (1,1),(2,3),(3,2): concordant {12}, {13}; discordant {23}
        assert empirical_kendall_tau([1, 2, 3], [1, 3, 2]) == pytest.approx(1.0 / 3.0)

    def test_estimator_perfect_orders(self):
        x = np.arange(50, dtype=float)
        assert empirical_kendall_tau(x, x) == 1.0
        assert empirical_kendall_tau(x, -x) == -1.0

    @pytest.mark.parametrize("d,p", [(2, 1.0), (2, 2.0), (3, 1.0), (3, 2.0)])
    def test_minimal_association_endpoint(self, d, p):
        """Empirical tau at the unit radial matches 1 - theta + theta*(-1/(2d-3))."""
        batch = sample_survival_batch(d, p, UnitPointMass(d=d), 5000, RngStream(18).child(f"{d}{p}"))
        emp = empirical_kendall_tau(batch.z[:, 0], batch.z[:, 1])
        target = kendall_tau_outer_power(p, min_kendall_tau(d))
        assert abs(emp - target) <= 0.03
