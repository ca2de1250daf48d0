"""Distributional tests for the mixing-variable sampler.

The independent oracle is the closed-form beta-mixture CDF (itself checked
against scipy's incomplete beta in test_mixture), combined with binomial
z-tests for the atom mass and one-sample KS for the continuous part.
"""

import numpy as np
import pytest

from lpsym import (
    ParameterError,
    RngStream,
    coefficient_table,
    mixture_for_level,
    sample_vp,
    sample_vp_batch,
    sample_vp_level,
)
from lpsym.verify import binomial_sigma_ratio, ks_one_sample

N = 100_000


def test_p_one_always_returns_the_atom():
    rng = RngStream(1)
    batch = sample_vp_batch(6, 1.0, 10_000, rng)
    assert np.all(batch.values == 1.0)
    assert np.all(batch.is_atom)


def test_single_draw_matches_flag_contract():
    rng = RngStream(2)
    for _ in range(200):
        s = sample_vp(3, 2.0, rng)
        assert 0.0 < s.value <= 1.0
        assert s.is_atom == (s.value == 1.0)


@pytest.mark.parametrize("d,p", [(2, 2.0), (3, 2.0), (5, 1.5)])
def test_atom_frequency_within_four_sigma(d, p):
    batch = sample_vp_batch(d, p, N, RngStream(3).child(f"{d}-{p}"))
    assert binomial_sigma_ratio(batch.atom_frequency, p ** (-(d - 1)), N) < 4.0


def test_d2_p2_nonatoms_are_uniform():
    """Conditional on missing the atom, the d=2, p=2 law is uniform on (0,1)."""
    batch = sample_vp_batch(2, 2.0, N, RngStream(4))
    nonatoms = np.sort(batch.values[~batch.is_atom])
    res = ks_one_sample(nonatoms, lambda x: np.clip(x, 0.0, 1.0))
    assert res.passed


@pytest.mark.parametrize("d,p", [(3, 2.0), (5, 4.0), (10, 1.5)])
def test_nonatoms_match_renormalized_mixture(d, p):
    batch = sample_vp_batch(d, p, N, RngStream(5).child(f"{d}-{p}"))
    mix = mixture_for_level(coefficient_table(d, p), d)
    res = ks_one_sample(np.sort(batch.values[~batch.is_atom]), mix.continuous_cdf)
    assert res.passed, res


def test_level_one_is_minimum_of_uniforms():
    d = 5
    rng = RngStream(6)
    vals = np.sort([sample_vp_level(d, 2.0, 1, rng) for _ in range(2000)])
    res = ks_one_sample(vals, lambda x: 1.0 - (1.0 - np.asarray(x)) ** (d - 1))
    assert res.passed


def test_level_two_d4_matches_mixture():
    d, p, k = 4, 2.0, 2
    rng = RngStream(7)
    vals = np.sort([sample_vp_level(d, p, k, rng) for _ in range(5000)])
    mix = mixture_for_level(coefficient_table(d, p), k)
    assert mix.atom_weight == 0.0
    res = ks_one_sample(vals, mix.cdf)
    assert res.passed


def test_level_d_equals_full_chain_law():
    # same truncation point: the two entry points draw from one construction
    a = sample_vp_batch(4, 2.0, 50_000, RngStream(8))
    rng = RngStream(9)
    b = np.array([sample_vp_level(4, 2.0, 4, rng) for _ in range(20_000)])
    from lpsym.verify import ks_two_sample

    assert ks_two_sample(a.values, b).passed


def test_mc_williamson_identity():
    """Monte Carlo mean of (1 - x/V**p)_+^(d-1) matches (1 - x**(1/p))^(d-1)."""
    d, p = 3, 2.0
    batch = sample_vp_batch(d, p, N, RngStream(10))
    for x in (0.1, 0.4, 0.7, 0.95):
        vals = np.maximum(1.0 - x / batch.values**p, 0.0) ** (d - 1)
        se = vals.std(ddof=1) / np.sqrt(N)
        target = (1.0 - x ** (1.0 / p)) ** (d - 1)
        assert abs(vals.mean() - target) <= 4.0 * se


def test_batch_determinism_and_thread_invariance():
    a = sample_vp_batch(3, 2.0, 40_000, RngStream(77))
    b = sample_vp_batch(3, 2.0, 40_000, RngStream(77))
    c = sample_vp_batch(3, 2.0, 40_000, RngStream(77), threads=4)
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.values, c.values)
    assert np.array_equal(a.is_atom, c.is_atom)


def test_batch_iteration_yields_samples():
    batch = sample_vp_batch(2, 2.0, 10, RngStream(12))
    samples = list(batch)
    assert len(samples) == 10
    assert all(s.is_atom == (s.value == 1.0) for s in samples)


def test_values_stay_in_unit_interval():
    batch = sample_vp_batch(8, 1.25, 50_000, RngStream(13))
    assert batch.values.min() > 0.0
    assert batch.values.max() <= 1.0
    assert np.array_equal(batch.values == 1.0, batch.is_atom)


def test_parameter_rejection():
    rng = RngStream(0)
    with pytest.raises(ParameterError):
        sample_vp_batch(3, 2.0, 0, rng)
    with pytest.raises(ParameterError):
        sample_vp(1, 2.0, rng)
    with pytest.raises(ParameterError):
        sample_vp(3, 0.9, rng)
    with pytest.raises(ParameterError):
        sample_vp_level(3, 2.0, 0, rng)
    with pytest.raises(ParameterError):
        sample_vp_level(3, 2.0, 4, rng)
