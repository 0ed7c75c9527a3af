import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose, assert_array_equal
from scipy import integrate

from auxpower.errors import InputError, NotPSDError
from auxpower.gauss import (
    GaussianSpec,
    chi2_cdf_quantile,
    make_rng,
    mvn_sample,
    normal_quantile,
    singular_mvn_logdensity,
)
from oracles import chi2_cdf_closed, normal_cdf_series, normal_quantile_bisect

HALF = np.array([[0.5, -0.5], [-0.5, 0.5]])


@pytest.mark.parametrize("p, x", [(0.5, 0.0), (0.975, 1.959964), (0.841344746, 1.0)])
def test_normal_quantile_examples(p, x):
    assert normal_quantile(p) == pytest.approx(x, abs=1e-6)


@pytest.mark.parametrize("p", [0.001, 0.025, 0.3, 0.5, 0.9, 0.975, 0.999])
def test_normal_quantile_against_series_bisection(p):
    assert normal_quantile(p) == pytest.approx(normal_quantile_bisect(p), abs=1e-8)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_normal_quantile_domain(p):
    with pytest.raises(InputError):
        normal_quantile(p)


def test_series_oracle_is_consistent():
    assert normal_cdf_series(1.0) == pytest.approx(0.841344746, abs=1e-9)


def test_chi2_examples():
    cdf, q = chi2_cdf_quantile(1)
    assert q(0.95) == pytest.approx(3.8415, abs=1e-4)
    assert cdf(0.0) == 0.0
    cdf2, _ = chi2_cdf_quantile(2)
    assert cdf2(2.0) == pytest.approx(1 - math.exp(-1), abs=1e-12)


@pytest.mark.parametrize("df", [1, 2])
@pytest.mark.parametrize("x", [0.1, 1.0, 3.84, 9.0])
def test_chi2_cdf_closed_forms(df, x):
    cdf, _ = chi2_cdf_quantile(df)
    assert cdf(x) == pytest.approx(chi2_cdf_closed(x, df), abs=1e-10)


@pytest.mark.parametrize("df", range(1, 11))
def test_chi2_quantile_inverts_cdf(df):
    cdf, q = chi2_cdf_quantile(df)
    for p in np.linspace(0.001, 0.999, 37):
        assert cdf(q(p)) == pytest.approx(p, abs=1e-8)


def test_chi2_df_validation():
    with pytest.raises(InputError):
        chi2_cdf_quantile(0)


def test_logdensity_examples():
    assert singular_mvn_logdensity([0.0], GaussianSpec([[1.0]])) == pytest.approx(-0.5 * math.log(2 * math.pi))
    spec = GaussianSpec(HALF)
    a = 0.7
    assert singular_mvn_logdensity([a, -a], spec) == pytest.approx(-a * a - 0.5 * math.log(2 * math.pi))
    assert singular_mvn_logdensity([1.0, 1.0], spec) == -math.inf


def test_non_psd_covariance_rejected():
    with pytest.raises(NotPSDError):
        GaussianSpec(np.diag([1.0, -1.0]))


def test_logdensity_integrates_to_one_dim1():
    spec = GaussianSpec([[2.5]])
    val, _ = integrate.quad(lambda x: math.exp(singular_mvn_logdensity([x], spec)), -np.inf, np.inf)
    assert val == pytest.approx(1.0, abs=1e-4)


@pytest.mark.parametrize("u", [(1.0, -1.0), (0.6, 0.8), (2.0, 1.0)])
def test_logdensity_integrates_to_one_rank1_dim2(u):
    u = np.array(u)
    spec = GaussianSpec(np.outer(u, u))
    e = u / np.linalg.norm(u)
    # Lebesgue measure on the support line, parametrized by arc length
    val, _ = integrate.quad(lambda s: math.exp(singular_mvn_logdensity(s * e, spec)), -np.inf, np.inf)
    assert val == pytest.approx(1.0, abs=1e-4)


def test_sampler_zero_covariance():
    draws = mvn_sample(GaussianSpec(np.zeros((3, 3))), make_rng(1), size=5)
    assert_array_equal(draws, np.zeros((5, 3)))


def test_sampler_range_constraint():
    draws = mvn_sample(GaussianSpec(HALF), make_rng(2), size=10_000)
    assert np.abs(draws.sum(axis=1)).max() <= 1e-12


def test_sampler_moments():
    cov = np.array([[2.0, 0.6, 0.0], [0.6, 1.0, -0.3], [0.0, -0.3, 0.5]])
    draws = mvn_sample(GaussianSpec(cov), make_rng(3), size=100_000)
    emp = np.cov(draws, rowvar=False)
    assert np.abs(emp - cov).max() <= 0.05 * np.abs(cov).max()


@given(st.integers(0, 2**32), st.integers(0, 1000))
def test_sampler_deterministic(seed, key):
    spec = GaussianSpec(HALF)
    a = mvn_sample(spec, make_rng(seed, key), size=4)
    b = mvn_sample(spec, make_rng(seed, key), size=4)
    assert_array_equal(a, b)


def test_child_streams_differ():
    a = make_rng(5, 0).random(3)
    b = make_rng(5, 1).random(3)
    assert not np.array_equal(a, b)
