import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from auxpower.chisq import (
    ChiAuxEstimate,
    PartitionSpec,
    aux_chi2_statistic,
    build_sigma0_sigma1,
    chi2_statistic,
    chi2_threshold,
    empirical_sigma1,
    s_transform,
    t_vector,
    theorem2_rate,
    validate_aux_covariance,
    z_vector,
)
from auxpower.errors import AuxValidationError, InputError
from auxpower.linalg import pseudo_det_rank, pseudo_inverse
from auxpower.sample import CellMap, Event

SQ15 = math.sqrt(15)
R35 = math.sqrt(3 / 5)
SPEC42 = PartitionSpec([3 / 8, 5 / 8])
SPEC41 = PartitionSpec([5 / 8, 3 / 8])


@st.composite
def prob_vectors(draw, m=None):
    m = m or draw(st.integers(2, 6))
    raw = draw(st.lists(st.floats(0.05, 1.0), min_size=m, max_size=m))
    p = np.array(raw) / sum(raw)
    return p


def test_partition_validation():
    with pytest.raises(InputError):
        PartitionSpec([1.0])
    with pytest.raises(InputError):
        PartitionSpec([0.5, 0.6])
    with pytest.raises(InputError):
        PartitionSpec([0.0, 1.0])
    with pytest.raises(InputError):
        PartitionSpec([0.5, 0.5], cells=CellMap((Event.at_most(0), Event.of((1, 2)))))


def test_f_indicators():
    spec = PartitionSpec([0.25, 0.75], cells=CellMap.two_cell(Event.at_most(0)))
    assert_allclose(spec.f([-1.0, 2.0]), [[2.0, 0.0], [0.0, 1 / math.sqrt(0.75)]])


def test_chi2_examples():
    assert chi2_statistic([30, 50], SPEC42) == pytest.approx(0.0, abs=1e-12)
    assert chi2_statistic([40, 60], SPEC42) == pytest.approx(4 / 15, abs=1e-12)
    with pytest.raises(InputError):
        chi2_statistic([0, 0], SPEC42)
    with pytest.raises(InputError):
        chi2_statistic([1, 2, 3], SPEC42)


@given(prob_vectors(), st.data())
def test_chi2_equals_vector_form(p0, data):
    spec = PartitionSpec(p0)
    counts = data.draw(st.lists(st.integers(0, 500), min_size=p0.size, max_size=p0.size).filter(lambda c: sum(c) > 0))
    z = z_vector(counts, spec)
    assert chi2_statistic(counts, spec) == pytest.approx(float(z @ z), rel=1e-12, abs=1e-12)


def test_sigma1_examples():
    _, s1 = build_sigma0_sigma1([0.5, 0.5], SPEC42)
    assert_allclose(s1, 2 * np.array([[1 / 3, -1 / SQ15], [-1 / SQ15, 1 / 5]]), atol=1e-14)
    _, s1 = build_sigma0_sigma1([0.75, 0.25], SPEC41)
    assert_allclose(s1, 0.5 * np.array([[3 / 5, -R35], [-R35, 1.0]]), atol=1e-14)
    s0, s1 = build_sigma0_sigma1(SPEC41.p0, SPEC41)
    assert_allclose(s1, s0, atol=1e-15)
    with pytest.raises(InputError):
        build_sigma0_sigma1([0.2, 0.3, 0.5], SPEC41)


def test_sigma0_pinv_and_idempotence():
    s0, _ = build_sigma0_sigma1([0.75, 0.25], SPEC41)
    assert_allclose(s0 @ s0, s0, atol=1e-12)
    assert_allclose(pseudo_inverse(s0), s0, atol=1e-12)


@given(prob_vectors(), st.data())
def test_sigma_properties(p, data):
    p0 = data.draw(prob_vectors(m=p.size))
    spec = PartitionSpec(p0)
    s0, s1 = build_sigma0_sigma1(p, spec)
    assert_allclose(s0 @ s0, s0, atol=1e-12)
    assert_allclose(s0 @ np.sqrt(p), 0, atol=1e-12)
    assert pseudo_det_rank(s1)[1] == p.size - 1


def test_t_vector_examples():
    assert_allclose(t_vector(10, SPEC42.p0, SPEC42), 0, atol=1e-15)
    assert_allclose(t_vector(1, [0.5, 0.5], SPEC42), [-1 / (2 * math.sqrt(6)), 1 / (2 * math.sqrt(10))], atol=1e-15)


@given(prob_vectors(), st.data(), st.integers(1, 10_000))
def test_t_vector_orthogonal_to_sqrt_p0(p, data, n):
    spec = PartitionSpec(data.draw(prob_vectors(m=p.size)))
    assert float(spec.sqrt_p0 @ t_vector(n, p, spec)) == pytest.approx(0.0, abs=1e-9)


def _est(dev, sigma_hat, sigma1, n=100, spec=SPEC42):
    return ChiAuxEstimate(spec.sqrt_p0 + dev, sigma_hat, sigma1, n)


def test_aux_chi2_examples():
    _, s1 = build_sigma0_sigma1([0.5, 0.5], SPEC42)
    assert aux_chi2_statistic(_est(0.0, s1 / 2, s1), SPEC42) == pytest.approx(0.0, abs=1e-14)
    v = 0.03 * np.array([-1 / math.sqrt(3), 1 / math.sqrt(5)])  # in range(Sigma1)
    chi_plain = 100 * float(v @ v)
    assert aux_chi2_statistic(_est(v, s1, s1), SPEC42) == pytest.approx(chi_plain, rel=1e-10)
    assert aux_chi2_statistic(_est(v, s1 / 2, s1), SPEC42) == pytest.approx(2 * chi_plain, rel=1e-10)


def test_aux_chi2_matches_plain_statistic_when_sigma_equal():
    counts = np.array([41, 59])
    freqs = counts / counts.sum()
    s1 = empirical_sigma1(freqs, SPEC42)
    est = ChiAuxEstimate(freqs / SPEC42.sqrt_p0, s1, s1, 100)
    assert aux_chi2_statistic(est, SPEC42) == pytest.approx(chi2_statistic(counts, SPEC42), rel=1e-10)


def test_aux_chi2_requires_validation():
    _, s1 = build_sigma0_sigma1([0.5, 0.5], SPEC42)
    with pytest.raises(AuxValidationError) as exc:
        aux_chi2_statistic(_est(0.0, 2 * s1, s1), SPEC42)
    assert not exc.value.report.order_ok


def test_theorem2_rate_examples(V):
    spec, p = SPEC41, [0.75, 0.25]
    _, s1 = build_sigma0_sigma1(p, spec)
    # (15/94)[[3, -sqrt15], [-sqrt15, 5]] and (15/92)[...] are the pseudo-inverses of 47/32 V and 23/16 V
    for coef, c in ((15 / 94, 47 / 32), (15 / 92, 23 / 16)):
        assert_allclose(pseudo_inverse(c * V), coef * np.array([[3, -SQ15], [-SQ15, 5]]), atol=1e-12)
    assert theorem2_rate(p, spec, 47 / 32 * V, s1) == pytest.approx(1 / 1128, abs=1e-8)
    assert theorem2_rate(p, spec, 23 / 16 * V, s1) == pytest.approx(1 / 552, abs=1e-8)
    assert theorem2_rate(p, spec, s1, s1) == pytest.approx(0.0, abs=1e-14)


def test_theorem2_rate_cond_mean_example():
    _, s1 = build_sigma0_sigma1([0.5, 0.5], SPEC42)
    assert theorem2_rate([0.5, 0.5], SPEC42, s1 / 2, s1) == pytest.approx(1 / 32, abs=1e-12)


def test_validation_examples():
    _, s1 = build_sigma0_sigma1([0.5, 0.5], SPEC42)
    assert validate_aux_covariance(s1 / 2, s1, 2).passed
    bad = validate_aux_covariance(np.eye(2), s1, 2)
    assert not bad.passed and bad.rank_hat == 2
    worse = validate_aux_covariance(2 * s1, s1, 2)
    assert not worse.passed and not worse.order_ok


@given(prob_vectors(), st.data(), st.floats(0.05, 1.0))
def test_rate_nonnegative_under_validation(p, data, shrink):
    spec = PartitionSpec(data.draw(prob_vectors(m=p.size)))
    _, s1 = build_sigma0_sigma1(p, spec)
    # shrink along one direction of range(Sigma1) keeps rank and ordering
    w, q = np.linalg.eigh(s1)
    u = q[:, -1]
    sh = s1 - (1 - shrink) * w[-1] * np.outer(u, u)
    rep = validate_aux_covariance(sh, s1, p.size)
    assert rep.passed and rep.werner_ok
    assert theorem2_rate(p, spec, sh, s1) >= 0.0


def test_s_transform_maps_covariance():
    _, s1 = build_sigma0_sigma1([0.5, 0.5], SPEC42)
    sh = 5 / 9 * s1
    s = s_transform(sh, s1)
    assert_allclose(s.T @ sh @ s, s1, atol=1e-12)


def test_threshold():
    assert chi2_threshold(0.05, SPEC42) == pytest.approx(3.841459, abs=1e-6)
