import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from auxpower.errors import IncompatibleCovariancesError, InputError, NotPSDError
from auxpower.linalg import (
    as_sym,
    psd_order_check,
    psd_sqrt_product,
    pseudo_det_rank,
    pseudo_inverse,
    range_projector,
    spectral,
)
from oracles import charpoly_eigenvalues

R35 = math.sqrt(3 / 5)
SIGMA1_41 = 0.5 * np.array([[3 / 5, -R35], [-R35, 1.0]])
HALF = np.array([[0.5, -0.5], [-0.5, 0.5]])


@st.composite
def psd_matrices(draw, max_dim=6):
    d = draw(st.integers(1, max_dim))
    r = draw(st.integers(0, d))
    vals = draw(st.lists(st.floats(-3, 3, allow_nan=False), min_size=d * max(r, 1), max_size=d * max(r, 1)))
    a = np.array(vals).reshape(d, max(r, 1))
    if r == 0:
        a = np.zeros_like(a)
    return a @ a.T


def test_as_sym_symmetrizes_exactly():
    m = as_sym([[1.0, 2.0], [2.0 + 1e-9, 3.0]])
    assert m[0, 1] == m[1, 0]


def test_as_sym_rejects_nonfinite_and_nonsquare():
    with pytest.raises(InputError):
        as_sym([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(InputError):
        as_sym(np.ones((2, 3)))


def test_pinv_of_rank_one_covariance():
    expected = np.array([[15, -5 * math.sqrt(15)], [-5 * math.sqrt(15), 25]]) / 32
    assert_allclose(pseudo_inverse(SIGMA1_41), expected, atol=1e-12)


def test_pinv_identity_and_idempotent():
    assert_allclose(pseudo_inverse(np.eye(2)), np.eye(2), atol=1e-15)
    assert_allclose(pseudo_inverse(HALF), HALF, atol=1e-12)


def test_pinv_rejects_nonfinite():
    with pytest.raises(InputError):
        pseudo_inverse([[np.inf, 0], [0, 1]])


@pytest.mark.parametrize(
    "m, det, rank",
    [(np.eye(2), 1.0, 2), (SIGMA1_41, 4 / 5, 1), (HALF, 1.0, 1), (np.zeros((3, 3)), 1.0, 0)],
)
def test_pseudo_det_rank_examples(m, det, rank):
    d, r = pseudo_det_rank(m)
    assert r == rank
    assert d == pytest.approx(det, abs=1e-12)


def test_pseudo_det_rejects_negative_eigenvalue():
    with pytest.raises(NotPSDError):
        pseudo_det_rank(np.diag([1.0, -0.5]))


def test_sqrt_product_half_covariance_gives_scaled_projector():
    proj = pseudo_inverse(SIGMA1_41) @ SIGMA1_41
    s = psd_sqrt_product(pseudo_inverse(SIGMA1_41 / 2), SIGMA1_41)
    assert_allclose(s, math.sqrt(2) * proj, atol=1e-12)


def test_sqrt_product_equal_covariances_is_idempotent():
    s = psd_sqrt_product(pseudo_inverse(SIGMA1_41), SIGMA1_41)
    assert_allclose(s @ s, s, atol=1e-12)
    assert_allclose(s, range_projector(SIGMA1_41), atol=1e-12)


def test_sqrt_product_diagonal():
    s = psd_sqrt_product(pseudo_inverse(np.diag([1.0, 0.0])), np.diag([4.0, 0.0]))
    assert_allclose(s, np.diag([2.0, 0.0]), atol=1e-14)


def test_sqrt_product_rejects_indefinite():
    with pytest.raises((IncompatibleCovariancesError, NotPSDError)):
        psd_sqrt_product(np.diag([1.0, 1.0]), np.diag([1.0, -1.0]))


def test_order_check_examples():
    assert psd_order_check(SIGMA1_41, SIGMA1_41)
    assert psd_order_check(SIGMA1_41, SIGMA1_41 / 2)
    assert not psd_order_check(SIGMA1_41, 2 * SIGMA1_41)
    with pytest.raises(InputError):
        psd_order_check(np.eye(2), np.eye(3))


@given(psd_matrices())
def test_moore_penrose_axioms(m):
    p = pseudo_inverse(m)
    scale = max(1.0, np.abs(m).max())
    assert_allclose(m @ p @ m, m, atol=1e-9 * scale)
    pscale = max(1.0, np.abs(p).max())
    assert_allclose(p @ m @ p, p, atol=1e-9 * pscale * max(1.0, scale))
    assert_allclose(p, p.T, atol=0)


@given(psd_matrices(max_dim=3))
def test_pseudo_det_rank_matches_charpoly(m):
    lam = charpoly_eigenvalues(m)
    scale = np.abs(lam).max()
    keep = np.abs(lam) > 1e-6 * scale if scale > 0 else np.zeros(lam.size, bool)
    det, rank = pseudo_det_rank(m, tol=1e-6)
    assert rank == int(keep.sum())
    expected = float(np.prod(lam[keep])) if keep.any() else 1.0
    assert det == pytest.approx(expected, rel=1e-6, abs=1e-9)


@given(psd_matrices(), st.data())
def test_sqrt_product_squares_back(sigma1, data):
    d = sigma1.shape[0]
    # non-commuting partner sharing the range of sigma1: P B P with random PSD B
    proj = range_projector(sigma1)
    k = np.array(data.draw(st.lists(st.floats(-2, 2), min_size=d * d, max_size=d * d))).reshape(d, d)
    b = proj @ (k @ k.T + np.eye(d)) @ proj
    s = psd_sqrt_product(pseudo_inverse(b), sigma1)
    target = pseudo_inverse(b) @ sigma1
    assert_allclose(s @ s, target, atol=1e-9 * max(1.0, np.abs(target).max()))


@given(st.lists(st.floats(0.05, 1.0), min_size=2, max_size=6))
def test_idempotent_is_its_own_pinv(raw):
    p = np.array(raw) / sum(raw)
    sq = np.sqrt(p)
    sigma0 = np.eye(p.size) - np.outer(sq, sq)
    assert_allclose(pseudo_inverse(sigma0), sigma0, atol=1e-12)


@given(psd_matrices())
def test_spectral_reconstruction(m):
    info = spectral(m)
    assert info.eigenvalues.size == m.shape[0]
    assert np.all(np.diff(info.eigenvalues) <= 0)
    err = np.abs(info.reconstruct() - m).max()
    assert err <= 1e-10 * max(1.0, np.abs(m).sum(axis=1).max())
