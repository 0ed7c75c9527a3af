"""Spectral toolkit for small symmetric PSD matrices.

All routines go through a symmetric eigendecomposition and treat eigenvalues
with ``|lambda| <= tol * max|lambda|`` as exact zeros. Inputs are plain
numpy arrays; they are symmetrized on entry and never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import IncompatibleCovariancesError, InputError, NotPSDError

DEFAULT_TOL = 1e-10


def as_sym(m: ArrayLike) -> NDArray[np.float64]:
    """Return ``m`` as a float symmetric matrix, ``(m + m.T) / 2``.

    Scalars and 1-element vectors are promoted to 1x1 matrices.
    """
    a = np.array(m, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InputError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return (a + a.T) / 2.0


@dataclass(frozen=True)
class SpectralInfo:
    eigenvalues: NDArray[np.float64]  # descending
    eigenvectors: NDArray[np.float64]  # columns, matching eigenvalues
    tol: float

    @property
    def cutoff(self) -> float:
        """Absolute threshold below which an eigenvalue counts as zero."""
        if self.eigenvalues.size == 0:
            return 0.0
        return self.tol * float(np.max(np.abs(self.eigenvalues)))

    @property
    def nonzero(self) -> NDArray[np.bool_]:
        return np.abs(self.eigenvalues) > self.cutoff

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.nonzero))

    def reconstruct(self) -> NDArray[np.float64]:
        q, lam = self.eigenvectors, self.eigenvalues
        return (q * lam) @ q.T


def spectral(m: ArrayLike, tol: float = DEFAULT_TOL) -> SpectralInfo:
    """Eigendecomposition of a symmetric matrix, eigenvalues sorted descending."""
    if tol < 0:
        raise InputError("tol must be nonnegative")
    a = as_sym(m)
    lam, q = np.linalg.eigh(a)
    order = np.argsort(lam)[::-1]
    return SpectralInfo(lam[order], q[:, order], float(tol))


def _check_psd(info: SpectralInfo) -> None:
    lam_min = float(info.eigenvalues[-1])
    if lam_min < -info.cutoff:
        raise NotPSDError(f"matrix is not PSD: smallest eigenvalue {lam_min:.3e}")


def _apply(info: SpectralInfo, fn) -> NDArray[np.float64]:
    keep = info.nonzero
    q = info.eigenvectors[:, keep]
    vals = fn(info.eigenvalues[keep])
    out = (q * vals) @ q.T
    return (out + out.T) / 2.0


def pseudo_inverse(m: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.float64]:
    """Moore-Penrose inverse of a symmetric matrix."""
    return _apply(spectral(m, tol), lambda v: 1.0 / v)


def pseudo_det_rank(m: ArrayLike, tol: float = DEFAULT_TOL) -> tuple[float, int]:
    """Product and count of the nonzero eigenvalues of a PSD matrix.

    The zero matrix has pseudo-determinant 1 and rank 0.
    """
    info = spectral(m, tol)
    _check_psd(info)
    vals = info.eigenvalues[info.nonzero]
    return float(np.prod(vals)), int(vals.size)


def psd_sqrt(m: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.float64]:
    """Symmetric PSD square root; tiny negative eigenvalues are treated as zero."""
    info = spectral(m, tol)
    _check_psd(info)
    return _apply(info, lambda v: np.sqrt(np.clip(v, 0.0, None)))


def psd_sqrt_product(
    sigma_hat_pinv: ArrayLike, sigma1: ArrayLike, tol: float = DEFAULT_TOL
) -> NDArray[np.float64]:
    """Principal square root ``S`` of the product ``sigma_hat_pinv @ sigma1``.

    The product of two PSD matrices is not symmetric, so the root is taken
    through the congruence ``K = R sigma1 R`` with ``R = sqrt(sigma_hat_pinv)``:
    ``S = R sqrt(K) R^+``. When the two factors commute this is the
    elementwise root in their common eigenbasis. Requires
    ``range(sigma1) <= range(sigma_hat_pinv)``; otherwise no such root of the
    product exists in this form and ``IncompatibleCovariancesError`` is raised.
    """
    a = as_sym(sigma_hat_pinv)
    b = as_sym(sigma1)
    if a.shape != b.shape:
        raise InputError(f"shape mismatch {a.shape} vs {b.shape}")
    try:
        r = psd_sqrt(a, tol)
        _check_psd(spectral(b, tol))
    except NotPSDError as exc:
        raise IncompatibleCovariancesError(str(exc)) from exc
    k = spectral(r @ b @ r, tol)
    if float(k.eigenvalues[-1]) < -k.cutoff:
        raise IncompatibleCovariancesError(
            f"product spectrum has negative part {k.eigenvalues[-1]:.3e}"
        )
    root_k = _apply(k, lambda v: np.sqrt(np.clip(v, 0.0, None)))
    s = r @ root_k @ pseudo_inverse(r, tol)
    product = a @ b
    scale = max(1.0, float(np.max(np.abs(product))))
    if np.max(np.abs(s @ s - product)) > 1e-8 * scale:
        raise IncompatibleCovariancesError(
            "range(sigma1) is not contained in range(sigma_hat); S @ S != product"
        )
    return s


def psd_order_check(a: ArrayLike, b: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``a - b`` is PSD up to ``tol * max(1, ||a - b||_inf)``."""
    a = as_sym(a)
    b = as_sym(b)
    if a.shape != b.shape:
        raise InputError(f"shape mismatch {a.shape} vs {b.shape}")
    diff = a - b
    lam_min = float(np.linalg.eigvalsh(diff)[0])
    scale = max(1.0, float(np.linalg.norm(diff, ord=np.inf)))
    return lam_min >= -tol * scale


def range_projector(m: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.float64]:
    """Orthogonal projector onto the range of a symmetric matrix."""
    return _apply(spectral(m, tol), np.ones_like)
