"""Gaussian and chi-square primitives, plus seeded random streams.

Random streams
--------------
Every generator is ``numpy.random.Generator(PCG64(SeedSequence(seed,
spawn_key=key)))``. ``key`` is a tuple of nonnegative integers naming the
stream, so stream ``(r,)`` of seed ``s`` is the ``r``-th child of ``s`` and is
reproducible on any platform with numpy >= 1.17. Normal variates use numpy's
ziggurat sampler on that stream. Swapping either piece changes every
simulated number and counts as a breaking change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .errors import InputError
from .linalg import DEFAULT_TOL, SpectralInfo, _check_psd, as_sym, spectral

LOG_2PI = math.log(2.0 * math.pi)


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for stream ``key`` of ``seed`` (see module docstring)."""
    if seed < 0 or any(k < 0 for k in key):
        raise InputError("seed and stream keys must be nonnegative integers")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def normal_cdf(x: float) -> float:
    return float(special.ndtr(x))


def normal_quantile(p: float) -> float:
    """Inverse of the standard normal CDF."""
    if not 0.0 < p < 1.0:
        raise InputError(f"probability must lie in (0, 1), got {p}")
    return float(special.ndtri(p))


def chi2_cdf_quantile(df: int) -> tuple[Callable[[float], float], Callable[[float], float]]:
    """Return ``(cdf, quantile)`` of the chi-square law with ``df`` degrees of freedom."""
    if int(df) != df or df < 1:
        raise InputError(f"degrees of freedom must be a positive integer, got {df}")
    k = float(df)

    def cdf(x: float) -> float:
        if x <= 0:
            return 0.0
        return float(special.chdtr(k, x))

    def quantile(p: float) -> float:
        if not 0.0 < p < 1.0:
            raise InputError(f"probability must lie in (0, 1), got {p}")
        return float(special.chdtri(k, 1.0 - p))

    return cdf, quantile


@dataclass(frozen=True)
class GaussianSpec:
    """Centered (possibly singular) multivariate normal law N(0, covariance)."""

    covariance: NDArray[np.float64]
    tol: float = DEFAULT_TOL
    info: SpectralInfo = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cov = as_sym(self.covariance)
        info = spectral(cov, self.tol)
        _check_psd(info)
        object.__setattr__(self, "covariance", cov)
        object.__setattr__(self, "info", info)

    @property
    def dim(self) -> int:
        return self.covariance.shape[0]

    @property
    def rank(self) -> int:
        return self.info.rank

    @property
    def pseudo_det(self) -> float:
        return float(np.prod(self.info.eigenvalues[self.info.nonzero]))


def singular_mvn_logdensity(x: ArrayLike, spec: GaussianSpec) -> float:
    """Log density of N(0, Sigma) with respect to Lebesgue measure on range(Sigma).

    Uses the normalization ``(2 pi)^(-r/2) |Sigma|_+^(-1/2)`` with ``r`` the
    rank. Points off the support (projection residual above
    ``1e-8 * ||x||``) get ``-inf``.
    """
    x = np.asarray(x, dtype=float).ravel()
    if x.size != spec.dim:
        raise InputError(f"point has dimension {x.size}, law has {spec.dim}")
    info = spec.info
    q = info.eigenvectors[:, info.nonzero]
    lam = info.eigenvalues[info.nonzero]
    coords = q.T @ x
    residual = x - q @ coords
    if np.linalg.norm(residual) > 1e-8 * np.linalg.norm(x):
        return -math.inf
    r = lam.size
    quad = float(np.sum(coords**2 / lam))
    return -0.5 * r * LOG_2PI - 0.5 * float(np.sum(np.log(lam))) - 0.5 * quad


def mvn_sample(
    spec: GaussianSpec, rng: np.random.Generator, size: int | None = None
) -> NDArray[np.float64]:
    """Draw from N(0, Sigma) as ``Q_r diag(sqrt(lambda_r)) z``.

    Draws live exactly in the span of the retained eigenvectors. With
    ``size`` set, returns an array of shape ``(size, dim)``.
    """
    info = spec.info
    q = info.eigenvectors[:, info.nonzero]
    root = np.sqrt(info.eigenvalues[info.nonzero])
    n = 1 if size is None else int(size)
    z = rng.standard_normal((n, root.size))
    draws = (z * root) @ q.T
    if size is None:
        return draws[0]
    return draws
