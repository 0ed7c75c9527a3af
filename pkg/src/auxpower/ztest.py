"""Classical and auxiliary Z-tests for ``H0: E[X] = mu`` and the power gain rate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from .errors import AuxNotInformativeError, DegenerateAlternativeError, InputError
from .gauss import normal_quantile


@dataclass(frozen=True)
class ZTestConfig:
    mu: float
    alpha: float = 0.05

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise InputError(f"alpha must lie in (0, 1), got {self.alpha}")

    @property
    def threshold(self) -> float:
        return z_threshold(self.alpha)


@dataclass(frozen=True)
class MeanAuxEstimate:
    """An estimator of E[X] with its asymptotic standard deviation."""

    value: float
    sigma_hat: float
    n: int

    def __post_init__(self):
        if not self.sigma_hat > 0:
            raise InputError(f"sigma_hat must be positive, got {self.sigma_hat}")
        if self.n < 1:
            raise InputError(f"sample size must be >= 1, got {self.n}")


def sample_sd(sample: ArrayLike) -> float:
    """Unbiased sample standard deviation (divisor n - 1)."""
    x = np.asarray(sample, dtype=float)
    if x.size < 2:
        raise InputError("need at least two observations for a standard deviation")
    return float(np.std(x, ddof=1))


def z_statistic(sample: ArrayLike, mu: float, sigma_n: float | None = None) -> float:
    """``sqrt(n) (mean - mu) / sigma_n``; ``sigma_n`` defaults to the sample sd."""
    x = np.asarray(sample, dtype=float).ravel()
    if x.size == 0:
        raise InputError("empty sample")
    if sigma_n is None:
        sigma_n = sample_sd(x)
    if not sigma_n > 0:
        raise InputError(f"sigma_n must be positive, got {sigma_n}")
    return math.sqrt(x.size) * (float(np.mean(x)) - mu) / sigma_n


def aux_z_statistic(est: MeanAuxEstimate, mu: float) -> float:
    return math.sqrt(est.n) * (est.value - mu) / est.sigma_hat


def z_threshold(alpha: float) -> float:
    """Two-sided critical value ``Phi^-1(1 - alpha/2)``."""
    return normal_quantile(1.0 - alpha / 2.0)


def z_reject(statistic: float, alpha: float = 0.05) -> bool:
    """Two-sided decision ``|Z| > Phi^-1(1 - alpha/2)``; works for both statistics."""
    return abs(statistic) > z_threshold(alpha)


def theorem1_rate(mean: float, mu: float, sigma: float, sigma_hat: float) -> float:
    """Coefficient ``c`` with ``x_n ~ c n`` in the beta-risk ratio bound.

    ``c = (mean - mu)^2 (1/sigma_hat - 1/sigma)``.
    """
    if not (sigma > 0 and sigma_hat > 0):
        raise InputError("standard deviations must be positive")
    if sigma_hat > sigma:
        raise AuxNotInformativeError(
            f"sigma_hat={sigma_hat} exceeds sigma={sigma}; no variance reduction"
        )
    return (mean - mu) ** 2 * (1.0 / sigma_hat - 1.0 / sigma)


class GainConsequences(NamedTuple):
    n_for_gain: int
    enlarged_h0_radius: float | None


def theorem1_consequences(
    mean: float,
    mu: float,
    sigma: float,
    sigma_hat: float,
    k: float = 2.0,
    n: int | None = None,
) -> GainConsequences:
    """Sample size for a ``k``-fold power gain, and the enlarged-H0 radius at ``n``.

    ``n_for_gain = ceil(sigma sigma_hat ln k / ((sigma - sigma_hat)(mean - mu)^2))``
    and ``radius = ln k / sqrt(n (1/sigma_hat - 1/sigma))``.
    """
    if not k > 0:
        raise InputError(f"gain factor must be positive, got {k}")
    if mean == mu:
        raise DegenerateAlternativeError("mean equals mu: no alternative to detect")
    theorem1_rate(mean, mu, sigma, sigma_hat)  # ordering check
    log_k = math.log(k)
    if log_k == 0.0:
        return GainConsequences(0, 0.0 if n is not None else None)
    if sigma_hat == sigma:
        raise AuxNotInformativeError("sigma_hat equals sigma: no gain is reachable")
    size = sigma * sigma_hat * log_k / ((sigma - sigma_hat) * (mean - mu) ** 2)
    radius = None
    if n is not None:
        if n < 1:
            raise InputError("n must be >= 1")
        radius = log_k / math.sqrt(n * (1.0 / sigma_hat - 1.0 / sigma))
    return GainConsequences(max(0, math.ceil(size)), radius)
