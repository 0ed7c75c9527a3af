"""Regression-adjusted estimators using a known conditional mean ``E[X | C] = b``.

Both estimators have the form ``Theta* = Theta_hat - K12 K22^-1 (B_hat - b)``
with ``B_hat = P_n(X | C)`` the empirical conditional mean. ``K12`` and
``K22`` are estimated through the influence function of ``B_hat``,
``h(x) = (x - B_hat) 1_C(x) / P_n(C)``:

* ``K22 = P_n(h^2) / n = Var_n(X | C) / (n P_n(C))``
* ``K12 = P_n(theta h) / n``, with ``theta = x`` for the mean and
  ``theta = f_A`` for the vector of normalized cell indicators.

For the mean this collapses to ``Theta* = X_bar - P_n(C) (B_hat - b)``, whose
limit variance is ``sigma^2 - P(C) Var(X | C)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .chisq import ChiAuxEstimate, PartitionSpec, build_sigma0_sigma1
from .errors import DegenerateInformationError, EmptyConditioningError, InputError
from .sample import Event, WeightedSample, as_weighted
from .ztest import MeanAuxEstimate

VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class CondMeanInfo:
    """Known value of ``E[X | X in event]``."""

    event: Event
    value: float


@dataclass(frozen=True)
class CondMeanEstimates:
    cond_mean: float  # P_n(X | C)
    cond_var: float  # Var_n(X | C), divisor = count in C
    p_c: float  # P_n(C)
    k12: float | NDArray[np.float64]
    k22: float
    n: int

    @property
    def weight(self):
        """Regression coefficient ``K12 / K22``."""
        return self.k12 / self.k22


def cond_mean_estimates(
    sample, info: CondMeanInfo, spec: PartitionSpec | None = None
) -> CondMeanEstimates:
    """Empirical conditional moments and the ``K12``, ``K22`` estimates.

    With ``spec`` given, ``k12`` is the length-M vector for ``f_A``;
    otherwise it is the scalar for the mean.
    """
    s = as_weighted(sample)
    x, w, n = s.points, s.weights, s.n
    in_c = info.event.contains(x)
    p_c = float(w[in_c].sum())
    if p_c <= 0:
        raise EmptyConditioningError("no observation falls in the conditioning event")
    b_hat = float(np.dot(w[in_c], x[in_c])) / p_c
    resid = np.where(in_c, x - b_hat, 0.0)
    cond_var = float(np.dot(w, resid**2)) / p_c
    scale = max(1.0, float(np.dot(w[in_c], x[in_c] ** 2)) / p_c)
    if cond_var <= 1e-14 * scale:
        raise DegenerateInformationError("conditional variance is zero; K22 is not invertible")
    h = resid / p_c
    k22 = float(np.dot(w, h**2)) / n
    if spec is None:
        k12 = float(np.dot(w, x * h)) / n
    else:
        k12 = (w * h) @ spec.f(x) / n
    return CondMeanEstimates(b_hat, cond_var, p_c, k12, k22, n)


@dataclass(frozen=True)
class CondMeanLimits:
    """Population quantities for a discrete law (oracle mode)."""

    p_c: float
    cond_mean: float
    cond_var: float  # Var(X | C)
    sigma2: float  # Var(X)
    sigma_hat2: float  # sigma^2 - P(C) Var(X | C)
    sigma22: float  # limit variance of sqrt(n)(P_n(X|C) - b) = Var(X|C) / P(C)
    p: NDArray[np.float64] | None = None  # cell probabilities
    sigma1: NDArray[np.float64] | None = None
    sigma12: NDArray[np.float64] | None = None
    sigma_hat: NDArray[np.float64] | None = None


def condmean_limits(
    points: ArrayLike, probs: ArrayLike, event: Event, spec: PartitionSpec | None = None
) -> CondMeanLimits:
    """Exact limit quantities of the conditional-mean estimators under a discrete law."""
    x = np.asarray(points, dtype=float).ravel()
    pr = np.asarray(probs, dtype=float).ravel()
    in_c = event.contains(x)
    p_c = float(pr[in_c].sum())
    if p_c <= 0:
        raise EmptyConditioningError("event has probability zero")
    b = float(np.dot(pr[in_c], x[in_c])) / p_c
    resid = np.where(in_c, x - b, 0.0)
    cond_var = float(np.dot(pr, resid**2)) / p_c
    if cond_var <= 0:
        raise DegenerateInformationError("conditional variance is zero")
    mean = float(np.dot(pr, x))
    sigma2 = float(np.dot(pr, (x - mean) ** 2))
    out = dict(
        p_c=p_c,
        cond_mean=b,
        cond_var=cond_var,
        sigma2=sigma2,
        sigma_hat2=sigma2 - p_c * cond_var,
        sigma22=cond_var / p_c,
    )
    if spec is not None:
        f = spec.f(x)
        p = pr @ f * spec.sqrt_p0
        sigma1 = build_sigma0_sigma1(p, spec)[1]
        h = resid / p_c
        sigma12 = (pr * h) @ f
        sigma_hat = sigma1 - np.outer(sigma12, sigma12) / out["sigma22"]
        out.update(p=p, sigma1=sigma1, sigma12=sigma12, sigma_hat=(sigma_hat + sigma_hat.T) / 2)
    return CondMeanLimits(**out)


def theta_star_scalar(
    sample, info: CondMeanInfo, oracle: CondMeanLimits | None = None
) -> MeanAuxEstimate:
    """Adjusted mean ``X_bar - (K12/K22)(P_n(X|C) - b)`` with its standard deviation.

    ``sigma_hat`` is the plug-in ``sqrt(Var_n(X) - P_n(C) Var_n(X|C))``
    (floored at ``1e-12 Var_n(X)``), or the exact value from ``oracle``.
    """
    s = as_weighted(sample)
    est = cond_mean_estimates(s, info)
    xbar = s.mean()
    value = xbar - est.weight * (est.cond_mean - info.value)
    if oracle is not None:
        var = oracle.sigma_hat2
    else:
        var_x = float(np.dot(s.weights, (s.points - xbar) ** 2))
        var = max(var_x - est.p_c * est.cond_var, VARIANCE_FLOOR * var_x)
    if not var > 0:
        raise DegenerateInformationError("estimated variance is zero")
    return MeanAuxEstimate(value, float(np.sqrt(var)), s.n)


def theta_star_vector(
    sample,
    info: CondMeanInfo,
    spec: PartitionSpec,
    oracle: CondMeanLimits | None = None,
) -> ChiAuxEstimate:
    """Adjusted estimator of ``P[f_A]`` with ``Sigma_hat = Sigma1 - Sigma12 Sigma22^-1 Sigma12^t``.

    Plug-in mode estimates ``Sigma1``, ``Sigma12`` and ``Sigma22`` from the
    sample; ``oracle`` supplies the exact ones instead.
    """
    if spec.cells is None:
        raise InputError("partition needs a cell map to evaluate f_A")
    s = as_weighted(sample)
    est = cond_mean_estimates(s, info, spec)
    plain = s.weights @ spec.f(s.points)
    p_hat = plain - est.weight * (est.cond_mean - info.value)
    if oracle is not None:
        if oracle.sigma_hat is None:
            raise InputError("oracle limits were computed without a partition")
        return ChiAuxEstimate(p_hat, oracle.sigma_hat, oracle.sigma1, s.n)
    freqs = plain * spec.sqrt_p0
    sigma1 = build_sigma0_sigma1(freqs / freqs.sum(), spec)[1]
    sigma12 = s.n * np.asarray(est.k12)
    sigma22 = s.n * est.k22
    sigma_hat = sigma1 - np.outer(sigma12, sigma12) / sigma22
    return ChiAuxEstimate(p_hat, sigma_hat, sigma1, s.n)


def weighted_from_sample(sample: ArrayLike) -> WeightedSample:
    """Merge repeated values so statistics run on distinct points only."""
    x = np.asarray(sample, dtype=float).ravel()
    pts, counts = np.unique(x, return_counts=True)
    return WeightedSample.from_counts(pts, counts)
