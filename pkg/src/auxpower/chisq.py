"""Chi-square goodness-of-fit test and its auxiliary-information variant.

Vectors are row vectors as in ``Z = sqrt(n) (P_hat - P0[f]) S`` and
``chi2_hat = Z Z^t``, where ``P0[f]_i = sqrt(p0_i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import AuxValidationError, InputError
from .gauss import chi2_cdf_quantile
from .linalg import DEFAULT_TOL, as_sym, pseudo_det_rank, pseudo_inverse, psd_order_check, psd_sqrt_product
from .sample import CellMap


@dataclass(frozen=True)
class PartitionSpec:
    """Null cell probabilities ``p0`` of an M-cell partition.

    ``cells`` optionally maps raw observations to cell indices.
    """

    p0: NDArray[np.float64]
    labels: tuple[str, ...] | None = None
    cells: CellMap | None = field(default=None, compare=False)

    def __post_init__(self):
        p0 = np.asarray(self.p0, dtype=float).ravel()
        if p0.size < 2:
            raise InputError("a partition needs at least two cells")
        if np.any(p0 <= 0) or not np.all(np.isfinite(p0)):
            raise InputError("null probabilities must be positive")
        if abs(p0.sum() - 1.0) > 1e-12:
            raise InputError(f"null probabilities sum to {p0.sum()!r}")
        if self.labels is not None and len(self.labels) != p0.size:
            raise InputError("one label per cell")
        if self.cells is not None and self.cells.size != p0.size:
            raise InputError("cell map size differs from len(p0)")
        object.__setattr__(self, "p0", p0)

    @property
    def M(self) -> int:
        return self.p0.size

    @property
    def sqrt_p0(self) -> NDArray[np.float64]:
        return np.sqrt(self.p0)

    def f(self, x: ArrayLike) -> NDArray[np.float64]:
        """Normalized indicators ``1_{A_i}(x) / sqrt(p0_i)``, shape ``(len(x), M)``."""
        if self.cells is None:
            raise InputError("partition has no cell map")
        lab = self.cells.labels(x)
        return np.eye(self.M)[lab] / self.sqrt_p0


@dataclass(frozen=True)
class ChiAuxEstimate:
    """Auxiliary estimator of ``P[f_A]`` with its covariance and the plain one."""

    p_hat: NDArray[np.float64]
    sigma_hat: NDArray[np.float64]
    sigma1: NDArray[np.float64]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "p_hat", np.asarray(self.p_hat, dtype=float).ravel())
        object.__setattr__(self, "sigma_hat", as_sym(self.sigma_hat))
        object.__setattr__(self, "sigma1", as_sym(self.sigma1))
        m = self.p_hat.size
        if self.sigma_hat.shape != (m, m) or self.sigma1.shape != (m, m):
            raise InputError("covariances must be M x M")
        if self.n < 1:
            raise InputError("sample size must be >= 1")


def _check_len(v: NDArray, spec: PartitionSpec, what: str) -> None:
    if v.size != spec.M:
        raise InputError(f"{what} has length {v.size}, partition has {spec.M} cells")


def chi2_statistic(counts: ArrayLike, spec: PartitionSpec) -> float:
    """Pearson statistic ``sum_i n (counts_i/n - p0_i)^2 / p0_i``."""
    c = np.asarray(counts, dtype=float).ravel()
    _check_len(c, spec, "counts")
    if np.any(c < 0):
        raise InputError("counts must be nonnegative")
    n = c.sum()
    if n <= 0:
        raise InputError("zero total count")
    return float(np.sum(n * (c / n - spec.p0) ** 2 / spec.p0))


def z_vector(counts: ArrayLike, spec: PartitionSpec) -> NDArray[np.float64]:
    """``sqrt(n) (P_n(A_i) - p0_i) / sqrt(p0_i)``; its squared norm is the Pearson statistic."""
    c = np.asarray(counts, dtype=float).ravel()
    _check_len(c, spec, "counts")
    n = c.sum()
    if n <= 0:
        raise InputError("zero total count")
    return math.sqrt(n) * (c / n - spec.p0) / spec.sqrt_p0


def chi2_threshold(alpha: float, spec: PartitionSpec) -> float:
    _, q = chi2_cdf_quantile(spec.M - 1)
    return q(1.0 - alpha)


def build_sigma0_sigma1(
    p: ArrayLike, spec: PartitionSpec
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Limit covariances of ``alpha_n[f_A]`` for true cell probabilities ``p``.

    ``Sigma0 = I - sqrt(p)^t sqrt(p)`` and
    ``Sigma1 = Diag(sqrt(p/p0)) Sigma0 Diag(sqrt(p/p0))``, i.e.
    ``(Sigma1)_ij = (p_i delta_ij - p_i p_j) / sqrt(p0_i p0_j)``.
    """
    p = np.asarray(p, dtype=float).ravel()
    _check_len(p, spec, "p")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise InputError("p must be a probability vector")
    sp = np.sqrt(p)
    sigma0 = np.eye(p.size) - np.outer(sp, sp)
    d = np.sqrt(p / spec.p0)
    sigma1 = d[:, None] * sigma0 * d[None, :]
    return as_sym(sigma0), as_sym(sigma1)


def empirical_sigma1(freqs: ArrayLike, spec: PartitionSpec) -> NDArray[np.float64]:
    """Plug-in ``Sigma_{1,n}`` from empirical cell frequencies."""
    freqs = np.asarray(freqs, dtype=float).ravel()
    freqs = freqs / freqs.sum()
    return build_sigma0_sigma1(freqs, spec)[1]


def t_vector(n: float, p: ArrayLike, spec: PartitionSpec) -> NDArray[np.float64]:
    """Drift ``sqrt(n) (p0_i - p_i) / sqrt(p0_i)`` separating H1 from H0."""
    p = np.asarray(p, dtype=float).ravel()
    _check_len(p, spec, "p")
    return math.sqrt(n) * (spec.p0 - p) / spec.sqrt_p0


@dataclass(frozen=True)
class ValidationReport:
    order_ok: bool
    rank_hat: int
    rank_1: int
    expected_rank: int
    werner_ok: bool | None
    messages: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return (
            self.order_ok
            and self.rank_hat == self.expected_rank
            and self.rank_1 == self.expected_rank
        )


def validate_aux_covariance(
    sigma_hat: ArrayLike, sigma1: ArrayLike, M: int, tol: float = DEFAULT_TOL
) -> ValidationReport:
    """Check ``Sigma1 - Sigma_hat >= 0`` and ``rank(Sigma_hat) = rank(Sigma1) = M - 1``.

    On success the consequence ``Sigma_hat^+ - Sigma1^+ >= 0`` is verified too.
    Never raises on failed conditions; the report carries them.
    """
    sh = as_sym(sigma_hat)
    s1 = as_sym(sigma1)
    if sh.shape != (M, M) or s1.shape != (M, M):
        raise InputError(f"expected {M}x{M} matrices")
    msgs = []
    order_ok = psd_order_check(s1, sh, tol)
    if not order_ok:
        msgs.append("Sigma1 - Sigma_hat is not PSD")
    ranks = []
    for name, m in (("Sigma_hat", sh), ("Sigma1", s1)):
        try:
            ranks.append(pseudo_det_rank(m, tol)[1])
        except InputError:
            ranks.append(-1)
            msgs.append(f"{name} is not PSD")
    rank_hat, rank_1 = ranks
    for name, r in (("Sigma_hat", rank_hat), ("Sigma1", rank_1)):
        if r >= 0 and r != M - 1:
            msgs.append(f"rank({name}) = {r}, expected {M - 1}")
    werner = None
    if order_ok and rank_hat == rank_1 == M - 1:
        werner = psd_order_check(pseudo_inverse(sh, tol), pseudo_inverse(s1, tol), 1e-8)
        if not werner:
            msgs.append("Sigma_hat^+ - Sigma1^+ is not PSD")
    return ValidationReport(order_ok, rank_hat, rank_1, M - 1, werner, tuple(msgs))


def _require_valid(sigma_hat, sigma1, M, tol) -> ValidationReport:
    report = validate_aux_covariance(sigma_hat, sigma1, M, tol)
    if not report.passed:
        raise AuxValidationError("; ".join(report.messages), report)
    return report


def s_transform(sigma_hat: ArrayLike, sigma1: ArrayLike, tol: float = DEFAULT_TOL) -> NDArray[np.float64]:
    """``S = sqrt(Sigma_hat^+ Sigma1)``."""
    return psd_sqrt_product(pseudo_inverse(sigma_hat, tol), sigma1, tol)


def aux_chi2_statistic(est: ChiAuxEstimate, spec: PartitionSpec, tol: float = DEFAULT_TOL) -> float:
    """``chi2_hat = Z Z^t`` with ``Z = sqrt(n) (P_hat - sqrt(p0)) S``."""
    _check_len(est.p_hat, spec, "p_hat")
    _require_valid(est.sigma_hat, est.sigma1, spec.M, tol)
    s = s_transform(est.sigma_hat, est.sigma1, tol)
    z = math.sqrt(est.n) * (est.p_hat - spec.sqrt_p0) @ s
    return float(z @ z)


def theorem2_rate(
    p: ArrayLike,
    spec: PartitionSpec,
    sigma_hat: ArrayLike,
    sigma1: ArrayLike,
    tol: float = DEFAULT_TOL,
) -> float:
    """Coefficient ``c`` with ``x_n ~ c n``: ``(1/2) T (Sigma_hat^+ - Sigma1^+) T^t`` at ``n = 1``."""
    _require_valid(sigma_hat, sigma1, spec.M, tol)
    t = t_vector(1, p, spec)
    diff = pseudo_inverse(sigma_hat, tol) - pseudo_inverse(sigma1, tol)
    return max(0.0, 0.5 * float(t @ diff @ t))
