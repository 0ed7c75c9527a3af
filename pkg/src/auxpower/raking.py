"""Raking-Ratio (iterative proportional fitting) and its variance formulas.

Steps of a schedule are numbered from 1, as in ``Phi_k^(N)`` for
``1 <= k <= N``. A schedule may list the same partition several times
(alternating two partitions is the usual case).

The limit covariance of the raked estimator of ``P[g]`` after ``N`` steps is
``base - sum_k Phi_k^t C_k Phi_k``, where ``C_k`` is the multinomial
covariance of partition ``k`` and ``Phi_k`` collects alternating chains of
conditional-probability matrices. ``phi_matrix`` evaluates the chain sum by
the recursion ``Phi_k = E[g | A^(k)] - sum_{l > k} P_{A^(l)|A^(k)} Phi_l``,
which regroups the chains by their first index and is quadratic in ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DegenerateDesignError, InputError, RakingDegenerateError
from .sample import CellMap, WeightedSample, as_weighted

FIXED_POINT_TOL = 1e-12
MAX_SWEEPS = 1000


@dataclass(frozen=True)
class RakingPartition:
    """A partition with its known cell probabilities."""

    cells: CellMap
    targets: NDArray[np.float64]

    def __post_init__(self):
        t = np.asarray(self.targets, dtype=float).ravel()
        if t.size != self.cells.size:
            raise InputError(f"{t.size} targets for {self.cells.size} cells")
        if np.any(t <= 0):
            raise InputError("target probabilities must be positive")
        if abs(t.sum() - 1.0) > 1e-12:
            raise InputError(f"targets sum to {t.sum()!r}")
        object.__setattr__(self, "targets", t)


@dataclass(frozen=True)
class RakingSchedule:
    partitions: tuple[RakingPartition, ...]

    @classmethod
    def alternating(cls, first: RakingPartition, second: RakingPartition, steps: int) -> "RakingSchedule":
        return cls(tuple(first if i % 2 == 0 else second for i in range(steps)))

    def __len__(self) -> int:
        return len(self.partitions)


def cell_weights(s: WeightedSample, cells: CellMap) -> NDArray[np.float64]:
    lab = cells.labels(s.points)
    return np.bincount(lab, weights=s.weights, minlength=cells.size)


def rake_step(s: WeightedSample, partition: RakingPartition) -> WeightedSample:
    """Rescale weights so each cell carries exactly its target probability."""
    lab = partition.cells.labels(s.points)
    current = np.bincount(lab, weights=s.weights, minlength=partition.cells.size)
    if np.any(current <= 0):
        empty = int(np.flatnonzero(current <= 0)[0])
        raise RakingDegenerateError(f"cell {empty} has zero weight; raking ratio undefined")
    w = s.weights * (partition.targets / current)[lab]
    return WeightedSample(s.points, w / w.sum(), s.n)


def rake(sample, schedule: RakingSchedule, N: int | None = None) -> WeightedSample:
    """Apply the first ``N`` steps of ``schedule`` (all of them by default)."""
    s = as_weighted(sample)
    N = len(schedule) if N is None else N
    if not 0 <= N <= len(schedule):
        raise InputError(f"N={N} outside 0..{len(schedule)}")
    for part in schedule.partitions[:N]:
        s = rake_step(s, part)
    return s


def raked_mean(sample, schedule: RakingSchedule, N: int | None = None) -> float:
    """Weighted mean after ``N`` raking steps; ``N = 0`` is the empirical mean."""
    return rake(sample, schedule, N).mean()


def marginal_error(s: WeightedSample, partition: RakingPartition) -> float:
    return float(np.max(np.abs(cell_weights(s, partition.cells) - partition.targets)))


def rake_to_convergence(
    sample,
    partitions: Sequence[RakingPartition],
    tol: float = FIXED_POINT_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> tuple[WeightedSample, int]:
    """Cycle through ``partitions`` until every marginal error is below ``tol``.

    Returns the raked sample and the number of sweeps used; stops after
    ``max_sweeps`` full cycles.
    """
    s = as_weighted(sample)
    for sweep in range(1, max_sweeps + 1):
        for part in partitions:
            s = rake_step(s, part)
        if max(marginal_error(s, p) for p in partitions) < tol:
            return s, sweep
    return s, max_sweeps


def marginal_cov(marginal: ArrayLike) -> NDArray[np.float64]:
    """``C = Diag(p) - p^t p`` for a cell-probability vector ``p``."""
    p = np.asarray(marginal, dtype=float).ravel()
    return np.diag(p) - np.outer(p, p)


def partition_matrices(joint: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """From ``joint[k, l] = P(A_k^(j) & A_l^(i))`` return ``(C_j, P_{A^(i)|A^(j)})``.

    Rows index the conditioning partition ``j``; the conditional matrix has
    entries ``P(A_l^(i) | A_k^(j))``.
    """
    j = np.asarray(joint, dtype=float)
    if j.ndim != 2 or np.any(j < 0) or abs(j.sum() - 1.0) > 1e-12:
        raise InputError("joint must be a 2-d probability table")
    m = j.sum(axis=1)
    if np.any(m <= 0):
        raise InputError("a conditioning cell has probability zero")
    return marginal_cov(m), j / m[:, None]


@dataclass(frozen=True)
class RakingDesign:
    """Everything the variance formula needs for an ``N``-step schedule.

    ``marginals[k]`` are cell probabilities of step ``k+1``, ``Ck[k]`` their
    covariance, ``base[k]`` the ``m_k x d`` table of ``E[g | cell]`` and
    ``conditionals[(l, k)]`` the ``m_k x m_l`` matrix ``P_{A^(l)|A^(k)}``
    (0-based storage, ``l > k``).
    """

    marginals: tuple[NDArray[np.float64], ...]
    Ck: tuple[NDArray[np.float64], ...]
    base: tuple[NDArray[np.float64], ...]
    conditionals: dict

    @property
    def steps(self) -> int:
        return len(self.Ck)

    @classmethod
    def from_law(
        cls,
        points: ArrayLike,
        probs: ArrayLike,
        cellmaps: Sequence[CellMap],
        g: ArrayLike,
        marginals: Sequence[ArrayLike] | None = None,
    ) -> "RakingDesign":
        """Build the design for a discrete law.

        ``cellmaps[k]`` is the partition raked at step ``k+1`` and ``g`` the
        target function values (``len(points)`` or ``len(points) x d``).
        ``marginals`` overrides the cell probabilities used in ``C_k``; by
        default they come from ``probs``. Conditional quantities always come
        from ``probs``, so passing an empirical law gives the plug-in design.
        """
        pts = np.asarray(points, dtype=float).ravel()
        pr = np.asarray(probs, dtype=float).ravel()
        gv = np.asarray(g, dtype=float)
        if gv.ndim == 1:
            gv = gv[:, None]
        if pr.size != pts.size or gv.shape[0] != pr.size:
            raise InputError("points, probs and g must have one entry per support point")
        labs = [cm.labels(pts) for cm in cellmaps]
        sizes = [cm.size for cm in cellmaps]
        margs, Cks, bases = [], [], []
        for k, lab in enumerate(labs):
            mk = np.bincount(lab, weights=pr, minlength=sizes[k])
            if np.any(mk <= 0):
                raise RakingDegenerateError(f"step {k + 1} has a cell of probability zero")
            sums = np.zeros((sizes[k], gv.shape[1]))
            np.add.at(sums, lab, pr[:, None] * gv)
            bases.append(sums / mk[:, None])
            used = mk if marginals is None else np.asarray(marginals[k], dtype=float).ravel()
            if used.size != sizes[k]:
                raise InputError(f"marginal for step {k + 1} has wrong size")
            margs.append(used)
            Cks.append(marginal_cov(used))
        conds = {}
        for k in range(len(labs)):
            for l in range(k + 1, len(labs)):
                joint = np.zeros((sizes[k], sizes[l]))
                np.add.at(joint, (labs[k], labs[l]), pr)
                conds[(l, k)] = joint / joint.sum(axis=1, keepdims=True)
        return cls(tuple(margs), tuple(Cks), tuple(bases), conds)


def phi_matrix(design: RakingDesign, k: int, N: int) -> NDArray[np.float64]:
    """``Phi_k^(N)`` (shape ``m_k x d``) for ``1 <= k <= N <= design.steps``."""
    if not 1 <= k <= N <= design.steps:
        raise InputError(f"need 1 <= k <= N <= {design.steps}, got k={k}, N={N}")
    return _phis(design, N)[k - 1]


def _phis(design: RakingDesign, N: int) -> list[NDArray[np.float64]]:
    phis: list = [None] * N
    for k in range(N - 1, -1, -1):
        acc = design.base[k].copy()
        for l in range(k + 1, N):
            cond = design.conditionals[(l, k)]
            if cond.shape[1] != phis[l].shape[0]:
                raise InputError("inconsistent partition sizes in design")
            acc -= cond @ phis[l]
        phis[k] = acc
    return phis


def raked_covariance(base, design: RakingDesign, N: int):
    """``base - sum_{k<=N} Phi_k^t C_k Phi_k``; scalar in, scalar out."""
    if not 0 <= N <= design.steps:
        raise InputError(f"N={N} outside 0..{design.steps}")
    b = np.asarray(base, dtype=float)
    scalar = b.ndim == 0
    out = np.atleast_2d(b).copy()
    for phi, ck in zip(_phis(design, N), design.Ck):
        if phi.shape[1] != out.shape[0]:
            raise InputError("base and design disagree on dimension")
        out -= phi.T @ ck @ phi
    out = (out + out.T) / 2.0
    return float(out[0, 0]) if scalar else out


def two_partition_formulas(
    pA: float,
    pB: float,
    pAB: float,
    mean_A: float,
    mean_Ac: float,
    mean_B: float,
    mean_Bc: float,
    sigma2: float,
    mean: float,
) -> tuple[float, float, float]:
    """Closed forms ``(sigma1^2, sigma2^2, sigma_inf^2)`` for raking ``{A, A^c}`` then ``{B, B^c}``.

    ``sigma2^2`` includes the cross term from ``P(B|A) - P(B|A^c)``, which
    vanishes when ``A`` and ``B`` are independent. ``sigma_inf^2`` is the
    variance at the fixed point of the alternating schedule.
    """
    for p in (pA, pB):
        if not 0 < p < 1:
            raise InputError("pA and pB must lie in (0, 1)")
    if not max(0.0, pA + pB - 1.0) - 1e-15 <= pAB <= min(pA, pB) + 1e-15:
        raise InputError("pAB is not compatible with pA and pB")
    qA, qB = 1.0 - pA, 1.0 - pB
    dA = mean_A - mean_Ac
    dB = mean_B - mean_Bc
    cov_AB = pAB - pA * pB
    s1 = sigma2 - pA * qA * dA**2
    lift = cov_AB / (pA * qA)  # P(B|A) - P(B|A^c)
    s2 = sigma2 - pB * qB * dB**2 - pA * qA * (dA - lift * dB) ** 2
    denom = pA * pB * qA * qB - cov_AB**2
    if math.isclose(denom, 0.0, abs_tol=1e-15):
        raise DegenerateDesignError("partitions are collinear; sigma_inf undefined")
    DA = mean_A - mean
    DB = mean_B - mean
    num = pA * pB * (pA * DA**2 + pB * DB**2 - pA * pB * (DA - DB) ** 2 - 2 * pAB * DA * DB)
    sinf = sigma2 - num / denom
    return s1, s2, sinf
