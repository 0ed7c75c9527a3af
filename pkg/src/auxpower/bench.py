"""Monte-Carlo power harness for the classic and auxiliary tests.

Replication ``r`` at sample size ``n`` draws from stream ``(n, r)`` of the
configured seed (see ``auxpower.gauss``), so every number in a report is a
pure function of the config. Workers only change who computes which
replication; results are reassembled in replication order.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .chisq import (
    ChiAuxEstimate,
    PartitionSpec,
    aux_chi2_statistic,
    build_sigma0_sigma1,
    chi2_threshold,
    _require_valid,
    s_transform,
    theorem2_rate,
)
from .condmean import CondMeanInfo, condmean_limits, theta_star_scalar, theta_star_vector
from .errors import AuxNotInformativeError, AuxPowerError, InputError
from .gauss import make_rng
from .linalg import DEFAULT_TOL
from .raking import RakingDesign, RakingPartition, RakingSchedule, rake, raked_covariance
from .sample import CellMap, Event, WeightedSample
from .ztest import theorem1_rate, z_threshold

TEST_KINDS = ("z", "z-aux-raking", "z-aux-condmean", "chisq", "chisq-aux-raking", "chisq-aux-condmean")
MODES = ("plugin", "oracle")
VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteDist:
    """Finite law on the real line: strictly increasing atoms with positive probabilities."""

    atoms: NDArray[np.float64]
    probs: NDArray[np.float64]

    def __post_init__(self):
        a = np.asarray(self.atoms, dtype=float).ravel()
        p = np.asarray(self.probs, dtype=float).ravel()
        if a.size == 0 or a.shape != p.shape:
            raise InputError("atoms and probs must be nonempty and of equal length")
        if not np.all(np.isfinite(a)) or np.any(np.diff(a) <= 0):
            raise InputError("atoms must be finite and strictly increasing")
        if np.any(p <= 0) or abs(p.sum() - 1.0) > 1e-12:
            raise InputError("probs must be positive and sum to 1")
        object.__setattr__(self, "atoms", a)
        object.__setattr__(self, "probs", p)
        cum = np.cumsum(p)
        cum[-1] = 1.0
        object.__setattr__(self, "_cum", cum)

    @property
    def mean(self) -> float:
        return float(self.probs @ self.atoms)

    @property
    def var(self) -> float:
        return float(self.probs @ (self.atoms - self.mean) ** 2)

    def prob(self, event: Event) -> float:
        return float(self.probs[event.contains(self.atoms)].sum())

    def cell_probs(self, cells: CellMap) -> NDArray[np.float64]:
        return np.bincount(cells.labels(self.atoms), weights=self.probs, minlength=cells.size)

    def cond_mean(self, event: Event) -> float:
        m = event.contains(self.atoms)
        return float(self.probs[m] @ self.atoms[m]) / float(self.probs[m].sum())

    def draw_indices(self, n: int, rng: np.random.Generator) -> NDArray[np.intp]:
        """Inverse-CDF draws of atom indices from ``n`` uniforms."""
        return np.searchsorted(self._cum, rng.random(n), side="right")

    def draw_counts(self, n: int, rng: np.random.Generator) -> NDArray[np.int64]:
        return np.bincount(self.draw_indices(n, rng), minlength=self.atoms.size)

    def to_json(self) -> dict:
        return {"atoms": self.atoms.tolist(), "probs": self.probs.tolist()}

    def __eq__(self, other):
        return (
            isinstance(other, DiscreteDist)
            and np.array_equal(self.atoms, other.atoms)
            and np.array_equal(self.probs, other.probs)
        )


def reference_distribution() -> DiscreteDist:
    """Eight equally likely atoms ``+-2/3 +- sqrt(2)/12`` and ``+-1/3 +- sqrt(2)/12``.

    Mean 0, variance 7/24, ``P(X <= 0) = 1/2``, ``E[X | X <= 0] = -1/2``,
    ``P(|X| <= 1/2) = 1/2`` with conditional mean 0 and variance 1/8.
    """
    d = math.sqrt(2.0) / 12.0
    centers = (-2 / 3, -1 / 3, 1 / 3, 2 / 3)
    atoms = sorted(c + s * d for c in centers for s in (-1.0, 1.0))
    return DiscreteDist(np.array(atoms), np.full(8, 1.0 / 8.0))


def draw_sample(dist: DiscreteDist, n: int, seed: int) -> NDArray[np.float64]:
    """``n`` i.i.d. draws from stream ``(n,)`` of ``seed``."""
    if n < 0:
        raise InputError("n must be >= 0")
    return dist.atoms[dist.draw_indices(n, make_rng(seed, n))]


# -- configuration ----------------------------------------------------------

@dataclass(frozen=True)
class RakingStep:
    """A partition to rake on; ``targets=None`` means the true cell probabilities."""

    cells: CellMap
    targets: tuple[float, ...] | None = None


@dataclass(frozen=True)
class BenchConfig:
    """One Monte-Carlo experiment; field names match the JSON config keys."""

    test: str
    n: tuple[int, ...]
    replications: int
    alpha: float | None = 0.05
    t: tuple[float, ...] | None = None
    seed: int = 0
    distribution: DiscreteDist = field(default_factory=reference_distribution)
    mu: float = 0.0
    p0: tuple[float, ...] | None = None
    cells: CellMap | None = None
    schedule: tuple[RakingStep, ...] = ()
    steps: int | None = None
    condition: Event | None = None
    cond_value: float | None = None
    mode: str = "plugin"
    workers: int = 1

    def __post_init__(self):
        if self.test not in TEST_KINDS:
            raise InputError(f"unknown test {self.test!r}; expected one of {TEST_KINDS}")
        object.__setattr__(self, "n", tuple(int(k) for k in np.atleast_1d(self.n)))
        if not self.n or any(k < 2 for k in self.n):
            raise InputError("every sample size must be >= 2")
        if self.replications < 1:
            raise InputError("replications must be >= 1")
        if self.t is not None:
            t = tuple(float(v) for v in np.atleast_1d(self.t))
            if len(t) == 1:
                t = t * len(self.n)
            if len(t) != len(self.n):
                raise InputError("give one threshold or one per sample size")
            if any(not v > 0 for v in t):
                raise InputError("thresholds must be positive")
            object.__setattr__(self, "t", t)
        elif self.alpha is None or not 0 < self.alpha < 1:
            raise InputError("need alpha in (0, 1) or explicit thresholds t")
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {MODES}")
        if self.workers < 1:
            raise InputError("workers must be >= 1")
        if self.test.startswith("chisq") and (self.p0 is None or self.cells is None):
            raise InputError("chi-square tests need p0 and cells")
        if self.test.endswith("raking"):
            if not self.schedule:
                raise InputError("raking needs a schedule")
            if self.steps is not None and self.steps < 1:
                raise InputError("steps must be >= 1")
        if self.test.endswith("condmean") and self.condition is None:
            raise InputError("conditional-mean tests need a condition event")

    @property
    def is_chisq(self) -> bool:
        return self.test.startswith("chisq")

    @property
    def aux(self) -> str | None:
        if self.test.endswith("raking"):
            return "raking"
        if self.test.endswith("condmean"):
            return "condmean"
        return None

    def thresholds(self) -> tuple[float, ...]:
        if self.t is not None:
            return self.t
        if self.is_chisq:
            thr = chi2_threshold(self.alpha, PartitionSpec(self.p0))
        else:
            thr = z_threshold(self.alpha)
        return (thr,) * len(self.n)

    # JSON round-trip
    def to_json(self) -> dict:
        out = {
            "test": self.test,
            "n": list(self.n),
            "replications": self.replications,
            "alpha": self.alpha,
            "t": None if self.t is None else list(self.t),
            "seed": self.seed,
            "distribution": self.distribution.to_json(),
            "mu": self.mu,
            "p0": None if self.p0 is None else list(self.p0),
            "cells": None if self.cells is None else self.cells.to_json(),
            "schedule": [
                {"cells": s.cells.to_json(), "targets": None if s.targets is None else list(s.targets)}
                for s in self.schedule
            ],
            "steps": self.steps,
            "condition": None if self.condition is None else self.condition.to_json(),
            "cond_value": self.cond_value,
            "mode": self.mode,
            "workers": self.workers,
        }
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "BenchConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(obj) - known
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(obj)
        dist = kw.pop("distribution", "reference")
        if dist == "reference" or dist is None:
            kw["distribution"] = reference_distribution()
        else:
            kw["distribution"] = DiscreteDist(dist["atoms"], dist["probs"])
        if kw.get("p0") is not None:
            kw["p0"] = tuple(float(v) for v in kw["p0"])
        if kw.get("cells") is not None:
            kw["cells"] = CellMap.from_json(kw["cells"])
        kw["schedule"] = tuple(
            RakingStep(
                CellMap.from_json(s["cells"]),
                None if s.get("targets") is None else tuple(float(v) for v in s["targets"]),
            )
            for s in kw.get("schedule") or ()
        )
        if kw.get("condition") is not None:
            kw["condition"] = Event.from_json(kw["condition"])
        if kw.get("t") is not None:
            kw["t"] = tuple(np.atleast_1d(kw["t"]).astype(float))
        kw["n"] = tuple(np.atleast_1d(kw["n"]).astype(int))
        return cls(**kw)


A1 = Event.of((-0.5, 0.0), (0.5, 1.0))
B_NONPOS = Event.at_most(0.0)
C_CENTER = Event.of((-0.5, 0.5))


def preset(name: str, **overrides) -> BenchConfig:
    """Ready-made experiments on the reference distribution.

    ``z-raking`` and ``chisq-raking`` rake on ``[-.5, 0] u [.5, 1]`` then
    ``X <= 0`` (two steps); ``z-condmean`` and ``chisq-condmean`` use
    ``E[X | -.5 <= X <= .5] = 0``. Z setups test ``mu = 0.05``; chi-square
    setups test ``P0(X <= .5) = 5/8`` (raking) and ``P0(X <= 0) = 3/8``
    (conditional mean). Suffix ``-h0`` switches to the true null.
    """
    h0 = name.endswith("-h0")
    base = name[:-3] if h0 else name
    sched = (RakingStep(CellMap.two_cell(A1)), RakingStep(CellMap.two_cell(B_NONPOS)))
    common = dict(n=(100, 200, 500, 1000), replications=10_000)
    if base == "z-raking":
        cfg = dict(test="z-aux-raking", mu=0.0 if h0 else 0.05, schedule=sched, steps=2)
    elif base == "z-condmean":
        cfg = dict(test="z-aux-condmean", mu=0.0 if h0 else 0.05, condition=C_CENTER, cond_value=0.0)
    elif base == "chisq-raking":
        cfg = dict(
            test="chisq-aux-raking",
            cells=CellMap.two_cell(Event.at_most(0.5)),
            p0=(0.75, 0.25) if h0 else (0.625, 0.375),
            schedule=sched,
            steps=2,
        )
    elif base == "chisq-condmean":
        cfg = dict(
            test="chisq-aux-condmean",
            cells=CellMap.two_cell(B_NONPOS),
            p0=(0.5, 0.5) if h0 else (0.375, 0.625),
            condition=C_CENTER,
            cond_value=0.0,
        )
    else:
        raise InputError(f"unknown preset {name!r}")
    common.update(cfg)
    common.update(overrides)
    return BenchConfig(**common)


PRESETS = tuple(f"{b}{s}" for b in ("z-raking", "z-condmean", "chisq-raking", "chisq-condmean") for s in ("", "-h0"))


# -- experiment -------------------------------------------------------------

class Experiment:
    """Statistic evaluator for one config; built once per worker chunk."""

    def __init__(self, cfg: BenchConfig):
        self.cfg = cfg
        dist = cfg.distribution
        self.dist = dist
        self.spec = PartitionSpec(np.array(cfg.p0), cells=cfg.cells) if cfg.is_chisq else None
        self.schedule = None
        self.info = None
        if cfg.aux == "raking":
            parts = [
                RakingPartition(s.cells, dist.cell_probs(s.cells) if s.targets is None else np.array(s.targets))
                for s in cfg.schedule
            ]
            steps = cfg.steps or len(parts)
            self.schedule = RakingSchedule(tuple(parts[i % len(parts)] for i in range(steps)))
            self.cellmaps = [p.cells for p in self.schedule.partitions]
            self.targets = [p.targets for p in self.schedule.partitions]
        elif cfg.aux == "condmean":
            value = dist.cond_mean(cfg.condition) if cfg.cond_value is None else cfg.cond_value
            self.info = CondMeanInfo(cfg.condition, float(value))
        self._oracle = None
        self._s_oracle = None

    # exact limit quantities under the configured law
    def oracle(self) -> dict:
        if self._oracle is not None:
            return self._oracle
        d, cfg = self.dist, self.cfg
        out = {"sigma2": d.var}
        if cfg.is_chisq:
            p = d.cell_probs(cfg.cells)
            out["p"] = p
            out["sigma1"] = build_sigma0_sigma1(p, self.spec)[1]
        if cfg.aux == "raking":
            g = self.spec.f(d.atoms) if cfg.is_chisq else d.atoms
            design = RakingDesign.from_law(d.atoms, d.probs, self.cellmaps, g, marginals=self.targets)
            base = out["sigma1"] if cfg.is_chisq else out["sigma2"]
            out["aux"] = raked_covariance(base, design, len(self.schedule))
        elif cfg.aux == "condmean":
            lim = condmean_limits(d.atoms, d.probs, cfg.condition, self.spec)
            out["limits"] = lim
            out["aux"] = lim.sigma_hat if cfg.is_chisq else lim.sigma_hat2
        else:
            out["aux"] = out.get("sigma1", out["sigma2"])
        self._oracle = out
        return out

    def rate(self) -> float:
        """Coefficient ``c`` of the predicted ``x_n ~ c n``."""
        o = self.oracle()
        if self.cfg.aux is None:
            return 0.0
        try:
            if self.cfg.is_chisq:
                return theorem2_rate(o["p"], self.spec, o["aux"], o["sigma1"])
            sigma = math.sqrt(o["sigma2"])
            sigma_hat = min(math.sqrt(max(o["aux"], 0.0)), sigma)
            if sigma_hat <= 0:
                return math.inf
            return theorem1_rate(self.dist.mean, self.cfg.mu, sigma, sigma_hat)
        except (AuxNotInformativeError, AuxPowerError):
            return math.nan

    def sample(self, n: int, r: int) -> WeightedSample:
        counts = self.dist.draw_counts(n, make_rng(self.cfg.seed, n, r))
        keep = counts > 0
        return WeightedSample.from_counts(self.dist.atoms[keep], counts[keep])

    def statistics(self, s: WeightedSample) -> tuple[float, float]:
        """``(classic, auxiliary)`` statistics on one sample."""
        if self.cfg.is_chisq:
            return self._chisq(s)
        return self._z(s)

    def _z(self, s: WeightedSample) -> tuple[float, float]:
        cfg, n = self.cfg, s.n
        oracle = cfg.mode == "oracle"
        xbar = s.mean()
        var_n = float(s.weights @ (s.points - xbar) ** 2)
        sd = math.sqrt(self.oracle()["sigma2"]) if oracle else math.sqrt(var_n * n / (n - 1))
        if not sd > 0:
            raise InputError("sample has zero variance")
        classic = math.sqrt(n) * (xbar - cfg.mu) / sd
        if cfg.aux is None:
            return classic, classic
        if cfg.aux == "condmean":
            est = theta_star_scalar(s, self.info, self.oracle()["limits"] if oracle else None)
            return classic, math.sqrt(n) * (est.value - cfg.mu) / est.sigma_hat
        raked = rake(s, self.schedule)
        if oracle:
            v = self.oracle()["aux"]
        else:
            design = RakingDesign.from_law(s.points, s.weights, self.cellmaps, s.points, marginals=self.targets)
            v = max(raked_covariance(var_n, design, len(self.schedule)), VARIANCE_FLOOR * var_n)
        return classic, math.sqrt(n) * (raked.mean() - cfg.mu) / math.sqrt(v)

    def _chisq(self, s: WeightedSample) -> tuple[float, float]:
        cfg, spec, n = self.cfg, self.spec, s.n
        oracle = cfg.mode == "oracle"
        f = spec.f(s.points)
        freqs = (s.weights @ f) * spec.sqrt_p0
        classic = float(n * np.sum((freqs - spec.p0) ** 2 / spec.p0))
        if cfg.aux is None:
            return classic, classic
        if cfg.aux == "condmean":
            if oracle:
                est = theta_star_vector(s, self.info, spec, self.oracle()["limits"])
                return classic, self._oracle_chi2(est.p_hat, n)
            est = theta_star_vector(s, self.info, spec)
            return classic, aux_chi2_statistic(est, spec)
        raked = rake(s, self.schedule)
        p_hat = raked.weights @ f
        if oracle:
            return classic, self._oracle_chi2(p_hat, n)
        sigma1 = build_sigma0_sigma1(freqs / freqs.sum(), spec)[1]
        design = RakingDesign.from_law(s.points, s.weights, self.cellmaps, f, marginals=self.targets)
        sigma_hat = raked_covariance(sigma1, design, len(self.schedule))
        est = ChiAuxEstimate(p_hat, sigma_hat, sigma1, n)
        return classic, aux_chi2_statistic(est, spec)

    def _oracle_chi2(self, p_hat, n: int) -> float:
        """Auxiliary statistic with the exact (constant) transform, validated once."""
        if self._s_oracle is None:
            o = self.oracle()
            _require_valid(o["aux"], o["sigma1"], self.spec.M, DEFAULT_TOL)
            self._s_oracle = s_transform(o["aux"], o["sigma1"])
        z = math.sqrt(n) * (p_hat - self.spec.sqrt_p0) @ self._s_oracle
        return float(z @ z)


class BenchAbortError(AuxPowerError):
    """A replication failed (e.g. auxiliary validation); the run stops."""

    def __init__(self, n: int, replication: int, cause: Exception):
        super().__init__(f"n={n}, replication {replication}: {type(cause).__name__}: {cause}")
        self.n = n
        self.replication = replication
        self.cause = cause


@dataclass(frozen=True)
class _Chunk:
    stats: NDArray[np.float64]  # shape (k, 2)
    error: tuple[int, str, str] | None  # (replication, kind, message)


def _run_chunk(cfg: BenchConfig, n: int, start: int, stop: int) -> _Chunk:
    exp = Experiment(cfg)
    out = np.empty((stop - start, 2))
    for i, r in enumerate(range(start, stop)):
        try:
            out[i] = exp.statistics(exp.sample(n, r))
        except AuxPowerError as e:
            return _Chunk(out[:i], (r, type(e).__name__, str(e)))
    return _Chunk(out, None)


def _error_from(kind: str, message: str) -> Exception:
    from . import errors

    cls = getattr(errors, kind, AuxPowerError)
    try:
        return cls(message)
    except TypeError:
        return AuxPowerError(message)


def simulate(cfg: BenchConfig, n: int, pool: ProcessPoolExecutor | None = None) -> NDArray[np.float64]:
    """Statistics of every replication at size ``n``, shape ``(R, 2)`` (classic, aux).

    Raises ``BenchAbortError`` naming the first failing replication.
    """
    R = cfg.replications
    if pool is None or cfg.workers == 1:
        chunks = [_run_chunk(cfg, n, 0, R)]
    else:
        size = max(1, math.ceil(R / (cfg.workers * 4)))
        bounds = [(a, min(a + size, R)) for a in range(0, R, size)]
        futures = [pool.submit(_run_chunk, cfg, n, a, b) for a, b in bounds]
        chunks = [f.result() for f in futures]
    parts = []
    for ch in chunks:
        parts.append(ch.stats)
        if ch.error is not None:
            r, kind, msg = ch.error
            raise BenchAbortError(n, r, _error_from(kind, msg))
    return np.concatenate(parts, axis=0)


# -- reports ----------------------------------------------------------------

POWER_HEADER = (
    "n",
    "t",
    "power_classic",
    "power_aux",
    "stderr_classic",
    "stderr_aux",
    "accept_classic",
    "accept_aux",
    "beta_ratio",
    "predicted_xn",
)


@dataclass(frozen=True)
class PowerRow:
    n: int
    t: float
    power_classic: float
    power_aux: float
    stderr_classic: float
    stderr_aux: float
    accept_classic: float
    accept_aux: float
    beta_ratio: float  # accept_classic / accept_aux
    predicted_xn: float
    reject_both: float  # share of replications where both tests reject
    replications: int

    def joint_stderr(self) -> float:
        """Standard error of ``power_aux - power_classic`` (paired samples)."""
        a, c, b = self.power_aux, self.power_classic, self.reject_both
        var = a + c - 2 * b - (a - c) ** 2
        return math.sqrt(max(var, 0.0) / self.replications)

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, k) for k in POWER_HEADER)


@dataclass(frozen=True)
class PowerReport:
    test: str
    rows: tuple[PowerRow, ...]

    def row(self, n: int) -> PowerRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)

    def to_csv(self) -> str:
        return rows_to_csv(POWER_HEADER, (r.as_tuple() for r in self.rows))


def fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_text(path: str | os.PathLike, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def summarize(cfg: BenchConfig, n: int, t: float, stats: NDArray[np.float64], rate: float) -> PowerRow:
    """Rejection rates at threshold ``t`` (``|Z| > t`` or ``chi2 > t``)."""
    vals = stats if cfg.is_chisq else np.abs(stats)
    rej = vals > t
    R = stats.shape[0]
    pc, pa = rej[:, 0].mean(), rej[:, 1].mean()
    both = float(np.mean(rej[:, 0] & rej[:, 1]))
    ac, aa = 1.0 - pc, 1.0 - pa
    if aa > 0:
        ratio = ac / aa
    else:
        ratio = math.inf if ac > 0 else math.nan
    return PowerRow(
        n=n,
        t=float(t),
        power_classic=float(pc),
        power_aux=float(pa),
        stderr_classic=math.sqrt(pc * (1 - pc) / R),
        stderr_aux=math.sqrt(pa * (1 - pa) / R),
        accept_classic=float(ac),
        accept_aux=float(aa),
        beta_ratio=float(ratio),
        predicted_xn=rate * n,
        reject_both=both,
        replications=R,
    )


def run_all(cfg: BenchConfig) -> dict[int, NDArray[np.float64]]:
    """Statistics for every configured ``n``."""
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return {n: simulate(cfg, n, pool) for n in cfg.n}
    return {n: simulate(cfg, n) for n in cfg.n}


def estimate_power(cfg: BenchConfig, stats: dict[int, NDArray[np.float64]] | None = None) -> PowerReport:
    """Monte-Carlo power of the classic and auxiliary tests at each ``n``."""
    stats = run_all(cfg) if stats is None else stats
    rate = Experiment(cfg).rate()
    rows = tuple(summarize(cfg, n, t, stats[n], rate) for n, t in zip(cfg.n, cfg.thresholds()))
    return PowerReport(cfg.test, rows)


def gain_table(cfg: BenchConfig, grid: Sequence[tuple[int, float]]) -> PowerReport:
    """Rows for ``(n, t)`` pairs; several thresholds may share one ``n``.

    ``beta_ratio`` is ``P(classic <= t) / P(aux <= t)``.
    """
    sizes = tuple(dict.fromkeys(n for n, _ in grid))
    stats = run_all(replace(cfg, n=sizes, t=None, alpha=cfg.alpha or 0.05))
    rate = Experiment(cfg).rate()
    rows = tuple(summarize(cfg, n, t, stats[n], rate) for n, t in grid)
    return PowerReport(cfg.test, rows)


ECDF_HEADER = ("value", "ecdf")


def ecdf_rows(draws: ArrayLike) -> list[tuple[float, float]]:
    x = np.sort(np.asarray(draws, dtype=float).ravel())
    R = x.size
    return [(float(v), (i + 1) / R) for i, v in enumerate(x)]


def ecdf_csv(draws: ArrayLike) -> str:
    return rows_to_csv(ECDF_HEADER, ecdf_rows(draws))


def ecdf_export(draws: ArrayLike, path: str | os.PathLike) -> None:
    """Write sorted draws with their empirical CDF ``rank / R``."""
    write_text(path, ecdf_csv(draws))
