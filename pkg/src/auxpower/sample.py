"""Events over the real line, cell maps, and weighted samples.

An ``Event`` is a finite union of closed intervals (``None`` ends are
unbounded). A ``CellMap`` turns a list of disjoint events into a partition,
optionally completed by a catch-all last cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InputError


@dataclass(frozen=True)
class Event:
    intervals: tuple[tuple[float | None, float | None], ...]

    @classmethod
    def of(cls, *intervals: Sequence[float | None]) -> "Event":
        out = []
        for iv in intervals:
            lo, hi = iv
            if lo is not None and hi is not None and lo > hi:
                raise InputError(f"empty interval [{lo}, {hi}]")
            out.append((None if lo is None else float(lo), None if hi is None else float(hi)))
        return cls(tuple(out))

    @classmethod
    def at_most(cls, x: float) -> "Event":
        return cls.of((None, x))

    def contains(self, x: ArrayLike) -> NDArray[np.bool_]:
        x = np.asarray(x, dtype=float)
        hit = np.zeros(x.shape, dtype=bool)
        for lo, hi in self.intervals:
            m = np.ones(x.shape, dtype=bool)
            if lo is not None:
                m &= x >= lo
            if hi is not None:
                m &= x <= hi
            hit |= m
        return hit

    def to_json(self) -> list:
        return [list(iv) for iv in self.intervals]

    @classmethod
    def from_json(cls, obj) -> "Event":
        return cls.of(*obj)


@dataclass(frozen=True)
class CellMap:
    """Partition of the line into ``len(events) (+1 if rest)`` cells."""

    events: tuple[Event, ...]
    rest: bool = True

    @classmethod
    def two_cell(cls, event: Event) -> "CellMap":
        """The partition ``{event, complement}``."""
        return cls((event,), rest=True)

    @property
    def size(self) -> int:
        return len(self.events) + int(self.rest)

    def labels(self, x: ArrayLike) -> NDArray[np.intp]:
        """Cell index of each point; raises if the cells overlap or miss a point."""
        x = np.asarray(x, dtype=float).ravel()
        hits = np.stack([e.contains(x) for e in self.events]) if self.events else np.zeros((0, x.size), bool)
        count = hits.sum(axis=0)
        if np.any(count > 1):
            bad = x[count > 1][0]
            raise InputError(f"cells overlap at {bad}")
        lab = np.argmax(hits, axis=0) if self.events else np.zeros(x.size, dtype=np.intp)
        lab = lab.astype(np.intp)
        outside = count == 0
        if np.any(outside):
            if not self.rest:
                raise InputError(f"point {x[outside][0]} lies in no cell")
            lab[outside] = len(self.events)
        return lab

    def to_json(self) -> dict:
        return {"cells": [e.to_json() for e in self.events], "rest": self.rest}

    @classmethod
    def from_json(cls, obj) -> "CellMap":
        if isinstance(obj, dict):
            return cls(tuple(Event.from_json(c) for c in obj["cells"]), bool(obj.get("rest", True)))
        # bare list of interval lists: one event, complement as second cell
        return cls.two_cell(Event.from_json(obj))


@dataclass(frozen=True)
class WeightedSample:
    """Points with nonnegative weights summing to one, from a sample of size ``n``.

    The plain empirical measure has weight ``1/n`` on each observation;
    equal observations may be merged into one point carrying their summed
    weight without changing any statistic in this package.
    """

    points: NDArray[np.float64]
    weights: NDArray[np.float64]
    n: int

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if pts.shape != w.shape:
            raise InputError("points and weights differ in length")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise InputError("weights must be finite and nonnegative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise InputError(f"weights sum to {w.sum()!r}, not 1")
        if self.n < 1:
            raise InputError("sample size must be >= 1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, sample: ArrayLike) -> "WeightedSample":
        x = np.asarray(sample, dtype=float).ravel()
        if x.size == 0:
            raise InputError("empty sample")
        return cls(x, np.full(x.size, 1.0 / x.size), x.size)

    @classmethod
    def from_counts(cls, points: ArrayLike, counts: ArrayLike) -> "WeightedSample":
        c = np.asarray(counts, dtype=float)
        n = int(round(c.sum()))
        if n < 1:
            raise InputError("zero total count")
        return cls(np.asarray(points, dtype=float), c / c.sum(), n)

    def expect(self, values: ArrayLike) -> float:
        return float(np.dot(self.weights, values))

    def mean(self) -> float:
        return self.expect(self.points)


def as_weighted(sample) -> WeightedSample:
    """Accept a raw 1-d sample or an existing ``WeightedSample``."""
    if isinstance(sample, WeightedSample):
        return sample
    return WeightedSample.uniform(sample)
