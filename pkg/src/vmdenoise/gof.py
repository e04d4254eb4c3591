"""Empirical distribution functions and the Cramer-von Mises (CVM) statistic.

The CVM statistic measures how closely a finite sample follows a reference
distribution by comparing the sample's order statistics against the reference
CDF.  Together with a threshold it forms a binary goodness-of-fit decision:
close-fit (the sample is compatible with the reference) or no-fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np


def _finite_1d(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.size == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    return arr


@dataclass(frozen=True)
class Edf:
    """Empirical distribution function: evaluate(z) = (#samples <= z) / n.

    Right-continuous step function; 0 below the smallest sample, 1 at and
    above the largest.  Ties contribute their full multiplicity.
    """

    sorted_samples: np.ndarray

    def __post_init__(self) -> None:
        arr = _finite_1d(self.sorted_samples, "sorted_samples")
        if np.any(np.diff(arr) < 0):
            raise ValueError("sorted_samples must be ascending")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "sorted_samples", arr)

    @property
    def n(self) -> int:
        return self.sorted_samples.size

    def evaluate(self, z):
        z = np.asarray(z, dtype=np.float64)
        frac = np.searchsorted(self.sorted_samples, z, side="right") / self.n
        return float(frac) if frac.ndim == 0 else frac


@dataclass(frozen=True)
class StepCdf:
    """Piecewise-constant right-continuous CDF on an explicit grid.

    evaluate(z) is values[i] for the largest grid[i] <= z, and 0 for
    z < grid[0].
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        grid = _finite_1d(self.grid, "grid")
        values = _finite_1d(self.values, "values")
        if grid.size != values.size:
            raise ValueError("grid and values must have equal length")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly ascending")
        if np.any(np.diff(values) < 0):
            raise ValueError("values must be nondecreasing")
        if values[0] < 0.0 or values[-1] > 1.0:
            raise ValueError("values must lie within [0, 1]")
        grid, values = grid.copy(), values.copy()
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def evaluate(self, z):
        z = np.asarray(z, dtype=np.float64)
        idx = np.searchsorted(self.grid, z, side="right") - 1
        out = np.where(idx >= 0, self.values[np.maximum(idx, 0)], 0.0)
        return float(out) if out.ndim == 0 else out


# A reference distribution is anything with a CDF: an Edf, a StepCdf, or a
# plain callable mapping sample values to CDF values (e.g. an analytic CDF).
CdfReference = Union[Edf, StepCdf, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class CvmStatistic:
    """CVM distance between a sample of size n and a reference CDF."""

    delta: float
    n: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.delta):
            raise ValueError("delta must be finite")
        # delta >= 1/(12n) holds by construction of the squared form
        if self.delta < 1.0 / (12.0 * self.n) - 1e-15:
            raise ValueError("delta below the attainable minimum 1/(12n)")


class FitDecision(Enum):
    CLOSE_FIT = "close_fit"
    NO_FIT = "no_fit"


def edf_of(samples) -> Edf:
    """Build the empirical distribution function of a sample."""
    arr = _finite_1d(samples, "samples")
    return Edf(np.sort(arr))


def _reference_values(reference: CdfReference, z: np.ndarray) -> np.ndarray:
    if hasattr(reference, "evaluate"):
        return np.asarray(reference.evaluate(z), dtype=np.float64)
    return np.asarray(reference(z), dtype=np.float64)


def _cvm_rows(rows: np.ndarray, reference: CdfReference) -> np.ndarray:
    """CVM statistic of each row of a 2-D array against one reference CDF.

    Shared kernel for the single-sample, calibration-window, and
    sliding-window paths so they all compute the identical statistic.
    """
    rows = np.asarray(rows, dtype=np.float64)
    length = rows.shape[-1]
    z = np.sort(rows, axis=-1)
    e0 = _reference_values(reference, z.reshape(-1)).reshape(z.shape)
    t = np.arange(1, length + 1, dtype=np.float64)
    quantiles = (2.0 * t - 1.0) / (2.0 * length)
    return 1.0 / (12.0 * length) + ((e0 - quantiles) ** 2).sum(axis=-1)


def cvm_distance(data, reference: CdfReference) -> CvmStatistic:
    """Cramer-von Mises statistic of ``data`` against a reference CDF.

    Uses the squared-discrepancy form

        delta = 1/(12 L) + sum_t (E0(z'(t)) - (2t - 1)/(2 L))^2

    with z' the ascending sort of ``data``, so delta >= 1/(12 L) always and
    the result is invariant under permutations of ``data``.

    Parameters
    ----------
    data : array_like
        Sample of length L >= 2.
    reference : Edf, StepCdf, or callable
        Reference CDF evaluated at the sorted sample values.
    """
    arr = _finite_1d(data, "data")
    if arr.size < 2:
        raise ValueError("data must contain at least 2 samples")
    delta = float(_cvm_rows(arr[np.newaxis, :], reference)[0])
    return CvmStatistic(delta=delta, n=arr.size)


def gof_decide(statistic: Union[CvmStatistic, float], threshold: float) -> FitDecision:
    """Binary goodness-of-fit decision: close-fit iff delta <= threshold."""
    if threshold < 0.0:
        raise ValueError("threshold must be nonnegative")
    delta = statistic.delta if isinstance(statistic, CvmStatistic) else float(statistic)
    return FitDecision.CLOSE_FIT if delta <= threshold else FitDecision.NO_FIT
