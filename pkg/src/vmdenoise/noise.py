"""Empirical noise model and threshold calibration from rejected modes.

The rejected (noise-only) modes supply everything needed to test the
remaining modes: an empirical noise CDF, built by ensemble-averaging the
EDFs of equal-length segments, and a threshold-versus-false-alarm table,
built by scoring those same segments against the estimated CDF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gof import StepCdf, _cvm_rows, _finite_1d

#: Minimum number of segments required before the noise model is trusted.
MIN_SEGMENTS = 8


@dataclass(frozen=True)
class NoiseModel:
    """Estimated noise CDF plus the segmentation that produced it."""

    cdf: StepCdf
    segment_len: int
    segments_used: int

    def __post_init__(self) -> None:
        if abs(self.cdf.values[-1] - 1.0) > 1e-12:
            raise ValueError("noise CDF must reach 1 at the top of its grid")
        if self.segments_used < MIN_SEGMENTS:
            raise ValueError(f"need at least {MIN_SEGMENTS} segments")


@dataclass(frozen=True)
class ThresholdTable:
    """Monotone map between candidate thresholds and false-alarm rates.

    ``lambdas`` ascend and ``pfa`` is the matching empirical exceedance
    fraction, nonincreasing from pfa[0] (the largest value) down to 0.
    """

    lambdas: np.ndarray
    pfa: np.ndarray

    def __post_init__(self) -> None:
        lambdas = _finite_1d(self.lambdas, "lambdas")
        pfa = _finite_1d(self.pfa, "pfa")
        if lambdas.size != pfa.size:
            raise ValueError("lambdas and pfa must have equal length")
        if np.any(np.diff(lambdas) <= 0):
            raise ValueError("lambdas must be strictly ascending")
        if np.any(np.diff(pfa) > 0):
            raise ValueError("pfa must be nonincreasing")
        if pfa[0] > 1.0 or pfa[-1] < 0.0:
            raise ValueError("pfa must lie within [0, 1]")
        lambdas, pfa = lambdas.copy(), pfa.copy()
        lambdas.setflags(write=False)
        pfa.setflags(write=False)
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "pfa", pfa)


def _segment_rows(modes: Sequence[np.ndarray], window: int) -> np.ndarray:
    """Stack all complete non-overlapping windows of all modes as rows."""
    rows = []
    for i, mode in enumerate(modes):
        arr = _finite_1d(mode, f"mode {i}")
        m = arr.size // window
        if m:
            rows.append(arr[: m * window].reshape(m, window))
    if not rows:
        raise ValueError("modes are shorter than one window")
    return np.concatenate(rows, axis=0)


def estimate_noise_cdf(
    rejected_modes: Sequence[np.ndarray], window: int, grid_size: int = 512
) -> NoiseModel:
    """Estimate the noise CDF from the rejected modes.

    Each mode is split into complete non-overlapping segments of ``window``
    samples (trailing partial segments dropped); the segment EDFs, evaluated
    on a uniform grid spanning the full rejected-sample range, are averaged
    with uniform weights.  Since all segments have equal length, that average
    equals the pooled EDF of the segmented samples, which is how it is
    computed.
    """
    if len(rejected_modes) == 0:
        raise ValueError(
            "no rejected modes given; partition() always yields at least one"
        )
    if window < 2:
        raise ValueError("window must be at least 2 samples")
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    segments = _segment_rows(rejected_modes, window)
    if segments.shape[0] < MIN_SEGMENTS:
        raise ValueError(
            f"only {segments.shape[0]} complete segments; "
            f"need at least {MIN_SEGMENTS} for a usable noise model"
        )
    all_samples = np.concatenate([np.asarray(m, dtype=np.float64) for m in rejected_modes])
    lo, hi = float(all_samples.min()), float(all_samples.max())
    if not hi > lo:
        raise ValueError("rejected modes are constant; no distribution to estimate")
    grid = np.linspace(lo, hi, grid_size)
    pooled = np.sort(segments.reshape(-1))
    values = np.searchsorted(pooled, grid, side="right") / pooled.size
    return NoiseModel(
        cdf=StepCdf(grid=grid, values=values),
        segment_len=window,
        segments_used=segments.shape[0],
    )


def calibrate_thresholds(
    rejected_modes: Sequence[np.ndarray], model: NoiseModel, window: int
) -> ThresholdTable:
    """Build the threshold-versus-false-alarm table from the rejected modes.

    Every complete non-overlapping window is scored with the CVM statistic
    against the model CDF; the candidate thresholds are exactly the distinct
    observed statistics (plus zero), and pfa(lambda) is the exact fraction of
    windows whose statistic exceeds lambda.
    """
    if window != model.segment_len:
        raise ValueError(
            f"window {window} does not match the model's segment length "
            f"{model.segment_len}"
        )
    segments = _segment_rows(rejected_modes, window)
    deltas = _cvm_rows(segments, model.cdf)
    lambdas = np.concatenate([[0.0], np.unique(deltas)])
    deltas_sorted = np.sort(deltas)
    exceed = deltas.size - np.searchsorted(deltas_sorted, lambdas, side="right")
    return ThresholdTable(lambdas=lambdas, pfa=exceed / deltas.size)


def lookup_threshold(table: ThresholdTable, target_pfa: float) -> float:
    """Smallest threshold whose false-alarm rate is at most ``target_pfa``."""
    if not 0.0 <= target_pfa <= 1.0:
        raise ValueError("target_pfa must lie in [0, 1]")
    idx = int(np.argmax(table.pfa <= target_pfa))  # pfa is nonincreasing
    return float(table.lambdas[idx])


def pfa_schedule(k: int) -> float:
    """Per-mode false-alarm target: exp(-(k - 1)) for 1-based mode index k.

    Mode 1 gets 1.0 (keep everything); later modes get exponentially smaller
    targets so more of their content is rejected as noise.
    """
    if k < 1:
        raise ValueError("mode index must be at least 1")
    return math.exp(1.0 - k)
