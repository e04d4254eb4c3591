"""Sliding-window CVM thresholding of relevant modes and the full pipeline.

Around every sample of a relevant mode, a centered window is scored with the
CVM statistic against the estimated noise CDF; samples whose local window
fits the noise model (statistic at or below the mode's threshold) are zeroed,
the rest pass through unchanged.  The denoised signal is the sum of the
thresholded relevant modes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .gof import StepCdf, _cvm_rows
from .noise import (
    NoiseModel,
    ThresholdTable,
    calibrate_thresholds,
    estimate_noise_cdf,
    lookup_threshold,
    pfa_schedule,
)
from .selection import ModePartition, mode_distances, partition
from .signals import Signal
from .vmd import VmdConfig, decompose


@dataclass(frozen=True)
class DenoiseConfig:
    """Pipeline parameters.

    ``window`` is the local-segment length used both for noise-model
    calibration (non-overlapping) and per-sample thresholding (sliding); it
    must be odd so each sliding window has a center sample.  ``pfa_override``
    replaces the default exp(-(k-1)) false-alarm schedule with explicit
    per-mode targets (entry k-1 for mode k).
    """

    vmd: VmdConfig = field(default_factory=VmdConfig)
    window: int = 33
    grid_size: int = 512
    pfa_override: Optional[Sequence[float]] = None

    def __post_init__(self) -> None:
        if self.window < 9:
            raise ValueError("window must be at least 9 samples")
        if self.window % 2 == 0:
            raise ValueError("window must be odd so a center sample exists")
        if self.grid_size < 2:
            raise ValueError("grid_size must be at least 2")
        if self.pfa_override is not None:
            targets = tuple(float(p) for p in self.pfa_override)
            if any(not 0.0 <= p <= 1.0 for p in targets):
                raise ValueError("pfa_override entries must lie in [0, 1]")
            object.__setattr__(self, "pfa_override", targets)


@dataclass(frozen=True)
class DenoiseReport:
    """Everything the pipeline decided, for diagnostics and reproduction.

    ``kept_masks`` has one boolean row per relevant mode marking the samples
    that survived thresholding, so the output can be rebuilt from the mode
    set by masking alone.  ``noise_model`` and ``threshold_table`` are the
    calibration artifacts behind the per-mode thresholds.
    """

    partition: ModePartition
    noise_model_summary: tuple[int, int]  # (segment_len, segments_used)
    per_mode_target_pfa: np.ndarray
    per_mode_lambda: np.ndarray
    per_mode_kept_fraction: np.ndarray
    kept_masks: np.ndarray
    noise_model: NoiseModel
    threshold_table: ThresholdTable
    output: Signal


def sliding_distances(mode: np.ndarray, cdf: StepCdf, window: int) -> np.ndarray:
    """CVM statistic of the centered window around every sample of a mode.

    Windows near the edges are completed by symmetric reflection of the
    mode, preserving local statistics without injecting zeros.
    """
    mode = np.asarray(mode, dtype=np.float64)
    if window % 2 == 0:
        raise ValueError("window must be odd")
    if window > mode.size:
        raise ValueError(f"window {window} is longer than the mode ({mode.size})")
    half = window // 2
    padded = np.pad(mode, half, mode="symmetric")
    windows = sliding_window_view(padded, window)
    return _cvm_rows(windows, cdf)


def threshold_mode(
    mode: np.ndarray, model: NoiseModel, lambda_k: float, window: int
) -> np.ndarray:
    """Zero every sample whose local window close-fits the noise model.

    A sample survives only when its window's CVM statistic strictly exceeds
    ``lambda_k``; with lambda_k = 0 everything survives, with lambda_k = +inf
    nothing does.
    """
    mode = np.asarray(mode, dtype=np.float64)
    deltas = sliding_distances(mode, model.cdf, window)
    return np.where(deltas > lambda_k, mode, 0.0)


def denoise(y: Signal, cfg: DenoiseConfig) -> tuple[Signal, DenoiseReport]:
    """Run the full pipeline on a noisy signal.

    Decomposes the signal, ranks the modes by CVM distance to the signal's
    EDF, rejects the noise-only tail of the distance curve, estimates the
    noise CDF and the threshold table from the rejected modes, then applies
    the per-sample sliding-window test to each relevant mode with its
    scheduled false-alarm target.  Returns the sum of the thresholded
    relevant modes plus a report of every intermediate decision.
    """
    if y.n < 8 * cfg.window:
        raise ValueError(
            f"signal of length {y.n} is too short for window {cfg.window}; "
            f"need at least {8 * cfg.window} samples"
        )
    modeset = decompose(y, cfg.vmd)
    part = partition(mode_distances(y, modeset))
    if cfg.pfa_override is not None and len(cfg.pfa_override) < part.k2:
        raise ValueError(
            f"pfa_override has {len(cfg.pfa_override)} entries but "
            f"{part.k2} modes are relevant"
        )
    rejected = [modeset.modes[k - 1] for k in part.rejected]
    model = estimate_noise_cdf(rejected, cfg.window, cfg.grid_size)
    table = calibrate_thresholds(rejected, model, cfg.window)

    targets = np.empty(part.k2)
    lambdas = np.empty(part.k2)
    kept = np.empty(part.k2)
    masks = np.empty((part.k2, y.n), dtype=bool)
    output = np.zeros(y.n)
    for k in part.relevant:
        target = (
            cfg.pfa_override[k - 1] if cfg.pfa_override is not None else pfa_schedule(k)
        )
        lam = lookup_threshold(table, target)
        mode = modeset.modes[k - 1]
        mask = sliding_distances(mode, model.cdf, cfg.window) > lam
        output += np.where(mask, mode, 0.0)
        targets[k - 1] = target
        lambdas[k - 1] = lam
        kept[k - 1] = mask.mean()
        masks[k - 1] = mask

    report = DenoiseReport(
        partition=part,
        noise_model_summary=(model.segment_len, model.segments_used),
        per_mode_target_pfa=targets,
        per_mode_lambda=lambdas,
        per_mode_kept_fraction=kept,
        kept_masks=masks,
        noise_model=model,
        threshold_table=table,
        output=Signal(output),
    )
    return report.output, report
