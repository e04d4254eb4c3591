"""Data-driven signal denoising toolkit.

Decomposes a noisy 1-D signal into band-limited modes, identifies the
noise-dominated modes with the Cramer-von Mises statistic, estimates the
noise distribution empirically from those modes, and rejects noise-like
windows from the remaining modes with a locally applied goodness-of-fit
test.  A benchmark harness scores the pipeline on standard test signals.
"""

from .bench import CellResult, Sweep, run_sweep
from .denoise import (
    DenoiseConfig,
    DenoiseReport,
    denoise,
    sliding_distances,
    threshold_mode,
)
from .gof import (
    CvmStatistic,
    Edf,
    FitDecision,
    StepCdf,
    cvm_distance,
    edf_of,
    gof_decide,
)
from .noise import (
    NoiseModel,
    ThresholdTable,
    calibrate_thresholds,
    estimate_noise_cdf,
    lookup_threshold,
    pfa_schedule,
)
from .selection import ModePartition, mode_distances, partition
from .signals import (
    SIGNAL_NAMES,
    NoisyPair,
    ScoreReport,
    Signal,
    add_noise,
    generate,
    score,
)
from .vmd import ModeSet, NumericalError, OmegaInit, VmdConfig, decompose, reconstruct

__version__ = "0.1.0"

__all__ = [
    "CellResult",
    "CvmStatistic",
    "DenoiseConfig",
    "DenoiseReport",
    "Edf",
    "FitDecision",
    "ModePartition",
    "ModeSet",
    "NoiseModel",
    "NoisyPair",
    "NumericalError",
    "OmegaInit",
    "ScoreReport",
    "Signal",
    "SIGNAL_NAMES",
    "StepCdf",
    "Sweep",
    "ThresholdTable",
    "VmdConfig",
    "add_noise",
    "calibrate_thresholds",
    "cvm_distance",
    "decompose",
    "denoise",
    "edf_of",
    "estimate_noise_cdf",
    "generate",
    "gof_decide",
    "lookup_threshold",
    "mode_distances",
    "partition",
    "pfa_schedule",
    "reconstruct",
    "run_sweep",
    "score",
    "sliding_distances",
    "threshold_mode",
    "__version__",
]
