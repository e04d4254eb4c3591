"""Benchmark signals, noise injection at a target SNR, and SNR/MSE scoring."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Benchmark signals are rescaled so their sample standard deviation equals 7,
#: the conventional normalization for this test suite.
TARGET_STD = 7.0

SIGNAL_NAMES = ("Blocks", "Bumps", "HeavySine", "Doppler")


@dataclass(frozen=True)
class Signal:
    """Uniformly sampled real-valued series; immutable after construction."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if arr.size < 8:
            raise ValueError(f"signal needs at least 8 samples, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def n(self) -> int:
        return self.samples.size


@dataclass(frozen=True)
class NoisyPair:
    """A clean signal and its noisy counterpart from one seeded noise draw."""

    clean: Signal
    noisy: Signal
    noise_sigma: float
    seed: int

    def __post_init__(self) -> None:
        if self.clean.n != self.noisy.n:
            raise ValueError("clean and noisy signals must have equal length")
        if not self.noise_sigma > 0.0:
            raise ValueError("noise_sigma must be positive")


@dataclass(frozen=True)
class ScoreReport:
    """Output SNR (dB) and MSE of a denoised signal against the clean one."""

    snr_db: float
    mse: float

    def __post_init__(self) -> None:
        if self.mse < 0.0:
            raise ValueError("mse must be nonnegative")
        if (self.mse == 0.0) != math.isinf(self.snr_db):
            raise ValueError("mse == 0 exactly when snr_db is +inf")


def _blocks(t: np.ndarray) -> np.ndarray:
    pos = np.array([0.1, 0.13, 0.15, 0.23, 0.25, 0.40, 0.44, 0.65, 0.76, 0.78, 0.81])
    hgt = np.array([4.0, -5.0, 3.0, -4.0, 5.0, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2])
    # right-continuous step kernel: samples landing exactly on a breakpoint
    # take the post-jump value, keeping one difference per jump
    steps = (t[:, np.newaxis] >= pos).astype(np.float64)
    return steps @ hgt


def _bumps(t: np.ndarray) -> np.ndarray:
    pos = np.array([0.1, 0.13, 0.15, 0.23, 0.25, 0.40, 0.44, 0.65, 0.76, 0.78, 0.81])
    hgt = np.array([4.0, 5.0, 3.0, 4.0, 5.0, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2])
    wth = np.array([0.005, 0.005, 0.006, 0.01, 0.01, 0.03, 0.01, 0.01, 0.005, 0.008, 0.005])
    kernel = (1.0 + np.abs((t[:, np.newaxis] - pos) / wth)) ** -4.0
    return kernel @ hgt


def _heavy_sine(t: np.ndarray) -> np.ndarray:
    return 4.0 * np.sin(4.0 * np.pi * t) - np.sign(t - 0.3) - np.sign(0.72 - t)


def _doppler(t: np.ndarray) -> np.ndarray:
    return np.sqrt(t * (1.0 - t)) * np.sin(2.1 * np.pi / (t + 0.05))


_GENERATORS = {
    "blocks": _blocks,
    "bumps": _bumps,
    "heavysine": _heavy_sine,
    "heavisine": _heavy_sine,
    "doppler": _doppler,
}


def generate(name: str, n: int) -> Signal:
    """Generate a benchmark test signal of length n on t = (1..n)/n.

    ``name`` is one of Blocks, Bumps, HeavySine, Doppler (case-insensitive).
    The output is deterministic and rescaled to sample standard deviation 7.
    """
    key = name.strip().lower().replace("_", "").replace("-", "")
    if key not in _GENERATORS:
        raise ValueError(f"unknown signal name {name!r}; choose from {SIGNAL_NAMES}")
    if n < 8:
        raise ValueError(f"signal length must be at least 8, got {n}")
    t = np.arange(1, n + 1, dtype=np.float64) / n
    raw = _GENERATORS[key](t)
    return Signal(raw * (TARGET_STD / raw.std()))


def add_noise(clean: Signal, input_snr_db: float, seed: int) -> NoisyPair:
    """Add white Gaussian noise so the input SNR equals ``input_snr_db``.

    The noise variance is sigma^2 = mean(x^2) * 10^(-snr/10); the draw comes
    from numpy's PCG64 generator keyed by ``seed``, so identical inputs give
    bit-identical noisy output.
    """
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    x = clean.samples
    power = float(np.mean(x**2))
    if power == 0.0:
        raise ValueError("clean signal must have nonzero power")
    sigma = math.sqrt(power * 10.0 ** (-input_snr_db / 10.0))
    noise = np.random.default_rng(seed).standard_normal(clean.n) * sigma
    return NoisyPair(clean=clean, noisy=Signal(x + noise), noise_sigma=sigma, seed=seed)


def score(clean: Signal, denoised: Signal) -> ScoreReport:
    """Score a denoised signal: SNR = 10 log10(sum x^2 / sum (x - xhat)^2)."""
    if clean.n != denoised.n:
        raise ValueError("clean and denoised signals must have equal length")
    err = clean.samples - denoised.samples
    sse = float(np.sum(err**2))
    mse = sse / clean.n
    if sse == 0.0:
        return ScoreReport(snr_db=math.inf, mse=0.0)
    snr = 10.0 * math.log10(float(np.sum(clean.samples**2)) / sse)
    return ScoreReport(snr_db=snr, mse=mse)
