"""Variational mode decomposition (VMD) via alternating-direction updates.

Decomposes a real 1-D signal into K band-limited modes by minimizing the
summed bandwidth of the analytic-signal spectra, subject to the modes adding
up to the input.  All updates run on the nonnegative-frequency half spectrum;
the analytic-signal construction is realized by the one-sided transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .signals import Signal


class OmegaInit(Enum):
    """Initialization of the K center frequencies."""

    ZERO = "zero"
    UNIFORM_SPREAD = "uniform_spread"


class NumericalError(RuntimeError):
    """Raised when an iteration produces non-finite values."""


@dataclass(frozen=True)
class VmdConfig:
    """Decomposition parameters.

    Parameters
    ----------
    k_modes : int
        Number of modes K (>= 2).
    alpha : float
        Bandwidth penalty; larger values give narrower modes.
    tau : float
        Ascent rate of the Lagrangian multiplier enforcing exact
        reconstruction.  0 relaxes the constraint (recommended under heavy
        noise); > 0 drives sum(modes) toward the input.
    tol : float
        Relative convergence tolerance on the summed per-mode update size.
    max_iters : int
        Iteration cap; hitting it is reported via ModeSet.converged, not an
        error.
    init : OmegaInit
        ZERO starts all center frequencies at 0; UNIFORM_SPREAD staggers
        them at 0.5 * (k - 1/2) / K.
    """

    k_modes: int = 10
    alpha: float = 2000.0
    tau: float = 0.0
    tol: float = 1e-7
    max_iters: int = 500
    init: OmegaInit = OmegaInit.UNIFORM_SPREAD

    def __post_init__(self) -> None:
        if self.k_modes < 2:
            raise ValueError("k_modes must be at least 2")
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")
        if self.tau < 0.0:
            raise ValueError("tau must be nonnegative")
        if not 0.0 < self.tol < 1.0:
            raise ValueError("tol must lie in (0, 1)")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass(frozen=True)
class ModeSet:
    """K band-limited modes with center frequencies, sorted by frequency.

    ``center_freqs`` are in cycles/sample within [0, 0.5].  ``residual`` is
    the part of the input not captured by the modes, so that
    sum(modes) + residual reproduces the input exactly.
    """

    modes: np.ndarray
    center_freqs: np.ndarray
    residual: np.ndarray
    iterations_used: int
    converged: bool

    def __post_init__(self) -> None:
        modes = np.asarray(self.modes, dtype=np.float64)
        freqs = np.asarray(self.center_freqs, dtype=np.float64)
        residual = np.asarray(self.residual, dtype=np.float64)
        if modes.ndim != 2:
            raise ValueError("modes must be a (K, N) array")
        if freqs.shape != (modes.shape[0],):
            raise ValueError("center_freqs must have one entry per mode")
        if residual.shape != (modes.shape[1],):
            raise ValueError("residual must match the mode length")
        if not (np.all(np.isfinite(modes)) and np.all(np.isfinite(residual))):
            raise ValueError("modes and residual must be finite")
        if np.any(np.diff(freqs) < 0):
            raise ValueError("modes must be ordered by ascending center frequency")
        for arr in (modes, freqs, residual):
            arr.setflags(write=False)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "center_freqs", freqs)
        object.__setattr__(self, "residual", residual)

    @property
    def k_modes(self) -> int:
        return self.modes.shape[0]

    @property
    def n(self) -> int:
        return self.modes.shape[1]


def _mirror_extend(x: np.ndarray) -> tuple[np.ndarray, int]:
    """Mirror-extend by half the record on each side; pad to even length."""
    half = x.size // 2
    ext = np.concatenate([x[:half][::-1], x, x[x.size - half :][::-1]])
    if ext.size % 2:
        ext = np.append(ext, 0.0)
    return ext, half


def decompose(y: Signal, cfg: VmdConfig) -> ModeSet:
    """Decompose a signal into cfg.k_modes band-limited modes.

    Alternates, on the nonnegative-frequency half spectrum of the
    mirror-extended signal, between

    - mode update: u_k <- (y - sum_{i != k} u_i + gamma/2)
      / (1 + 2 alpha (w - w_k)^2),
    - center-frequency update: w_k <- first moment of |u_k|^2 over w >= 0,
    - multiplier update: gamma <- gamma + tau (y - sum_k u_k),

    until the summed relative change of the modes drops below cfg.tol or
    cfg.max_iters is reached.  Modes are returned in ascending center
    frequency; the output is deterministic for a given (y, cfg).
    """
    x = y.samples
    n = x.size
    k_modes = cfg.k_modes
    if n < 2 * k_modes:
        raise ValueError(f"need at least 2*K = {2 * k_modes} samples, got {n}")

    ext, offset = _mirror_extend(x)
    t_len = ext.size
    freqs = np.arange(t_len // 2 + 1, dtype=np.float64) / t_len
    y_hat = np.fft.rfft(ext)

    if cfg.init is OmegaInit.UNIFORM_SPREAD:
        omega = 0.5 * (np.arange(k_modes) + 0.5) / k_modes
    else:
        omega = np.zeros(k_modes)

    n_bins = freqs.size
    u_hat = np.zeros((k_modes, n_bins), dtype=np.complex128)
    gamma_hat = np.zeros(n_bins, dtype=np.complex128)
    sum_u = np.zeros(n_bins, dtype=np.complex128)

    # exact Parseval weights for one-sided spectra of even-length records
    parseval = np.full(n_bins, 2.0)
    parseval[0] = 1.0
    parseval[-1] = 1.0
    two_alpha = 2.0 * cfg.alpha

    iterations = 0
    converged = False
    for _ in range(cfg.max_iters):
        diff = 0.0
        for k in range(k_modes):
            sum_u -= u_hat[k]
            u_new = (y_hat - sum_u + 0.5 * gamma_hat) / (
                1.0 + two_alpha * (freqs - omega[k]) ** 2
            )
            delta_sq = float(np.sum(parseval * np.abs(u_new - u_hat[k]) ** 2))
            norm_sq = float(np.sum(parseval * np.abs(u_hat[k]) ** 2))
            if norm_sq > 0.0:
                diff += delta_sq / norm_sq
            elif delta_sq > 0.0:
                diff = np.inf  # mode appeared this sweep: not converged
            u_hat[k] = u_new
            sum_u += u_new
            power = np.abs(u_new) ** 2
            total = float(power.sum())
            if total > 0.0:
                omega[k] = float(np.dot(freqs, power)) / total
        if cfg.tau > 0.0:
            gamma_hat += cfg.tau * (y_hat - sum_u)
        iterations += 1
        if diff < cfg.tol:
            converged = True
            break

    modes_ext = np.fft.irfft(u_hat, n=t_len, axis=-1)
    modes = modes_ext[:, offset : offset + n]
    order = np.argsort(omega, kind="stable")
    modes = modes[order]
    if not np.all(np.isfinite(modes)):
        raise NumericalError("decomposition produced non-finite modes")
    return ModeSet(
        modes=modes,
        center_freqs=omega[order],
        residual=x - modes.sum(axis=0),
        iterations_used=iterations,
        converged=converged,
    )


def reconstruct(modeset: ModeSet) -> Signal:
    """Sum of the modes (residual excluded)."""
    return Signal(modeset.modes.sum(axis=0))
