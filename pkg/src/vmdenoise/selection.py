"""Selection of relevant modes from the per-mode CVM distance curve.

Each mode's CVM distance to the noisy signal's EDF measures how much of the
signal's statistical profile that mode carries.  The absolute slopes of the
distance curve locate two change points: the largest slope overall (end of
the signal-dominant group) and the largest slope after it (start of the
noise-only group).  Modes past the second change point are rejected as noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gof import cvm_distance, edf_of
from .signals import Signal
from .vmd import ModeSet


@dataclass(frozen=True)
class ModePartition:
    """Distance curve, its slopes, and the relevant/rejected split.

    Mode indices are 1-based: ``relevant`` is {1..k2}, ``rejected`` is
    {k2+1..K}.  ``slopes[i]`` is |distances[i+1] - distances[i]|.
    """

    distances: np.ndarray
    slopes: np.ndarray
    k1: int
    k2: int

    def __post_init__(self) -> None:
        distances = np.asarray(self.distances, dtype=np.float64)
        slopes = np.asarray(self.slopes, dtype=np.float64)
        k = distances.size
        if slopes.shape != (k - 1,):
            raise ValueError("slopes must have one entry per adjacent mode pair")
        if not np.allclose(slopes, np.abs(np.diff(distances)), rtol=0.0, atol=1e-12):
            raise ValueError("slopes must equal |successive distance differences|")
        if not 1 <= self.k1 <= self.k2 <= k - 1:
            raise ValueError("need 1 <= k1 <= k2 <= K-1")
        for arr in (distances, slopes):
            arr.setflags(write=False)
        object.__setattr__(self, "distances", distances)
        object.__setattr__(self, "slopes", slopes)

    @property
    def n_modes(self) -> int:
        return self.distances.size

    @property
    def relevant(self) -> tuple[int, ...]:
        return tuple(range(1, self.k2 + 1))

    @property
    def rejected(self) -> tuple[int, ...]:
        return tuple(range(self.k2 + 1, self.n_modes + 1))


def mode_distances(y: Signal, modeset: ModeSet) -> np.ndarray:
    """CVM distance of each mode against the noisy signal's EDF."""
    if modeset.n != y.n:
        raise ValueError("mode length must equal signal length")
    reference = edf_of(y.samples)
    return np.array([cvm_distance(mode, reference).delta for mode in modeset.modes])


def partition(distances) -> ModePartition:
    """Split modes into relevant {1..k2} and rejected {k2+1..K}.

    k1 is the index of the largest slope of the distance curve; k2 the index
    of the largest slope among {k1+1..K-1} (the stable region).  Ties break
    toward the smallest index.  When k1 is already the last slope, k2 = k1,
    so at least one mode is always rejected.
    """
    distances = np.asarray(distances, dtype=np.float64)
    k = distances.size
    if k < 3:
        raise ValueError("need at least 3 mode distances to partition")
    if not np.all(np.isfinite(distances)):
        raise ValueError("distances must be finite")
    slopes = np.abs(np.diff(distances))
    k1 = int(np.argmax(slopes)) + 1  # 1-based; argmax takes the first maximum
    if k1 == k - 1:
        k2 = k1
    else:
        k2 = k1 + 1 + int(np.argmax(slopes[k1:]))
    return ModePartition(distances=distances, slopes=slopes, k1=k1, k2=k2)
