"""CSV and JSON readers/writers for signals, modes, tables, and reports.

All writers emit floats with 17 significant digits so values round-trip
bit-exactly through text, and all emitted files are re-readable by the
matching reader here.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from .denoise import DenoiseReport
from .gof import StepCdf
from .noise import ThresholdTable
from .selection import ModePartition
from .vmd import ModeSet

PathLike = Union[str, Path]

_FLOAT = "{:.17g}".format


class CsvFormatError(ValueError):
    """Malformed CSV input; the message names the offending line."""


def read_signal_csv(path: PathLike) -> np.ndarray:
    """Read a one-sample-per-line CSV, tolerating an optional `value` header."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text:
                continue
            if lineno == 1 and text.lower() == "value":
                continue
            try:
                v = float(text)
            except ValueError:
                raise CsvFormatError(f"{path}: line {lineno}: not a number: {text!r}") from None
            if not np.isfinite(v):
                raise CsvFormatError(f"{path}: line {lineno}: non-finite sample {text!r}")
            values.append(v)
    if not values:
        raise CsvFormatError(f"{path}: no samples found")
    return np.array(values)


def write_signal_csv(path: PathLike, samples) -> None:
    samples = np.asarray(samples, dtype=np.float64)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("value\n")
        for v in samples:
            fh.write(_FLOAT(v) + "\n")


def write_modes_csv(path: PathLike, modeset: ModeSet) -> None:
    """Write modes column-wise: header u1..uK,residual, one row per sample."""
    k = modeset.k_modes
    header = ",".join([f"u{i}" for i in range(1, k + 1)] + ["residual"])
    columns = np.column_stack([modeset.modes.T, modeset.residual])
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in columns:
            fh.write(",".join(_FLOAT(v) for v in row) + "\n")


def write_step_cdf_csv(path: PathLike, cdf: StepCdf) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("z,E0\n")
        for z, v in zip(cdf.grid, cdf.values):
            fh.write(f"{_FLOAT(z)},{_FLOAT(v)}\n")


def read_step_cdf_csv(path: PathLike) -> StepCdf:
    grid, values = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text:
                continue
            if lineno == 1 and text.lower() == "z,e0":
                continue
            parts = text.split(",")
            if len(parts) != 2:
                raise CsvFormatError(f"{path}: line {lineno}: expected two columns")
            try:
                grid.append(float(parts[0]))
                values.append(float(parts[1]))
            except ValueError:
                raise CsvFormatError(f"{path}: line {lineno}: not numeric: {text!r}") from None
    if not grid:
        raise CsvFormatError(f"{path}: no rows found")
    return StepCdf(grid=np.array(grid), values=np.array(values))


def write_threshold_table_csv(path: PathLike, table: ThresholdTable) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("lambda,pfa\n")
        for lam, p in zip(table.lambdas, table.pfa):
            fh.write(f"{_FLOAT(lam)},{_FLOAT(p)}\n")


def write_distances_csv(path: PathLike, distances) -> None:
    """Per-mode CVM distance curve, one `k,distance` row per mode."""
    distances = np.asarray(distances, dtype=np.float64)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("k,distance\n")
        for i, d in enumerate(distances, start=1):
            fh.write(f"{i},{_FLOAT(d)}\n")


def partition_to_dict(part: ModePartition) -> dict:
    return {
        "distances": [float(d) for d in part.distances],
        "slopes": [float(s) for s in part.slopes],
        "k1": part.k1,
        "k2": part.k2,
    }


def write_partition_json(path: PathLike, part: ModePartition) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(partition_to_dict(part), fh, indent=2, sort_keys=True)
        fh.write("\n")


def report_to_dict(report: DenoiseReport) -> dict:
    segment_len, segments_used = report.noise_model_summary
    return {
        "partition": partition_to_dict(report.partition),
        "noise_model": {"segment_len": segment_len, "segments_used": segments_used},
        "per_mode_target_pfa": [float(p) for p in report.per_mode_target_pfa],
        "per_mode_lambda": [float(v) for v in report.per_mode_lambda],
        "per_mode_kept_fraction": [float(f) for f in report.per_mode_kept_fraction],
        "output_length": report.output.n,
    }


def write_report_json(path: PathLike, report: DenoiseReport) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report), fh, indent=2, sort_keys=True)
        fh.write("\n")
