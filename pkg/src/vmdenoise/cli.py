"""Command-line interface: decompose, denoise, calibrate, benchmark.

Exit codes: 0 success, 2 usage error, 3 data error (unreadable or malformed
input), 4 numerical failure.  VMD non-convergence is reported as a warning,
not a failure.  Setting NO_COLOR disables styled terminal output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io
from .bench import Sweep, run_sweep, write_manifest_json, write_results_csv
from .denoise import DenoiseConfig, denoise
from .signals import SIGNAL_NAMES, Signal, add_noise, generate
from .vmd import NumericalError, VmdConfig, decompose

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4

_DEFAULTS = {
    "n": 4096,
    "snr_db": None,
    "seed": 0,
    "k_modes": 10,
    "alpha": 2000.0,
    "tau": 0.0,
    "window": 33,
    "out_dir": ".",
    "realizations": 20,
    "signals": None,
    "lengths": None,
    "snrs_db": None,
}


def _styled(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vmdenoise",
        description="Mode-decomposition denoising with empirical goodness-of-fit tests.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file mirroring the flags; flags win")
    common.add_argument("--out-dir", dest="out_dir", help="directory for output files")
    common.add_argument("--seed", type=int, help="RNG seed (default 0)")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--input", help="single-column CSV to process")
    source.add_argument("--signal", choices=SIGNAL_NAMES, help="named synthetic signal")
    source.add_argument("--n", type=int, help="synthetic signal length (default 4096)")
    source.add_argument(
        "--snr-db", dest="snr_db", type=float,
        help="add noise at this input SNR to the synthetic signal",
    )

    vmdopts = argparse.ArgumentParser(add_help=False)
    vmdopts.add_argument("--k-modes", dest="k_modes", type=int, help="number of modes (default 10)")
    vmdopts.add_argument("--alpha", type=float, help="bandwidth penalty (default 2000)")
    vmdopts.add_argument("--tau", type=float, help="reconstruction ascent rate (default 0)")

    window = argparse.ArgumentParser(add_help=False)
    window.add_argument("--window", type=int, help="odd local-window length (default 33)")

    sub.add_parser("decompose", parents=[common, source, vmdopts],
                   help="write the mode decomposition as CSV")
    sub.add_parser("denoise", parents=[common, source, vmdopts, window],
                   help="denoise a signal and write diagnostics")
    sub.add_parser("calibrate", parents=[common, source, vmdopts, window],
                   help="write the noise CDF and threshold table without denoising")

    bench = sub.add_parser("benchmark", parents=[common, vmdopts, window],
                           help="run a seeded benchmark sweep")
    bench.add_argument("--signals", nargs="+", choices=SIGNAL_NAMES,
                       help="signals to sweep")
    bench.add_argument("--lengths", nargs="+", type=int, help="signal lengths to sweep")
    bench.add_argument("--snrs-db", dest="snrs_db", nargs="+", type=float,
                       help="input SNRs to sweep")
    bench.add_argument("--realizations", type=int, help="seeded runs per cell (default 20)")
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise io.CsvFormatError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise io.CsvFormatError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise io.CsvFormatError(f"{path}: config must be a JSON object")
    unknown = set(cfg) - set(_DEFAULTS) - {"input", "signal"}
    if unknown:
        raise io.CsvFormatError(f"{path}: unknown config keys: {sorted(unknown)}")
    return cfg


def _resolve(args: argparse.Namespace, key: str):
    """Flag value if given, else config-file value, else built-in default."""
    value = getattr(args, key, None)
    if value is not None:
        return value
    if args.config_values and key in args.config_values:
        return args.config_values[key]
    return _DEFAULTS.get(key)


def _vmd_config(args: argparse.Namespace) -> VmdConfig:
    return VmdConfig(
        k_modes=_resolve(args, "k_modes"),
        alpha=_resolve(args, "alpha"),
        tau=_resolve(args, "tau"),
    )


def _load_signal(args: argparse.Namespace, parser: argparse.ArgumentParser) -> Signal:
    input_path = getattr(args, "input", None) or (
        args.config_values.get("input") if args.config_values else None
    )
    signal_name = getattr(args, "signal", None) or (
        args.config_values.get("signal") if args.config_values else None
    )
    if input_path:
        return Signal(io.read_signal_csv(input_path))
    if signal_name:
        clean = generate(signal_name, _resolve(args, "n"))
        snr_db = _resolve(args, "snr_db")
        if snr_db is None:
            return clean
        return add_noise(clean, snr_db, _resolve(args, "seed")).noisy
    parser.error("either --input or --signal is required")


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(_resolve(args, "out_dir"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _warn_if_not_converged(modeset) -> None:
    if not modeset.converged:
        print(
            _styled(
                f"warning: decomposition stopped at the iteration cap "
                f"({modeset.iterations_used} iterations)",
                "33",
            ),
            file=sys.stderr,
        )


def _cmd_decompose(args, parser) -> int:
    y = _load_signal(args, parser)
    modeset = decompose(y, _vmd_config(args))
    _warn_if_not_converged(modeset)
    out = _out_dir(args)
    io.write_modes_csv(out / "modes.csv", modeset)
    with open(out / "decompose.json", "w", encoding="utf-8") as fh:
        json.dump(
            {
                "center_freqs": [float(w) for w in modeset.center_freqs],
                "iterations_used": modeset.iterations_used,
                "converged": modeset.converged,
            },
            fh, indent=2, sort_keys=True,
        )
        fh.write("\n")
    print(f"wrote {out / 'modes.csv'} ({modeset.k_modes} modes, {modeset.n} samples)")
    return EXIT_OK


def _denoise_config(args: argparse.Namespace) -> DenoiseConfig:
    return DenoiseConfig(vmd=_vmd_config(args), window=_resolve(args, "window"))


def _cmd_denoise(args, parser) -> int:
    y = _load_signal(args, parser)
    denoised, report = denoise(y, _denoise_config(args))
    out = _out_dir(args)
    io.write_signal_csv(out / "denoised.csv", denoised.samples)
    io.write_report_json(out / "report.json", report)
    io.write_distances_csv(out / "mode_distances.csv", report.partition.distances)
    io.write_threshold_table_csv(out / "threshold_table.csv", report.threshold_table)
    io.write_step_cdf_csv(out / "noise_cdf.csv", report.noise_model.cdf)
    kept = ", ".join(f"{f:.2f}" for f in report.per_mode_kept_fraction)
    print(_styled(f"kept modes 1..{report.partition.k2} of {report.partition.n_modes}", "32"))
    print(f"kept fractions: {kept}")
    print(f"wrote {out / 'denoised.csv'}")
    return EXIT_OK


def _cmd_calibrate(args, parser) -> int:
    y = _load_signal(args, parser)
    _, report = denoise(y, _denoise_config(args))
    out = _out_dir(args)
    io.write_partition_json(out / "partition.json", report.partition)
    io.write_distances_csv(out / "mode_distances.csv", report.partition.distances)
    io.write_threshold_table_csv(out / "threshold_table.csv", report.threshold_table)
    io.write_step_cdf_csv(out / "noise_cdf.csv", report.noise_model.cdf)
    print(f"wrote calibration tables to {out}")
    return EXIT_OK


def _cmd_benchmark(args, parser) -> int:
    signals = _resolve(args, "signals")
    lengths = _resolve(args, "lengths")
    snrs_db = _resolve(args, "snrs_db")
    if not (signals and lengths and snrs_db):
        parser.error("benchmark requires --signals, --lengths, and --snrs-db")
    sweep = Sweep(
        signals=tuple(signals),
        lengths=tuple(int(n) for n in lengths),
        snrs_db=tuple(float(s) for s in snrs_db),
        realizations=_resolve(args, "realizations"),
    )
    cfg = _denoise_config(args)
    seed = _resolve(args, "seed")
    results = run_sweep(sweep, cfg, seed)
    out = _out_dir(args)
    write_results_csv(out / "results.csv", results)
    write_manifest_json(out / "manifest.json", sweep, cfg, seed)
    for r in results:
        print(
            f"{r.signal} n={r.n} snr={r.input_snr_db:g} dB -> "
            f"{r.mean_out_snr_db:.2f} dB (std {r.std_out_snr_db:.2f})"
        )
    print(f"wrote {out / 'results.csv'}")
    return EXIT_OK


_COMMANDS = {
    "decompose": _cmd_decompose,
    "denoise": _cmd_denoise,
    "calibrate": _cmd_calibrate,
    "benchmark": _cmd_benchmark,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.config_values = _load_config_file(args.config) if args.config else {}
        return _COMMANDS[args.subcommand](args, parser)
    except NumericalError as exc:
        print(_styled(f"numerical failure: {exc}", "31"), file=sys.stderr)
        return EXIT_NUMERICAL
    except (io.CsvFormatError, FileNotFoundError, OSError, ValueError) as exc:
        print(_styled(f"error: {exc}", "31"), file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
