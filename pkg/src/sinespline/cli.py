"""Command-line front end: ingest, fit, synthesize, and spectra subcommands.

Exit codes: 0 success, 1 input or configuration error, 2 non-convergence
(best-effort outputs are still written). All diagnostics go to stderr; every
output file is a pure function of the inputs, configuration, and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .basis import SplineSpec, bspline_basis
from .errors import InvalidSpecError, SineSplineError
from .fitting import FitConfig, fit, initial_frequency
from .io import (
    build_run_report,
    ingest_csv,
    write_components_csv,
    write_covariance_csv,
    write_dataset_csv,
    write_report,
    write_spectra_csv,
    write_truth_sidecar,
)
from .spectra import basis_spectra, monomial_vandermonde
from .synthetic import PRESETS, SyntheticSpec, generate_synthetic, get_preset

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_CONVERGENCE = 2

CONFIG_KEYS = (
    "degree", "breakpoints", "harmonics", "omega-init", "omega-bounds",
    "tolerance", "max-iterations", "rescale", "seed",
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for non-convergence
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def parse_config_file(path) -> dict:
    """Flat key = value file; '#' starts a comment; keys match CONFIG_KEYS."""
    settings = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidSpecError(f"{path}: line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().replace("_", "-")
        if key not in CONFIG_KEYS:
            raise InvalidSpecError(
                f"{path}: line {lineno}: unknown config key {key!r}; "
                f"known keys: {', '.join(CONFIG_KEYS)}"
            )
        settings[key] = value.strip()
    return settings


def parse_breakpoints(text: str):
    """A comma list means explicit breakpoints; a bare integer a uniform count."""
    if "," in text:
        return tuple(float(p) for p in text.split(","))
    try:
        return int(text)
    except ValueError:
        return (float(text),)


def parse_bounds(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidSpecError(f"omega-bounds needs two values, got {text!r}")
    return (float(parts[0]), float(parts[1]))


def _merge_fit_settings(args) -> dict:
    settings = {
        "degree": 2,
        "breakpoints": 5,
        "harmonics": 1,
        "omega-init": None,
        "omega-bounds": None,
        "tolerance": 1e-8,
        "max-iterations": 200,
        "rescale": None,
        "seed": None,
    }
    if args.config:
        raw = parse_config_file(args.config)
        for key, value in raw.items():
            if key == "breakpoints":
                settings[key] = parse_breakpoints(value)
            elif key == "omega-bounds":
                settings[key] = parse_bounds(value)
            elif key in ("degree", "harmonics", "max-iterations", "seed"):
                settings[key] = int(value)
            else:
                settings[key] = float(value)
    overrides = {
        "degree": args.degree,
        "breakpoints": parse_breakpoints(args.breakpoints) if args.breakpoints else None,
        "harmonics": args.harmonics,
        "omega-init": args.omega_init,
        "omega-bounds": parse_bounds(args.omega_bounds) if args.omega_bounds else None,
        "tolerance": args.tolerance,
        "max-iterations": args.max_iterations,
        "rescale": args.rescale,
        "seed": args.seed,
    }
    for key, value in overrides.items():
        if value is not None:
            settings[key] = value
    return settings


def _resolve_breakpoints(setting, x: np.ndarray) -> tuple:
    if isinstance(setting, int):
        if setting < 2:
            raise InvalidSpecError("breakpoint count must be at least 2")
        return tuple(np.linspace(x[0], x[-1], setting))
    return tuple(setting)


def _check_span(bp: tuple, x: np.ndarray) -> None:
    # precondition: reject misplaced breakpoints before any computation
    tol = 1e-9 * max(abs(x[0]), abs(x[-1]), x[-1] - x[0])
    if bp[0] < x[0] - tol or bp[-1] > x[-1] + tol:
        raise InvalidSpecError(
            f"breakpoints [{bp[0]:g}, {bp[-1]:g}] extend outside the data "
            f"span [{x[0]:g}, {x[-1]:g}]"
        )


def _config_echo(settings: dict, data_path: str) -> dict:
    echo = {"data": data_path}
    for key, value in settings.items():
        if value is None:
            continue
        if isinstance(value, tuple):
            echo[key] = ",".join("%.17g" % v for v in value)
        elif isinstance(value, float):
            echo[key] = "%.17g" % value
        else:
            echo[key] = str(value)
    return echo


def _fit_one(data_path: str, args, settings: dict) -> int:
    dataset = ingest_csv(
        data_path,
        x_column=args.x_column,
        y_column=args.y_column,
        rescale=settings["rescale"],
        delimiter=args.delimiter,
    )
    bp = _resolve_breakpoints(settings["breakpoints"], dataset.x)
    _check_span(bp, dataset.x)
    config = FitConfig(
        sspec=SplineSpec(degree=settings["degree"], breakpoints=bp),
        harmonics=settings["harmonics"],
        omega_bounds=settings["omega-bounds"],
        omega_init_override=settings["omega-init"],
        max_iterations=settings["max-iterations"],
        tolerance=settings["tolerance"],
    )
    result = fit(dataset.x, dataset.y, config)

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = out_dir / Path(data_path).stem
    report = build_run_report(result, len(dataset), _config_echo(settings, data_path))
    write_components_csv(f"{stem}.components.csv", dataset.x, dataset.y, result)
    write_covariance_csv(
        f"{stem}.covariance.csv", result.covariance.covariance,
        len(result.alpha), len(result.beta),
    )
    write_report(f"{stem}.report.txt", report)
    for suffix in (".components.csv", ".covariance.csv", ".report.txt"):
        print(f"wrote {stem}{suffix}")
    if not result.converged:
        print(f"warning: {data_path}: frequency search hit the iteration "
              "budget; outputs hold the best frequency found", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def cmd_fit(args) -> int:
    settings = _merge_fit_settings(args)
    if args.jobs > 1 and len(args.data) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            codes = list(pool.map(lambda p: _fit_one(p, args, settings), args.data))
    else:
        codes = [_fit_one(p, args, settings) for p in args.data]
    return max(codes)


def _spec_from_file(path) -> SyntheticSpec:
    payload = json.loads(Path(path).read_text())
    try:
        return SyntheticSpec(
            n_samples=int(payload["n_samples"]),
            sspec=SplineSpec(
                degree=int(payload["degree"]),
                breakpoints=tuple(payload["breakpoints"]),
            ),
            beta_true=tuple(payload["beta_true"]),
            omega_true=float(payload["omega_true"]),
            harmonic_amplitudes=tuple((a, b) for a, b in payload["harmonic_amplitudes"]),
            noise_sigma=float(payload.get("noise_sigma", 0.0)),
            seed=int(payload.get("seed", 0)),
        )
    except KeyError as exc:
        raise InvalidSpecError(f"{path}: missing spec field {exc.args[0]!r}") from None


def cmd_synth(args) -> int:
    if args.spec_file:
        spec = _spec_from_file(args.spec_file)
        if args.seed is not None:
            from dataclasses import replace
            spec = replace(spec, seed=args.seed)
        if args.sigma is not None:
            from dataclasses import replace
            spec = replace(spec, noise_sigma=args.sigma)
    else:
        spec = get_preset(args.preset, seed=args.seed, noise_sigma=args.sigma)
    result = generate_synthetic(spec)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_dataset_csv(out, result.dataset)
    sidecar = out.with_suffix(".truth.json")
    write_truth_sidecar(sidecar, result)
    print(f"wrote {out}")
    print(f"wrote {sidecar}")
    return EXIT_OK


def cmd_spectra(args) -> int:
    if args.family == "monomial":
        B = monomial_vandermonde(args.n_samples, args.max_degree)
        rate = (args.n_samples - 1) / 2.0
        report = basis_spectra(B, rate)
    elif args.family == "spline":
        bp_setting = parse_breakpoints(args.breakpoints) if args.breakpoints else 5
        if isinstance(bp_setting, int):
            bp = tuple(np.linspace(0.0, 1.0, bp_setting))
        else:
            bp = bp_setting
        sspec = SplineSpec(degree=args.degree, breakpoints=bp)
        lo, hi = sspec.span
        x = np.linspace(lo, hi, args.n_samples)
        report = basis_spectra(bspline_basis(x, sspec), (args.n_samples - 1) / (hi - lo))
    elif args.data:
        dataset = ingest_csv(args.data, x_column=args.x_column,
                             y_column=args.y_column, delimiter=args.delimiter)
        if args.prefit_residual:
            bp_setting = parse_breakpoints(args.breakpoints) if args.breakpoints else 5
            bp = _resolve_breakpoints(bp_setting, dataset.x)
            _, report = initial_frequency(
                dataset.x, dataset.y, SplineSpec(degree=args.degree, breakpoints=bp)
            )
        else:
            from .basis import BasisMatrix
            from .validation import check_uniform_spacing
            dx = check_uniform_spacing(dataset.x)
            report = basis_spectra(
                BasisMatrix(dataset.y[:, None], ("y",)), 1.0 / dx, normalize=False
            )
    else:
        raise InvalidSpecError("spectra needs --family or a data file")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_spectra_csv(out, report)
    print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sinespline",
        description="Separate a signal into a harmonic periodic component "
                    "and a B-spline trend.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit datasets and write reports",
                           description="Fit each dataset; writes components "
                                       "CSV, covariance CSV, and a key=value "
                                       "report per input.")
    p_fit.add_argument("data", nargs="+", help="input CSV file(s)")
    p_fit.add_argument("--config", help="key = value settings file")
    p_fit.add_argument("--degree", type=int)
    p_fit.add_argument("--breakpoints",
                       help="comma list of locations, or a uniform count")
    p_fit.add_argument("--harmonics", type=int)
    p_fit.add_argument("--omega-init", type=float)
    p_fit.add_argument("--omega-bounds", help="lower,upper")
    p_fit.add_argument("--tolerance", type=float)
    p_fit.add_argument("--max-iterations", type=int)
    p_fit.add_argument("--rescale", type=float,
                       help="multiply x so the expected period is near 1")
    p_fit.add_argument("--seed", type=int, help="echoed into the report")
    p_fit.add_argument("--x-column", default="0")
    p_fit.add_argument("--y-column", default="1")
    p_fit.add_argument("--delimiter", default=",")
    p_fit.add_argument("--output-dir", default=".")
    p_fit.add_argument("--jobs", type=int, default=1,
                       help="fit multiple files concurrently")
    p_fit.set_defaults(func=cmd_fit)

    p_synth = sub.add_parser("synth", help="write a synthetic dataset")
    group = p_synth.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=sorted(PRESETS))
    group.add_argument("--spec-file", help="JSON synthetic spec")
    p_synth.add_argument("--seed", type=int)
    p_synth.add_argument("--sigma", type=float, help="noise level override")
    p_synth.add_argument("--out", required=True, help="dataset CSV path")
    p_synth.set_defaults(func=cmd_synth)

    p_spec = sub.add_parser("spectra", help="write column spectra as CSV")
    p_spec.add_argument("--family", choices=("monomial", "spline"))
    p_spec.add_argument("--max-degree", type=int, default=5)
    p_spec.add_argument("--degree", type=int, default=2)
    p_spec.add_argument("--breakpoints")
    p_spec.add_argument("--n-samples", type=int, default=1024)
    p_spec.add_argument("--data", help="dataset CSV instead of a basis family")
    p_spec.add_argument("--prefit-residual", action="store_true",
                        help="spectrum of the spline-only pre-fit residual")
    p_spec.add_argument("--x-column", default="0")
    p_spec.add_argument("--y-column", default="1")
    p_spec.add_argument("--delimiter", default=",")
    p_spec.add_argument("--out", required=True)
    p_spec.set_defaults(func=cmd_spectra)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SineSplineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
