"""Dataset ingestion and every file format the command line emits.

All numeric output uses 17 significant digits, which round-trips IEEE
doubles exactly; re-ingesting a written dataset reproduces it bit for bit.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import IngestError, InvalidSpecError
from .fitting import FitResult
from .spectra import SpectrumReport

__all__ = [
    "Dataset",
    "DatasetMeta",
    "RunReport",
    "ingest_csv",
    "write_dataset_csv",
    "write_truth_sidecar",
    "write_components_csv",
    "write_covariance_csv",
    "write_spectra_csv",
    "build_run_report",
    "write_report",
    "parse_report",
]

FLOAT_FMT = "%.17g"


def _fmt(v: float) -> str:
    return FLOAT_FMT % float(v)


@dataclass(frozen=True)
class DatasetMeta:
    source: str = ""
    rescale: float | None = None
    rows: int = 0


@dataclass(frozen=True)
class Dataset:
    """Paired sample locations and measurements with provenance metadata."""

    x: np.ndarray
    y: np.ndarray
    meta: DatasetMeta = field(default_factory=DatasetMeta)

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or y.ndim != 1 or len(x) != len(y):
            raise InvalidSpecError("x and y must be 1-D vectors of equal length")
        if len(x) < 2:
            raise InvalidSpecError("a dataset needs at least two samples")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise InvalidSpecError("dataset values must be finite")
        if not np.all(np.diff(x) > 0):
            raise InvalidSpecError("x must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return len(self.x)


def _parse_cell(cell: str, lineno: int, path: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise IngestError(
            f"{path}: line {lineno}: could not parse {cell!r} as a number"
        ) from None
    if not math.isfinite(value):
        raise IngestError(f"{path}: line {lineno}: non-finite value {cell!r}")
    return value


def ingest_csv(path, x_column=0, y_column=1, rescale: float | None = None,
               delimiter: str = ",") -> Dataset:
    """Read a two-column numeric CSV into a validated Dataset.

    Parameters
    ----------
    path : str or Path
        File to read.
    x_column, y_column : int or str
        Column selectors; names require a header row. A header is detected
        when the first row has a non-numeric cell.
    rescale : float, optional
        Multiply x by this factor after reading (maps the expected period
        near 1).
    delimiter : str
        Field separator, default comma.

    Returns
    -------
    Dataset

    Raises
    ------
    IngestError
        Missing file, malformed or non-finite cell (with its line number),
        unknown column, non-monotone x, or too few rows.
    """
    path = Path(path)
    if not path.exists():
        raise IngestError(f"no such file: {path}")
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh, delimiter=delimiter))
    rows = [(i + 1, row) for i, row in enumerate(rows) if any(c.strip() for c in row)]
    if not rows:
        raise IngestError(f"{path}: file holds no data")

    header: list[str] | None = None
    first_line, first = rows[0]
    try:
        float(first[0])
    except ValueError:
        header = [c.strip() for c in first]
        rows = rows[1:]

    def _col(selector, axis: str) -> int:
        if isinstance(selector, str) and not selector.lstrip("-").isdigit():
            if header is None:
                raise IngestError(
                    f"{path}: {axis}-column {selector!r} needs a header row"
                )
            try:
                return header.index(selector)
            except ValueError:
                raise IngestError(
                    f"{path}: no column named {selector!r} in header {header}"
                ) from None
        return int(selector)

    ix, iy = _col(x_column, "x"), _col(y_column, "y")
    xs, ys = [], []
    for lineno, row in rows:
        if max(ix, iy) >= len(row):
            raise IngestError(
                f"{path}: line {lineno}: expected at least {max(ix, iy) + 1} columns, got {len(row)}"
            )
        xs.append(_parse_cell(row[ix].strip(), lineno, str(path)))
        ys.append(_parse_cell(row[iy].strip(), lineno, str(path)))

    x = np.asarray(xs)
    y = np.asarray(ys)
    if len(x) < 2:
        raise IngestError(f"{path}: need at least two data rows")
    if not np.all(np.diff(x) > 0):
        raise IngestError(f"{path}: x column is not strictly increasing")
    if rescale is not None:
        x = x * float(rescale)
    return Dataset(x=x, y=y, meta=DatasetMeta(source=str(path), rescale=rescale, rows=len(x)))


def write_dataset_csv(path, dataset: Dataset) -> None:
    lines = ["x,y"]
    for xv, yv in zip(dataset.x, dataset.y):
        lines.append(f"{_fmt(xv)},{_fmt(yv)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_truth_sidecar(path, result) -> None:
    """Ground-truth parameters and components for a synthetic dataset."""
    spec = result.spec
    payload = {
        "n_samples": spec.n_samples,
        "degree": spec.sspec.degree,
        "breakpoints": list(spec.sspec.breakpoints),
        "beta_true": list(spec.beta_true),
        "omega_true": spec.omega_true,
        "harmonic_amplitudes": [list(p) for p in spec.harmonic_amplitudes],
        "noise_sigma": spec.noise_sigma,
        "seed": spec.seed,
        "trend": result.trend.tolist(),
        "periodic": result.periodic.tolist(),
        "noise": result.noise.tolist(),
    }
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def write_components_csv(path, x, y, result: FitResult) -> None:
    lines = ["x,y,y_model,y_periodic,y_spline,residual"]
    for i in range(len(x)):
        lines.append(",".join(_fmt(v) for v in (
            x[i], y[i], result.y_model[i], result.y_periodic[i],
            result.y_spline[i], result.residual[i],
        )))
    Path(path).write_text("\n".join(lines) + "\n")


def coefficient_labels(n_alpha: int, n_beta: int) -> list:
    return [f"alpha_{i + 1}" for i in range(n_alpha)] + [
        f"beta_{i + 1}" for i in range(n_beta)
    ]


def write_covariance_csv(path, cov: np.ndarray, n_alpha: int, n_beta: int) -> None:
    labels = coefficient_labels(n_alpha, n_beta)
    lines = ["," + ",".join(labels)]
    for lab, row in zip(labels, cov):
        lines.append(lab + "," + ",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_spectra_csv(path, report: SpectrumReport) -> None:
    lines = ["frequency," + ",".join(report.labels)]
    for k in range(len(report.frequencies)):
        lines.append(
            _fmt(report.frequencies[k]) + ","
            + ",".join(_fmt(v) for v in report.magnitudes[k])
        )
    Path(path).write_text("\n".join(lines) + "\n")


@dataclass(frozen=True)
class RunReport:
    """Flat key-value view of a completed fit, ready for the report file."""

    config_echo: dict
    omega_init: float
    omega_hat: float
    period: float
    alpha: np.ndarray
    alpha_stderr: np.ndarray
    beta: np.ndarray
    beta_stderr: np.ndarray
    amplitudes: np.ndarray
    amplitude_stderr: np.ndarray
    sigma2: float
    residual_std: float
    residual_max_abs: float
    n_samples: int
    iterations: int
    converged: bool
    notes: tuple = ()

    def __post_init__(self):
        if self.period <= 0:
            raise InvalidSpecError("period must be positive")
        for name in ("alpha_stderr", "beta_stderr"):
            if np.any(np.asarray(getattr(self, name)) < 0):
                raise InvalidSpecError(f"{name} must be non-negative")


def build_run_report(result: FitResult, n_samples: int, config_echo: dict) -> RunReport:
    se = np.sqrt(np.clip(np.diag(result.covariance.covariance), 0.0, None))
    n_alpha = len(result.alpha)
    alpha_se, beta_se = se[:n_alpha], se[n_alpha:]
    # per-harmonic amplitude and a combined stderr for the (sin, cos) pair
    amps = np.hypot(result.alpha[0::2], result.alpha[1::2])
    amp_se = np.hypot(alpha_se[0::2], alpha_se[1::2])
    notes = []
    if np.all(amps < 3.0 * amp_se):
        notes.append("no significant periodic component: all harmonic "
                     "amplitudes are below 3 standard errors")
    return RunReport(
        config_echo=dict(config_echo),
        omega_init=result.omega_init,
        omega_hat=result.omega_hat,
        period=2.0 * np.pi / result.omega_hat,
        alpha=result.alpha,
        alpha_stderr=alpha_se,
        beta=result.beta,
        beta_stderr=beta_se,
        amplitudes=amps,
        amplitude_stderr=amp_se,
        sigma2=result.covariance.sigma2,
        residual_std=float(np.std(result.residual)),
        residual_max_abs=float(np.max(np.abs(result.residual))),
        n_samples=int(n_samples),
        iterations=result.iterations,
        converged=result.converged,
        notes=tuple(notes),
    )


def format_report(report: RunReport) -> str:
    lines = []
    for key in sorted(report.config_echo):
        lines.append(f"config_{key}={report.config_echo[key]}")
    lines.append(f"n_samples={report.n_samples}")
    lines.append(f"omega_init={_fmt(report.omega_init)}")
    lines.append(f"omega_hat={_fmt(report.omega_hat)}")
    lines.append(f"period={_fmt(report.period)}")
    lines.append(f"sigma2={_fmt(report.sigma2)}")
    lines.append(f"residual_std={_fmt(report.residual_std)}")
    lines.append(f"residual_max_abs={_fmt(report.residual_max_abs)}")
    lines.append(f"iterations={report.iterations}")
    lines.append(f"converged={'true' if report.converged else 'false'}")
    for i, (v, s) in enumerate(zip(report.alpha, report.alpha_stderr), start=1):
        lines.append(f"alpha_{i}={_fmt(v)}")
        lines.append(f"alpha_{i}_stderr={_fmt(s)}")
    for i, (v, s) in enumerate(zip(report.beta, report.beta_stderr), start=1):
        lines.append(f"beta_{i}={_fmt(v)}")
        lines.append(f"beta_{i}_stderr={_fmt(s)}")
    for i, (v, s) in enumerate(zip(report.amplitudes, report.amplitude_stderr), start=1):
        lines.append(f"amplitude_{i}={_fmt(v)}")
        lines.append(f"amplitude_{i}_stderr={_fmt(s)}")
    for i, note in enumerate(report.notes, start=1):
        lines.append(f"note_{i}={note}")
    return "\n".join(lines) + "\n"


def write_report(path, report: RunReport) -> None:
    Path(path).write_text(format_report(report))


def parse_report(path) -> dict:
    """Read a key=value report back into a dict of strings."""
    out = {}
    for line in Path(path).read_text().splitlines():
        if "=" in line:
            key, _, value = line.partition("=")
            out[key] = value
    return out
