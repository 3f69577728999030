"""Column spectra of basis families and the spline-versus-monomial comparison.

A trend basis interacts with a sinusoid to the extent that its columns carry
spectral energy at the sinusoid's frequency. This module computes per-column
DFT magnitude spectra for any basis matrix and builds a comparison table
between the clamped B-spline family and a global monomial family evaluated
on [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisMatrix, SplineSpec, bspline_basis
from .errors import DomainError, InsufficientDataError, InvalidSpecError
from .validation import as_float_vector

__all__ = [
    "SpectrumReport",
    "InteractionReport",
    "monomial_vandermonde",
    "basis_spectra",
    "compare_families",
    "interaction_report",
]


@dataclass(frozen=True)
class SpectrumReport:
    """One-sided DFT magnitudes per analyzed column.

    Attributes
    ----------
    frequencies : numpy.ndarray
        Bin frequencies in cycles per unit x, strictly increasing from 0.
    magnitudes : numpy.ndarray
        Shape (n_bins, n_columns), non-negative.
    labels : tuple of str
        Column tags.
    normalization : str
        ``"column-l2"`` if each column's spectrum was divided by the column
        2-norm, ``"none"`` for the raw transform convention.
    """

    frequencies: np.ndarray
    magnitudes: np.ndarray
    labels: tuple
    normalization: str = "column-l2"

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        m = np.asarray(self.magnitudes, dtype=float)
        if m.ndim != 2 or m.shape[0] != len(f):
            raise InvalidSpecError("magnitudes must be (n_bins, n_columns)")
        if np.any(m < 0):
            raise InvalidSpecError("magnitudes must be non-negative")
        if f[0] != 0 or np.any(np.diff(f) <= 0):
            raise InvalidSpecError("frequencies must increase strictly from 0")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "magnitudes", m)
        object.__setattr__(self, "labels", tuple(self.labels))

    def bin_nearest(self, cycles: float) -> int:
        return int(np.argmin(np.abs(self.frequencies - cycles)))


@dataclass(frozen=True)
class InteractionReport:
    """Spline-versus-monomial interaction comparison at a probe frequency.

    Attributes
    ----------
    probe_cycles : float
        Probe frequency in cycles per unit x.
    cutoff_cycles : float
        High-frequency cutoff used for the energy metric.
    rows : tuple
        One (family, label, at_probe_magnitude, high_frequency_energy) per
        column of both families.
    winners : dict
        Metric name -> family name (or "tie"); smaller is better for both
        the per-family maximum probe magnitude and the summed high-frequency
        energy.
    """

    probe_cycles: float
    cutoff_cycles: float
    rows: tuple
    winners: dict


def monomial_vandermonde(n_samples: int, max_degree: int) -> BasisMatrix:
    """Columns x^0 .. x^max_degree on uniform points spanning [-1, 1].

    Parameters
    ----------
    n_samples : int
        Number of points, at least max_degree + 1.
    max_degree : int
        Highest monomial degree, >= 0.

    Returns
    -------
    BasisMatrix
        Labels ``x^0 .. x^max_degree``.
    """
    if max_degree < 0:
        raise InvalidSpecError("max_degree must be non-negative")
    if n_samples < max_degree + 1:
        raise InsufficientDataError(
            f"{n_samples} samples cannot support degree {max_degree}"
        )
    x = np.linspace(-1.0, 1.0, n_samples)
    values = np.column_stack([x**j for j in range(max_degree + 1)])
    return BasisMatrix(values, tuple(f"x^{j}" for j in range(max_degree + 1)))


def basis_spectra(B, sample_rate: float, normalize: bool = True) -> SpectrumReport:
    """Per-column one-sided DFT magnitude spectra, DC bin included.

    Parameters
    ----------
    B : BasisMatrix or array_like
        Columns to analyze.
    sample_rate : float
        Samples per unit x; converts bin indices to cycles per unit x.
    normalize : bool
        Divide each column's spectrum by the column 2-norm so families of
        different natural scales are comparable (a zero column stays zero).

    Returns
    -------
    SpectrumReport
    """
    if isinstance(B, BasisMatrix):
        values, labels = B.values, B.column_labels
    else:
        values = np.asarray(B, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        labels = tuple(f"col_{j}" for j in range(values.shape[1]))
    if values.size == 0:
        raise InvalidSpecError("empty basis")
    if not np.all(np.isfinite(values)):
        raise InvalidSpecError("basis columns must be finite")
    if sample_rate <= 0:
        raise InvalidSpecError("sample_rate must be positive")
    n = values.shape[0]
    mags = np.abs(np.fft.rfft(values, axis=0))
    freqs = np.fft.rfftfreq(n, d=1.0 / float(sample_rate))
    if normalize:
        norms = np.linalg.norm(values, axis=0)
        scale = np.where(norms > 0, norms, 1.0)
        mags = mags / scale
    return SpectrumReport(
        frequencies=freqs,
        magnitudes=mags,
        labels=labels,
        normalization="column-l2" if normalize else "none",
    )


def _family_metrics(report: SpectrumReport, probe_cycles: float, cutoff_cycles: float):
    k = report.bin_nearest(probe_cycles)
    at_probe = report.magnitudes[k, :]
    above = report.frequencies > cutoff_cycles
    high = np.sum(report.magnitudes[above, :] ** 2, axis=0)
    return at_probe, high


def compare_families(
    a: SpectrumReport,
    b: SpectrumReport,
    probe_cycles: float,
    cutoff_cycles: float,
    names=("a", "b"),
) -> InteractionReport:
    """Tabulate both families' probe-bin magnitudes and high-frequency energy.

    Winners are decided per metric on the family aggregate (max magnitude at
    the probe bin, summed energy above the cutoff); equal aggregates within
    1e-12 relative are a tie.
    """
    at_a, high_a = _family_metrics(a, probe_cycles, cutoff_cycles)
    at_b, high_b = _family_metrics(b, probe_cycles, cutoff_cycles)
    rows = tuple(
        [(names[0], lab, float(v), float(h)) for lab, v, h in zip(a.labels, at_a, high_a)]
        + [(names[1], lab, float(v), float(h)) for lab, v, h in zip(b.labels, at_b, high_b)]
    )

    def _winner(va: float, vb: float) -> str:
        scale = max(abs(va), abs(vb), 1e-300)
        if abs(va - vb) <= 1e-12 * scale:
            return "tie"
        return names[0] if va < vb else names[1]

    winners = {
        "at_probe": _winner(float(at_a.max()), float(at_b.max())),
        "high_frequency_energy": _winner(float(high_a.sum()), float(high_b.sum())),
    }
    return InteractionReport(
        probe_cycles=float(probe_cycles),
        cutoff_cycles=float(cutoff_cycles),
        rows=rows,
        winners=winners,
    )


def interaction_report(
    sspec: SplineSpec,
    max_degree: int,
    omega_probe: float,
    n_samples: int = 1024,
    cutoff_cycles: float | None = None,
) -> InteractionReport:
    """Compare the clamped B-spline family against monomials at a probe frequency.

    Both families are evaluated on ``n_samples`` uniform points over their
    own windows (the breakpoint span for the splines, [-1, 1] for the
    monomials), transformed with :func:`basis_spectra` (column-l2
    normalization), and compared at the bin nearest ``omega_probe / 2pi``
    plus on total energy above the cutoff (default: the probe frequency).

    Raises
    ------
    DomainError
        If the probe frequency exceeds the Nyquist frequency of either
        family's sampling.
    """
    if omega_probe <= 0:
        raise InvalidSpecError("omega_probe must be positive")
    probe_cycles = omega_probe / (2.0 * np.pi)

    lo, hi = sspec.span
    xs = np.linspace(lo, hi, n_samples)
    rate_spline = (n_samples - 1) / (hi - lo)
    rate_mono = (n_samples - 1) / 2.0
    for rate, name in ((rate_spline, "spline"), (rate_mono, "monomial")):
        if probe_cycles > rate / 2.0:
            raise DomainError(
                f"probe at {probe_cycles:g} cycles exceeds the {name} family "
                f"Nyquist frequency {rate / 2.0:g}"
            )

    spline_spec = basis_spectra(bspline_basis(xs, sspec), rate_spline)
    mono_spec = basis_spectra(monomial_vandermonde(n_samples, max_degree), rate_mono)
    if cutoff_cycles is None:
        cutoff_cycles = probe_cycles
    return compare_families(
        spline_spec, mono_spec, probe_cycles, float(cutoff_cycles),
        names=("spline", "monomial"),
    )
