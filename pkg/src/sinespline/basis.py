"""Evaluation matrices for the clamped B-spline trend basis and the harmonic basis.

The trend subspace is spanned by clamped B-splines of a given degree over a
breakpoint sequence; the periodic subspace by sine/cosine pairs at integer
multiples of a base angular frequency. Both are materialized as dense
column-stacked matrices over the sample locations, with column labels that
identify each function, so downstream code can split coefficient vectors
without positional bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidSpecError
from .validation import as_float_vector, check_strictly_increasing

__all__ = [
    "SplineSpec",
    "HarmonicSpec",
    "BasisMatrix",
    "clamped_knot_vector",
    "bspline_basis",
    "harmonic_basis",
    "assemble_basis",
]


@dataclass(frozen=True)
class SplineSpec:
    """Degree and breakpoints defining the piecewise-polynomial trend space.

    Attributes
    ----------
    degree : int
        Polynomial degree of each piece, >= 0.
    breakpoints : tuple of float
        Strictly increasing joint locations, including both interval
        endpoints; at least two entries.
    """

    degree: int
    breakpoints: tuple

    def __post_init__(self):
        if not isinstance(self.degree, (int, np.integer)) or self.degree < 0:
            raise InvalidSpecError(f"degree must be a non-negative integer, got {self.degree!r}")
        bp = tuple(float(b) for b in np.atleast_1d(np.asarray(self.breakpoints, dtype=float)))
        if len(bp) < 2:
            raise InvalidSpecError("breakpoints must contain at least two values")
        if not all(np.isfinite(bp)):
            raise InvalidSpecError("breakpoints must be finite")
        check_strictly_increasing(np.asarray(bp), "breakpoints")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "breakpoints", bp)

    @property
    def dimension(self) -> int:
        """Number of basis functions: len(breakpoints) + degree - 1."""
        return len(self.breakpoints) + self.degree - 1

    @property
    def span(self) -> tuple:
        return (self.breakpoints[0], self.breakpoints[-1])


@dataclass(frozen=True)
class HarmonicSpec:
    """Base angular frequency and harmonic count for the periodic basis.

    Attributes
    ----------
    omega : float
        Base angular frequency in radians per unit of x, > 0.
    harmonics : int
        Number of harmonics (the base counts as the first), >= 1.
    """

    omega: float
    harmonics: int

    def __post_init__(self):
        if not np.isfinite(self.omega) or self.omega <= 0:
            raise InvalidSpecError(f"omega must be a positive real, got {self.omega!r}")
        if not isinstance(self.harmonics, (int, np.integer)) or self.harmonics < 1:
            raise InvalidSpecError(f"harmonics must be a positive integer, got {self.harmonics!r}")
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "harmonics", int(self.harmonics))

    @property
    def dimension(self) -> int:
        """Number of basis functions: 2 * harmonics."""
        return 2 * self.harmonics


@dataclass(frozen=True)
class BasisMatrix:
    """Dense evaluation of a basis family at the sample locations.

    Attributes
    ----------
    values : numpy.ndarray
        Shape (n_samples, n_functions); finite.
    column_labels : tuple of str
        One tag per column, e.g. ``sin_1``/``cos_1`` or ``spline_3``.
    """

    values: np.ndarray
    column_labels: tuple = field(default=())

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2:
            raise InvalidSpecError(f"basis values must be 2-D, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidSpecError("basis values contain non-finite entries")
        labels = tuple(self.column_labels)
        if labels and len(labels) != v.shape[1]:
            raise InvalidSpecError(
                f"{len(labels)} labels for {v.shape[1]} columns"
            )
        if not labels:
            labels = tuple(f"col_{j}" for j in range(v.shape[1]))
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "column_labels", labels)

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_columns(self) -> int:
        return self.values.shape[1]

    def select(self, labels) -> "BasisMatrix":
        """Return the sub-matrix holding exactly the given labels, in order."""
        index = {lab: j for j, lab in enumerate(self.column_labels)}
        try:
            cols = [index[lab] for lab in labels]
        except KeyError as exc:
            raise InvalidSpecError(f"unknown column label {exc.args[0]!r}") from exc
        return BasisMatrix(self.values[:, cols], tuple(labels))

    def hstack(self, other: "BasisMatrix") -> "BasisMatrix":
        if other.n_samples != self.n_samples:
            raise InvalidSpecError("row counts differ")
        return BasisMatrix(
            np.hstack([self.values, other.values]),
            self.column_labels + other.column_labels,
        )


def clamped_knot_vector(spec: SplineSpec) -> np.ndarray:
    """Knot sequence with both endpoints at multiplicity degree + 1.

    Parameters
    ----------
    spec : SplineSpec

    Returns
    -------
    numpy.ndarray
        Non-decreasing knots of length ``len(breakpoints) + 2 * degree``; the
        clamped basis over them has exactly ``spec.dimension`` functions.
    """
    bp = np.asarray(spec.breakpoints, dtype=float)
    return np.concatenate([np.full(spec.degree, bp[0]), bp, np.full(spec.degree, bp[-1])])


def bspline_basis(x, spec: SplineSpec) -> BasisMatrix:
    """Evaluate all clamped B-spline basis functions at the sample locations.

    Columns follow the Cox-de Boor recursion over the clamped knot vector.
    The last basis function evaluates to 1 at the final breakpoint
    (right-closed last interval), so no sample row is ever all-zero.

    Parameters
    ----------
    x : array_like
        Sample locations, all within [breakpoints[0], breakpoints[-1]].
    spec : SplineSpec

    Returns
    -------
    BasisMatrix
        Shape (len(x), spec.dimension), labels ``spline_1..spline_m``.

    Raises
    ------
    DomainError
        If any sample lies outside the breakpoint span (no extrapolation).
    """
    x = as_float_vector(x, "x")
    lo, hi = spec.span
    if np.any(x < lo) or np.any(x > hi):
        raise DomainError(
            f"samples outside the breakpoint span [{lo:g}, {hi:g}]; extrapolation is not defined"
        )
    t = clamped_knot_vector(spec)
    deg = spec.degree
    n_intervals = len(t) - 1

    # Degree-0 seed: half-open indicators, except the last nonzero-width
    # interval which is closed on the right so x == hi is representable.
    N = np.zeros((len(x), n_intervals))
    widths = np.diff(t)
    nonzero = np.nonzero(widths > 0)[0]
    for i in nonzero:
        N[:, i] = (x >= t[i]) & (x < t[i + 1])
    last = nonzero[-1]
    N[x == t[-1], last] = 1.0

    for k in range(1, deg + 1):
        prev = N
        N = np.zeros((len(x), n_intervals - k))
        for i in range(n_intervals - k):
            left_den = t[i + k] - t[i]
            right_den = t[i + k + 1] - t[i + 1]
            acc = 0.0
            # 0/0 := 0 at repeated knots
            if left_den > 0:
                acc = (x - t[i]) / left_den * prev[:, i]
            if right_den > 0:
                acc = acc + (t[i + k + 1] - x) / right_den * prev[:, i + 1]
            N[:, i] = acc

    labels = tuple(f"spline_{j + 1}" for j in range(spec.dimension))
    return BasisMatrix(N, labels)


def harmonic_basis(x, spec: HarmonicSpec) -> BasisMatrix:
    """Evaluate the sine/cosine harmonic basis at the sample locations.

    Columns are ordered ``sin(k w x), cos(k w x)`` for k = 1..harmonics.

    Parameters
    ----------
    x : array_like
        Sample locations.
    spec : HarmonicSpec

    Returns
    -------
    BasisMatrix
        Shape (len(x), 2 * harmonics), labels ``sin_k``/``cos_k``.
    """
    x = as_float_vector(x, "x")
    cols = []
    labels = []
    for k in range(1, spec.harmonics + 1):
        w = k * spec.omega
        cols.append(np.sin(w * x))
        cols.append(np.cos(w * x))
        labels.append(f"sin_{k}")
        labels.append(f"cos_{k}")
    return BasisMatrix(np.column_stack(cols), tuple(labels))


def assemble_basis(x, hspec: HarmonicSpec, sspec: SplineSpec) -> BasisMatrix:
    """Concatenate the harmonic and spline bases: [periodic | trend].

    Parameters
    ----------
    x : array_like
        Sample locations, within the breakpoint span.
    hspec : HarmonicSpec
    sspec : SplineSpec

    Returns
    -------
    BasisMatrix
        2*harmonics + spline dimension columns, labels preserved.
    """
    return harmonic_basis(x, hspec).hstack(bspline_basis(x, sspec))
