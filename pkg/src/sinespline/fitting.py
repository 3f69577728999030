"""End-to-end fitting: spectral initialization, 1-D search, coefficient recovery.

The pipeline mirrors how the problem factorizes: a spline-only pre-fit
exposes the periodic remainder, whose DFT peak seeds the frequency; a
bracketed scalar minimization of the reduced cost refines it; a final linear
solve at the refined frequency recovers the coefficients, the separated
components, and their covariance.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .basis import HarmonicSpec, SplineSpec, assemble_basis, bspline_basis
from .errors import (
    InsufficientDataError,
    InvalidSpecError,
    NoPeriodicityError,
    BracketError,
    SineSplineError,
)
from .spectra import SpectrumReport
from .validation import as_float_vector, check_same_length, check_uniform_spacing
from .varpro import CovarianceReport, covariance, estimate_sigma2, solve_linear, vpf_cost

__all__ = [
    "FitConfig",
    "FitResult",
    "initial_frequency",
    "minimize_vpf",
    "fit",
]


@dataclass(frozen=True)
class FitConfig:
    """Fixed quantities of a fit: trend spec, harmonic count, search settings.

    Attributes
    ----------
    sspec : SplineSpec
        Trend basis specification.
    harmonics : int
        Number of harmonics, >= 1.
    omega_bounds : tuple or None
        Optional (lower, upper) search bounds overriding the default
        one-bin bracket.
    omega_init_override : float or None
        Skip the spectral initialization and start from this frequency.
    max_iterations : int
        Cap on cost evaluations during the 1-D search.
    tolerance : float
        Relative convergence threshold on omega.
    """

    sspec: SplineSpec
    harmonics: int
    omega_bounds: tuple | None = None
    omega_init_override: float | None = None
    max_iterations: int = 200
    tolerance: float = 1e-8

    def __post_init__(self):
        if not isinstance(self.harmonics, (int, np.integer)) or self.harmonics < 1:
            raise InvalidSpecError("harmonics must be a positive integer")
        if self.omega_bounds is not None:
            lo, hi = self.omega_bounds
            if not (0 < lo < hi):
                raise InvalidSpecError("omega_bounds must satisfy 0 < lower < upper")
            object.__setattr__(self, "omega_bounds", (float(lo), float(hi)))
        if self.omega_init_override is not None and self.omega_init_override <= 0:
            raise InvalidSpecError("omega_init_override must be positive")
        if self.max_iterations < 1:
            raise InvalidSpecError("max_iterations must be positive")
        if not (self.tolerance > 0):
            raise InvalidSpecError("tolerance must be positive")
        object.__setattr__(self, "harmonics", int(self.harmonics))


@dataclass(frozen=True)
class FitResult:
    """Everything a completed fit produced.

    Attributes
    ----------
    omega_hat : float
        Estimated base angular frequency.
    gamma : numpy.ndarray
        All linear coefficients, harmonic block first.
    alpha : numpy.ndarray
        Harmonic coefficients, ordered sin_1, cos_1, ..., length 2*harmonics.
    beta : numpy.ndarray
        Spline coefficients.
    y_model, y_periodic, y_spline, residual : numpy.ndarray
        Fitted values, separated components, and y - y_model.
    covariance : CovarianceReport
    omega_init : float
        Frequency the search started from.
    iterations : int
        Cost evaluations spent by the search.
    converged : bool
    """

    omega_hat: float
    gamma: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    y_model: np.ndarray
    y_periodic: np.ndarray
    y_spline: np.ndarray
    residual: np.ndarray
    covariance: CovarianceReport
    omega_init: float
    iterations: int
    converged: bool


@contextmanager
def _stage(name: str):
    # annotate pipeline errors with the stage that raised them
    try:
        yield
    except SineSplineError as exc:
        raise type(exc)(f"[{name}] {exc}") from exc


def initial_frequency(x, y, sspec: SplineSpec):
    """Seed frequency from the DFT peak of the spline-only pre-fit residual.

    The trend alone is fitted first; whatever it cannot absorb carries the
    periodicity. The maximum-magnitude DFT bin of that residual (DC
    excluded) gives ``omega_init = 2 pi f_peak``.

    Parameters
    ----------
    x : array_like
        Uniformly spaced sample locations (relative tolerance 1e-6).
    y : array_like
        Measurements; at least twice the spline dimension.
    sspec : SplineSpec

    Returns
    -------
    (float, SpectrumReport)
        The seed frequency and the residual magnitude spectrum
        (normalization "none").

    Raises
    ------
    NonUniformSamplingError
        If x is not uniform; the DFT bin frequencies would be meaningless.
    NoPeriodicityError
        If the residual spectrum is flat (max bin below 1e-12 * ||y||).
    InsufficientDataError
        If fewer than 2 * spline-dimension samples are given.
    """
    x = as_float_vector(x, "x")
    y = as_float_vector(y, "y")
    check_same_length(x, y)
    dx = check_uniform_spacing(x)
    if len(y) < 2 * sspec.dimension:
        raise InsufficientDataError(
            f"need at least {2 * sspec.dimension} samples for a "
            f"{sspec.dimension}-dimensional trend basis, got {len(y)}"
        )
    sol = solve_linear(bspline_basis(x, sspec), y)
    mags = np.abs(np.fft.rfft(sol.residual))
    freqs = np.fft.rfftfreq(len(x), d=dx)
    spectrum = SpectrumReport(
        frequencies=freqs,
        magnitudes=mags[:, None],
        labels=("residual",),
        normalization="none",
    )
    k = 1 + int(np.argmax(mags[1:]))  # DC bin excluded
    if mags[k] < 1e-12 * np.linalg.norm(y):
        raise NoPeriodicityError(
            "spline pre-fit residual spectrum is flat; no periodic component detectable"
        )
    return 2.0 * np.pi * float(freqs[k]), spectrum


def minimize_vpf(x, y, config: FitConfig, omega_init: float):
    """Bracketed 1-D minimization of the reduced cost around the seed frequency.

    The bracket spans one DFT bin each side of ``omega_init`` (or
    ``config.omega_bounds`` verbatim when given) and is refined by bounded
    golden-section/parabolic interpolation until the step falls below
    ``tolerance * max(1, |omega_init|)``.

    Parameters
    ----------
    x, y : array_like
        Samples.
    config : FitConfig
    omega_init : float
        Seed frequency, > 0.

    Returns
    -------
    (float, int, bool)
        ``(omega_hat, iterations, converged)``; ``converged`` is False when
        the evaluation budget ran out, with the best frequency found so far.

    Raises
    ------
    BracketError
        If both bracket endpoints undercut the interior cost (the minimum
        is not inside), even after one bracket expansion.
    """
    x = as_float_vector(x, "x")
    y = as_float_vector(y, "y")
    check_same_length(x, y)
    if omega_init <= 0:
        raise InvalidSpecError("omega_init must be positive")

    def cost(w: float) -> float:
        try:
            return vpf_cost(w, x, y, config.harmonics, config.sspec)
        except SineSplineError as exc:
            raise type(exc)(f"cost evaluation failed at omega={w:.6g}: {exc}") from exc

    if config.omega_bounds is not None:
        lo, hi = config.omega_bounds
        center = omega_init if lo < omega_init < hi else 0.5 * (lo + hi)
    else:
        dx = check_uniform_spacing(x)
        delta = 2.0 * np.pi / (len(x) * dx)  # one DFT bin
        lo, hi = omega_init - delta, omega_init + delta
        center = omega_init

    f_center = cost(center)
    if cost(lo) < f_center and cost(hi) < f_center:
        # no interior minimum; expand once around the center, then give up
        half = hi - center
        lo, hi = center - 2.0 * half, center + 2.0 * half
        if cost(lo) < f_center and cost(hi) < f_center:
            raise BracketError(
                f"no interior minimum in [{lo:.6g}, {hi:.6g}] around "
                f"omega_init={omega_init:.6g}, even after expansion"
            )

    res = minimize_scalar(
        cost,
        bounds=(lo, hi),
        method="bounded",
        options={
            "xatol": config.tolerance * max(1.0, abs(omega_init)),
            "maxiter": config.max_iterations,
        },
    )
    return float(res.x), int(res.nfev), bool(res.status == 0)


def fit(x, y, config: FitConfig) -> FitResult:
    """Run the full pipeline and package the result.

    Stages: spectral initialization (skipped when
    ``config.omega_init_override`` is set), frequency search, linear solve at
    the refined frequency, component separation by column label, noise and
    covariance estimation. Errors raised inside a stage are re-raised with
    the stage name prefixed.

    Parameters
    ----------
    x, y : array_like
        Samples.
    config : FitConfig

    Returns
    -------
    FitResult
    """
    x = as_float_vector(x, "x")
    y = as_float_vector(y, "y")
    check_same_length(x, y)

    if config.omega_init_override is not None:
        omega_init = float(config.omega_init_override)
    else:
        with _stage("initial-frequency"):
            omega_init, _ = initial_frequency(x, y, config.sspec)

    with _stage("frequency-search"):
        omega_hat, iterations, converged = minimize_vpf(x, y, config, omega_init)

    with _stage("linear-solve"):
        hspec = HarmonicSpec(omega=omega_hat, harmonics=config.harmonics)
        B = assemble_basis(x, hspec, config.sspec)
        sol = solve_linear(B, y)

    periodic_labels = [lab for lab in B.column_labels if lab.startswith(("sin_", "cos_"))]
    spline_labels = [lab for lab in B.column_labels if lab.startswith("spline_")]
    is_periodic = np.array([lab in set(periodic_labels) for lab in B.column_labels])
    alpha = sol.gamma[is_periodic]
    beta = sol.gamma[~is_periodic]
    y_periodic = B.select(periodic_labels).values @ alpha
    y_spline = B.select(spline_labels).values @ beta

    with _stage("covariance"):
        sigma2, _ = estimate_sigma2(sol.residual, len(sol.gamma))
        cov = covariance(B, sigma2)

    return FitResult(
        omega_hat=omega_hat,
        gamma=sol.gamma,
        alpha=alpha,
        beta=beta,
        y_model=sol.model,
        y_periodic=y_periodic,
        y_spline=y_spline,
        residual=sol.residual,
        covariance=cov,
        omega_init=omega_init,
        iterations=iterations,
        converged=converged,
    )
