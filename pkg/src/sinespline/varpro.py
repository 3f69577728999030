"""Least-squares solve, projection, reduced cost, and covariance propagation.

With the frequency fixed, the model is linear: y ~ B(w) gamma. The linear
coefficients are eliminated through an orthogonal least-squares solve, which
reduces the whole fit to a one-dimensional search over the frequency via the
projection residual cost. Once the frequency is settled, the same machinery
propagates the estimated noise variance into a covariance matrix for gamma.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisMatrix, HarmonicSpec, SplineSpec, assemble_basis
from .errors import InsufficientDataError, InvalidSpecError, RankDeficiencyError
from .validation import as_float_vector

__all__ = [
    "LinearSolution",
    "CovarianceReport",
    "solve_linear",
    "project",
    "vpf_cost",
    "estimate_sigma2",
    "covariance",
]


@dataclass(frozen=True)
class LinearSolution:
    """Least-squares solution of y ~ B gamma.

    Attributes
    ----------
    gamma : numpy.ndarray
        Minimum-norm least-squares coefficients, one per basis column.
    model : numpy.ndarray
        Fitted values B @ gamma.
    residual : numpy.ndarray
        y - model.
    """

    gamma: np.ndarray
    model: np.ndarray
    residual: np.ndarray


@dataclass(frozen=True)
class CovarianceReport:
    """Noise variance, degrees of freedom, and coefficient covariance.

    Attributes
    ----------
    sigma2 : float
        Estimated noise variance (non-negative).
    n_df : int
        Parameters counted against the sample budget: the linear
        coefficients plus one for the frequency.
    covariance : numpy.ndarray
        Symmetric PSD matrix over gamma.
    """

    sigma2: float
    n_df: int
    covariance: np.ndarray


def _values(B) -> np.ndarray:
    return B.values if isinstance(B, BasisMatrix) else np.asarray(B, dtype=float)


def solve_linear(B, y) -> LinearSolution:
    """Minimum-norm least squares via SVD with a rank check.

    Singular values below ``max_sv * rows * eps`` are treated as zero; if the
    effective rank falls short of the column count the configuration is
    rejected rather than silently regularized.

    Parameters
    ----------
    B : BasisMatrix or array_like
        Shape (n, m) with n >= m.
    y : array_like
        Length-n observations.

    Returns
    -------
    LinearSolution

    Raises
    ------
    RankDeficiencyError
        If the numerical rank of B is below its column count.
    InvalidSpecError
        On dimension mismatch or too few rows.
    """
    A = _values(B)
    y = as_float_vector(y, "y")
    if A.ndim != 2:
        raise InvalidSpecError("B must be a matrix")
    n, m = A.shape
    if n != len(y):
        raise InvalidSpecError(f"B has {n} rows but y has {len(y)} entries")
    if n < m:
        raise InvalidSpecError(f"underdetermined system: {n} rows < {m} columns")
    rcond = n * np.finfo(float).eps
    gamma, _, rank, _ = np.linalg.lstsq(A, y, rcond=rcond)
    if rank < m:
        raise RankDeficiencyError(
            f"basis matrix of shape {n}x{m} has numerical rank {rank}; "
            "the configuration does not identify all coefficients"
        )
    model = A @ gamma
    return LinearSolution(gamma=gamma, model=model, residual=y - model)


def project(B, y) -> np.ndarray:
    """Orthogonal projection of y onto the column space of B.

    Parameters
    ----------
    B : BasisMatrix or array_like
    y : array_like

    Returns
    -------
    numpy.ndarray
        The projected vector; applying the projection twice changes nothing.
    """
    return solve_linear(B, y).model


def vpf_cost(omega: float, x, y, harmonics: int, sspec: SplineSpec) -> float:
    """Reduced cost at a trial frequency: squared norm of the projection residual.

    Equals the minimum over all linear coefficients of the squared residual
    norm for the combined harmonic-plus-spline basis at ``omega``.

    Parameters
    ----------
    omega : float
        Trial angular frequency, > 0.
    x, y : array_like
        Samples.
    harmonics : int
        Number of harmonics in the periodic basis.
    sspec : SplineSpec
        Trend basis specification.

    Returns
    -------
    float
        Non-negative cost.
    """
    B = assemble_basis(x, HarmonicSpec(omega=omega, harmonics=harmonics), sspec)
    r = solve_linear(B, y).residual
    return float(r @ r)


def estimate_sigma2(residual, n_linear: int):
    """Unbiased noise-variance estimate from the fit residual.

    The degrees of freedom include the frequency: n_df = n_linear + 1.

    Parameters
    ----------
    residual : array_like
        Fit residual vector.
    n_linear : int
        Number of linear coefficients in the model.

    Returns
    -------
    (float, int)
        ``(sigma2, n_df)`` with ``sigma2 = ||r||^2 / (n - n_df)``.

    Raises
    ------
    InsufficientDataError
        If the residual length does not exceed n_df.
    """
    r = as_float_vector(residual, "residual")
    if n_linear < 1:
        raise InvalidSpecError("n_linear must be positive")
    n_df = int(n_linear) + 1
    n = len(r)
    if n <= n_df:
        raise InsufficientDataError(
            f"{n} samples cannot support {n_df} degrees of freedom"
        )
    return float(r @ r) / (n - n_df), n_df


def covariance(B, sigma2: float) -> CovarianceReport:
    """Covariance of the linear coefficients: sigma2 * pinv(B) pinv(B)^T.

    Parameters
    ----------
    B : BasisMatrix or array_like
        Full column rank basis matrix.
    sigma2 : float
        Noise variance, >= 0.

    Returns
    -------
    CovarianceReport
        With ``n_df = columns(B) + 1`` (the frequency counts as one
        parameter alongside the linear coefficients).

    Raises
    ------
    RankDeficiencyError
        If B is numerically rank deficient.
    """
    A = _values(B)
    if sigma2 < 0:
        raise InvalidSpecError("sigma2 must be non-negative")
    n, m = A.shape
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    tol = s[0] * n * np.finfo(float).eps if s.size else 0.0
    rank = int(np.sum(s > tol))
    if rank < m:
        raise RankDeficiencyError(
            f"basis matrix of shape {n}x{m} has numerical rank {rank}; covariance undefined"
        )
    G = (Vt.T / s) @ U.T  # pseudo-inverse from the same decomposition
    cov = sigma2 * (G @ G.T)
    cov = 0.5 * (cov + cov.T)  # enforce exact symmetry against roundoff
    return CovarianceReport(sigma2=float(sigma2), n_df=m + 1, covariance=cov)
