"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

from .errors import InvalidSpecError, NonUniformSamplingError

__all__ = [
    "as_float_vector",
    "check_same_length",
    "check_uniform_spacing",
    "check_strictly_increasing",
]


def as_float_vector(values, name: str = "array") -> np.ndarray:
    """Coerce to a finite 1-D float64 array.

    Parameters
    ----------
    values : array_like
        Input data; anything numpy can turn into a 1-D array.
    name : str
        Name used in error messages.

    Returns
    -------
    numpy.ndarray
        Contiguous float64 vector.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise InvalidSpecError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidSpecError(f"{name} contains non-finite values")
    return np.ascontiguousarray(arr)


def check_same_length(x: np.ndarray, y: np.ndarray) -> None:
    if len(x) != len(y):
        raise InvalidSpecError(f"x and y lengths differ: {len(x)} != {len(y)}")


def check_strictly_increasing(arr: np.ndarray, name: str = "array") -> None:
    if len(arr) >= 2 and not np.all(np.diff(arr) > 0):
        raise InvalidSpecError(f"{name} must be strictly increasing")


def check_uniform_spacing(x: np.ndarray, rtol: float = 1e-6) -> float:
    """Validate uniform sample spacing and return the step.

    Parameters
    ----------
    x : numpy.ndarray
        Sample locations, at least two.
    rtol : float
        Allowed relative deviation of any step from the mean step.

    Returns
    -------
    float
        The mean spacing.

    Raises
    ------
    NonUniformSamplingError
        If any step deviates beyond ``rtol``; the message suggests resampling.
    """
    if len(x) < 2:
        raise InvalidSpecError("need at least two samples")
    steps = np.diff(x)
    dx = float(steps.mean())
    if dx <= 0:
        raise InvalidSpecError("sample locations must be strictly increasing")
    if np.max(np.abs(steps - dx)) > rtol * abs(dx):
        raise NonUniformSamplingError(
            "sample spacing is not uniform (beyond relative tolerance "
            f"{rtol:g}); resample onto a uniform grid before fitting"
        )
    return dx
