"""Joint estimation of a harmonic periodic component and a B-spline trend.

The model is y(x) = sum_k [a_k sin(k w x) + b_k cos(k w x)] + spline(x).
For any fixed frequency w the coefficients are linear, so the search reduces
to a one-dimensional minimization of the projection residual over w; the
linear part is recovered by least squares at the optimum, together with a
coefficient covariance estimate.

Entry points: :func:`fit` / :class:`FitConfig` for the functional interface,
:class:`SineSplineRegressor` for the estimator interface, and the
``sinespline`` console script for file-based use.
"""

from .basis import (
    BasisMatrix,
    HarmonicSpec,
    SplineSpec,
    assemble_basis,
    bspline_basis,
    clamped_knot_vector,
    harmonic_basis,
)
from .errors import (
    BracketError,
    DomainError,
    IngestError,
    InsufficientDataError,
    InvalidSpecError,
    NonUniformSamplingError,
    NoPeriodicityError,
    RankDeficiencyError,
    SineSplineError,
)
from .estimator import SineSplineRegressor
from .fitting import FitConfig, FitResult, fit, initial_frequency, minimize_vpf
from .io import Dataset, RunReport, ingest_csv, parse_report
from .spectra import (
    InteractionReport,
    SpectrumReport,
    basis_spectra,
    compare_families,
    interaction_report,
    monomial_vandermonde,
)
from .synthetic import PRESETS, SyntheticSpec, generate_synthetic, get_preset
from .varpro import (
    CovarianceReport,
    LinearSolution,
    covariance,
    estimate_sigma2,
    project,
    solve_linear,
    vpf_cost,
)

__version__ = "0.1.0"

__all__ = [
    "BasisMatrix",
    "BracketError",
    "CovarianceReport",
    "Dataset",
    "DomainError",
    "FitConfig",
    "FitResult",
    "HarmonicSpec",
    "IngestError",
    "InsufficientDataError",
    "InteractionReport",
    "InvalidSpecError",
    "LinearSolution",
    "NonUniformSamplingError",
    "NoPeriodicityError",
    "PRESETS",
    "RankDeficiencyError",
    "RunReport",
    "SineSplineError",
    "SineSplineRegressor",
    "SpectrumReport",
    "SplineSpec",
    "SyntheticSpec",
    "assemble_basis",
    "basis_spectra",
    "bspline_basis",
    "clamped_knot_vector",
    "compare_families",
    "covariance",
    "estimate_sigma2",
    "fit",
    "generate_synthetic",
    "get_preset",
    "harmonic_basis",
    "ingest_csv",
    "initial_frequency",
    "interaction_report",
    "minimize_vpf",
    "monomial_vandermonde",
    "parse_report",
    "project",
    "solve_linear",
    "vpf_cost",
    "__version__",
]
