"""Exception hierarchy.

Every error raised by this package derives from :class:`SineSplineError`.
Input and configuration problems are also ValueError subclasses so that
callers using generic validation idioms keep working; numerical failures
(rank loss, missing periodicity, bracket collapse) derive from
ArithmeticError instead.

All constructors take a single message argument; pipeline stages re-raise
the same type with a stage prefix.
"""


class SineSplineError(Exception):
    """Base class for all package errors."""


class InvalidSpecError(SineSplineError, ValueError):
    """A basis or generator specification violates its invariants."""


class DomainError(SineSplineError, ValueError):
    """Evaluation points fall outside the breakpoint span."""


class NonUniformSamplingError(SineSplineError, ValueError):
    """Sample locations are not uniformly spaced where the DFT requires it."""


class InsufficientDataError(SineSplineError, ValueError):
    """Too few samples for the requested model size."""


class IngestError(SineSplineError, ValueError):
    """A data file could not be parsed or validated."""


class RankDeficiencyError(SineSplineError, ArithmeticError):
    """The basis matrix is numerically rank deficient."""


class NoPeriodicityError(SineSplineError, ArithmeticError):
    """The pre-fit residual spectrum is flat; no periodic component found."""


class BracketError(SineSplineError, ArithmeticError):
    """No interior minimum inside the search bracket, even after expansion."""
