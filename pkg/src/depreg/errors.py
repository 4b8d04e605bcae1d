"""Exception types shared across the package.

NumericalError marks failures of a numerical precondition (rank deficiency,
degenerate fits, nonpositive variance estimates); the CLI maps these to a
distinct exit code.
"""


class NumericalError(ValueError):
    """A numerical precondition failed (not a usage error)."""


class RankDeficientDesignError(NumericalError):
    """The design matrix is numerically rank deficient."""


class DegenerateFitError(NumericalError):
    """The fit is degenerate (e.g. zero residual sum of squares)."""


class NonpositiveLrvError(NumericalError):
    """A long-run variance estimate is zero or negative."""
