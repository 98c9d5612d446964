"""Shared exception types.

Every error that carries semantic weight for callers (CLI exit codes,
diagnostics in JSON reports) lives here so modules can raise them without
import cycles.
"""


class PolaroptError(Exception):
    """Base class for all library errors."""


class ParseError(PolaroptError):
    """Input text does not conform to the system grammar."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


class NotZeroDimensional(PolaroptError):
    """A system expected to have finitely many solutions has a
    positive-dimensional solution set."""


class GenericityFailure(PolaroptError):
    """Random choices (separating forms, hyperplanes, polar matrices)
    failed their certification checks past the retry budget."""


class RegularityViolation(PolaroptError):
    """A computed point violates the rank condition the caller asserted;
    the smoothness precondition does not hold at that point."""

    def __init__(self, message, point=None):
        self.point = point
        super().__init__(message)


class SingularHessian(PolaroptError):
    """det H vanished at a regular critical point; the nondegeneracy
    hypothesis fails there and the point cannot be classified."""

    def __init__(self, message, point=None, chart=None):
        self.point = point
        self.chart = chart
        super().__init__(message)


class MixedSignOnComponent(PolaroptError):
    """Sample-point evidence contradicts sign constancy on components,
    indicating the transversality hypothesis fails. Diagnostic only."""


class NoDirection(PolaroptError):
    """No direction vector with the required derivative signs was found
    within the search budget; rank or genericity assumptions look broken."""


class EmptyFeasibleSet(PolaroptError):
    """No witness point was found anywhere on the feasible set; the
    existence precondition for a global minimum may fail."""
