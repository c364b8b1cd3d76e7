"""Exception types raised by inducedpoly."""


class InducedError(Exception):
    """Base class for all library errors."""


class DomainError(InducedError, ValueError):
    """An argument lies outside the domain of the operation."""


class InsufficientCoefficientsError(InducedError, ValueError):
    """A recurrence table is too short for the requested degree or headroom."""


class UnsupportedMeasureError(InducedError):
    """No closed-form coefficients exist for the requested measure."""


class InconsistentCoefficientsError(InducedError, ValueError):
    """A coefficient table cannot be the image of a valid measure."""


class TableParseError(InducedError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NumericError(InducedError, ArithmeticError):
    """An iterative numerical method failed to converge."""


class OracleAccuracyError(NumericError):
    """The reference integrator could not certify its own accuracy."""


class IllConditionedDesignError(NumericError):
    def __init__(self, message, discrepancy):
        self.discrepancy = discrepancy
        super().__init__(f"{message} (gram discrepancy {discrepancy:.3g})")
