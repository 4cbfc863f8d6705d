"""Exception types raised across the package."""


class PhaseIntError(Exception):
    """Base class for all package errors."""


class NonConvergence(PhaseIntError, ArithmeticError):
    pass


class PoleAtNonpositiveInteger(PhaseIntError, ZeroDivisionError):
    pass


class NoSignChange(PhaseIntError, ValueError):
    pass


class PoleAtOrigin(PhaseIntError, ZeroDivisionError):
    pass


class NotApplicable(PhaseIntError, ValueError):
    """Operation is not defined for the requested potential family."""


class UnknownVertex(PhaseIntError, KeyError):
    pass


class MissingFactor(PhaseIntError, KeyError):
    pass


class ItineraryError(PhaseIntError, ValueError):
    """Malformed itinerary text, or a step sequence that breaks term bookkeeping."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class DegenerateLeadingCoefficient(PhaseIntError, ValueError):
    pass


class StepFailure(PhaseIntError, RuntimeError):
    pass


class NotConverged(PhaseIntError, ArithmeticError):
    pass


class NoBracket(PhaseIntError, ValueError):
    pass


class OracleConfigError(PhaseIntError, ValueError):
    """The oracle configuration cannot resolve the requested levels."""
