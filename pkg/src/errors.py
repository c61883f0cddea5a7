"""
Exception hierarchy for the fractional Laplacian engine.

Every error carries an ``exit_code`` used by the command-line layer:
2 for violated conditions (bad parameters, inadmissible inputs),
3 for numerical failures.
"""

from typing import List, Optional


class FracLapError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class ConditionError(FracLapError):
    """A mathematical precondition does not hold."""

    exit_code = 2


class NumericalError(FracLapError):
    """A numerical routine could not deliver a trustworthy value."""

    exit_code = 3


class ValidationError(ConditionError):
    """A GSpec or HypSpec violates its invariants."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ConditionViolation(ConditionError):
    """The hypotheses of a transform fail; the message names the inequality."""


class NoAdmissibleContour(ConditionError):
    pass


class WrongRegion(ConditionError):
    pass


class IntegerBDifference(ConditionError):
    def __init__(self, message: str, pairs: Optional[List[tuple]] = None):
        self.pairs = pairs or []
        super().__init__(message)


class NonPositiveIntegerUpper(ConditionError):
    pass


class CoincidentPoints(ConditionError):
    pass


class UnsupportedDimension(ConditionError):
    pass


class NonSmoothAtPoint(ConditionError):
    pass


class NotIntegrable(ConditionError):
    pass


class PoleError(NumericalError):
    pass


class DivergentSeries(NumericalError):
    pass


class RegionError(NumericalError):
    pass


class UndefinedAtOne(NumericalError):
    pass


class SlowDecay(NumericalError):
    pass


class QuadratureFailure(NumericalError):
    pass
