"""Exception hierarchy.

Two families matter to callers: ``ConfigError`` (bad input, raised before any
computation) and ``VerificationFailure`` (an identity did not hold).  The CLI
maps them to exit codes 2 and 1.
"""

from __future__ import annotations


class MetaHahnError(Exception):
    pass


class ConfigError(MetaHahnError):
    pass


class SingularParameter(ConfigError):
    """A parameter value makes some denominator vanish."""


class NonTerminating(MetaHahnError):
    pass


class SingularLowerParameter(MetaHahnError):
    pass


class PoleHit(SingularLowerParameter):
    def __init__(self, msg: str, x=None):
        super().__init__(msg)
        self.x = x


class ReductionBudgetExceeded(MetaHahnError):
    pass


class DegeneratePairing(MetaHahnError):
    pass


class VerificationFailure(MetaHahnError):
    """An identity failed.  ``report`` holds every check run so far."""

    def __init__(self, msg: str, report=None, residual=None):
        super().__init__(msg)
        self.report = report
        self.residual = residual


class RelationViolated(VerificationFailure):
    pass


class EmbeddingViolated(VerificationFailure):
    pass


class SpectrumMismatch(VerificationFailure):
    pass


class DiagonalizationMismatch(VerificationFailure):
    pass


class ShapeViolated(VerificationFailure):
    pass


class ClosedFormMismatch(VerificationFailure):
    pass


class OrthogonalityViolated(VerificationFailure):
    pass


class RecurrenceViolated(VerificationFailure):
    pass


class BispectralityViolated(VerificationFailure):
    pass


class ContiguityViolated(VerificationFailure):
    pass


class WeightViolated(VerificationFailure):
    pass


class TransformViolated(VerificationFailure):
    pass


class OrderConditionViolated(VerificationFailure):
    pass
