"""Domain error hierarchy. Everything the CLI maps to exit code 1 derives from ArcellError."""

from __future__ import annotations


class ArcellError(Exception):
    """Base class for all domain errors."""


class InvalidParameter(ArcellError):
    pass


class EmptyInput(ArcellError):
    pass


class DegenerateInput(ArcellError):
    pass


class NoCorrespondences(ArcellError):
    pass


class NoAlignmentFound(ArcellError):
    pass


class ReferencingRejected(ArcellError):
    """Registration finished but did not meet the convergence gate.

    Carries the offending RegistrationResult for diagnostics.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class AutoReferencingFailed(ArcellError):
    """No sliding-search candidate produced a converged referencing.

    Carries the scored candidate boxes for diagnostics.
    """

    def __init__(self, message: str, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class EmptyWindow(ArcellError):
    pass


class InvalidConfiguration(ArcellError):
    pass


class NoSurfaceHit(ArcellError):
    pass


class IkFailed(ArcellError):
    pass


class GoalInCollision(ArcellError):
    pass


class PlanningTimeout(ArcellError):
    pass


class StageViolation(ArcellError):
    pass


class ModelNotFound(ArcellError):
    pass


class ParseError(ArcellError):
    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", offset {offset}" if offset is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.offset = offset


class VersionError(ArcellError):
    pass
