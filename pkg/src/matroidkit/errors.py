"""Exception hierarchy.

Domain errors (bad input, violated preconditions) derive from
``MatroidError``; ``InvariantBreach`` signals that two routes that must agree
did not, which is always a bug in this package.
"""

from __future__ import annotations


class MatroidError(Exception):
    """Base class for domain errors."""


class InvalidSpec(MatroidError):
    pass


class NotAMatroid(MatroidError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInGround(MatroidError):
    pass


class OverlappingSets(MatroidError):
    pass


class ImageOutsideGround(MatroidError):
    pass


class GroundOverlap(MatroidError):
    pass


class GroundTooLarge(MatroidError):
    pass


class BudgetExceeded(MatroidError):
    pass


class NotAFlat(MatroidError):
    pass


class NotAPartition(MatroidError):
    pass


class TooManyFlats(MatroidError):
    pass


class LabelCollision(MatroidError):
    pass


class UnionNotGround(MatroidError):
    pass


class GroundMismatch(MatroidError):
    pass


class NotAQuotient(MatroidError):
    pass


class PrerequisiteMismatch(MatroidError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASingleElementProjection(MatroidError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class InvalidModularCut(MatroidError):
    def __init__(self, message: str, violation=None):
        super().__init__(message)
        self.violation = violation


class UnknownName(MatroidError):
    pass


class UnknownSuite(MatroidError):
    pass


class ParseError(MatroidError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SemanticError(MatroidError):
    pass


class InvariantBreach(AssertionError):
    """Two computations that are proven equal disagreed."""


class IterationCapExceeded(InvariantBreach):
    pass


class InternalDescentFailure(InvariantBreach):
    pass
