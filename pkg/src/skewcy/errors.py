"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class AlgebraError(ValueError):
    """Base class for all errors raised by skewcy."""


class FieldMismatch(AlgebraError):
    pass


class ZeroInput(AlgebraError):
    pass


class NotRepresentable(AlgebraError):
    """The requested root does not exist in any cyclotomic extension."""


class DegreeNotPreserved(AlgebraError):
    pass


class InhomogeneousRelation(AlgebraError):
    pass


class ZeroDegreeGenerator(AlgebraError):
    pass


class DegreeBoundExceeded(AlgebraError):
    def __init__(self, needed: int, bound: int, what: str = "computation"):
        super().__init__(
            f"{what} needs degree bound {needed} but the algebra is only "
            f"complete to degree {bound}; rebuild with degree >= {needed}"
        )
        self.needed = needed
        self.bound = bound


class SingularMatrix(AlgebraError):
    pass


class NotAnAutomorphism(AlgebraError):
    """A candidate matrix does not extend to an algebra automorphism."""

    def __init__(self, message: str, relation=None):
        super().__init__(message)
        self.relation = relation


class AlgebraMismatch(AlgebraError):
    pass


class ZeroScalar(AlgebraError):
    pass


class NotQuadratic(AlgebraError):
    pass


class NotCertified(AlgebraError):
    pass


class DegeneratePairing(AlgebraError):
    pass


class DualNotPreserved(AlgebraError):
    pass


class NoRuleAvailable(AlgebraError):
    pass


class NonCommutingFamily(AlgebraError):
    pass


class NotNormal(AlgebraError):
    def __init__(self, message: str, generator: str | None = None):
        super().__init__(message)
        self.generator = generator


class NotEigenvector(AlgebraError):
    pass


class GroupClosureExceeded(AlgebraError):
    pass


class NotMultiplicative(AlgebraError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class ZeroASIndex(AlgebraError):
    pass


class PresentationError(AlgebraError):
    """Problem in a presentation file or expression, with a source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class PresentationSyntaxError(PresentationError):
    pass


class UnknownGenerator(PresentationError):
    pass


class DegreeMismatch(PresentationError):
    pass


class FieldLiteralOutOfRange(PresentationError):
    pass
