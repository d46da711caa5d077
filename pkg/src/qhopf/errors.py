"""Exception hierarchy shared by every module of the engine."""


class QHopfError(Exception):
    """Base class for all engine errors."""


# scalars
class DivisionByZero(QHopfError, ZeroDivisionError):
    pass


class NonUnitDivisor(QHopfError):
    pass


class OffLattice(QHopfError):
    pass


class SingularAtQ1(QHopfError):
    pass


class UndeclaredParameter(QHopfError):
    pass


# weights
class RankMismatch(QHopfError):
    pass


class IsotropicRoot(QHopfError):
    pass


# free algebra
class UnknownGenerator(QHopfError):
    pass


class InhomogeneousArgument(QHopfError):
    pass


class MissingImage(QHopfError):
    pass


class NonInvertibleCartanImage(QHopfError):
    pass


# rewriting
class NonUnitLeadingCoefficient(QHopfError):
    pass


class AmbiguousLeader(QHopfError):
    pass


class StepBoundExceeded(QHopfError):
    pass


class CompletionDiverged(QHopfError):
    pass


class InsufficientCompletionDegree(QHopfError):
    pass


# catalog
class WrongWeightEtilde(QHopfError):
    pass


class UnsupportedFamily(QHopfError):
    pass


# expression language
class ExprSyntaxError(QHopfError):
    def __init__(self, message, column):
        super().__init__(f"{message} at column {column}")
        self.column = column


class UnknownAtom(QHopfError):
    pass


# errors that map to the "engine limit" exit code of the CLI
ENGINE_LIMIT_ERRORS = (InsufficientCompletionDegree, CompletionDiverged, StepBoundExceeded)
