"""Exception hierarchy shared by all zardec modules."""


class ZardecError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(ZardecError, ValueError):
    pass


class SingularMatrix(ZardecError, ArithmeticError):
    pass


class NotSymmetric(ZardecError, ValueError):
    pass


class InvalidCurve(ZardecError, ValueError):
    """A declared curve is not integral or does not have negative square."""


class IndexOutOfRange(ZardecError, IndexError):
    pass


class InvalidProximity(ZardecError, ValueError):
    pass


class InvalidRank(ZardecError, ValueError):
    pass


class NotNef(ZardecError, ValueError):
    pass


class NotPseudoeffective(ZardecError, ValueError):
    pass


class DecompositionError(ZardecError, ArithmeticError):
    """The iterative procedure could not produce a decomposition.

    The engine cannot tell a non-pseudoeffective input from an incomplete
    curve list; both show up as one of the subclasses below.
    """


class NotNegativeDefinite(DecompositionError):
    pass


class NegativeCoefficient(DecompositionError):
    pass


class ExhaustedAdjustments(ZardecError, AssertionError):
    pass


class ParseError(ZardecError, ValueError):
    pass


class InvalidModel(ZardecError, ValueError):
    pass
