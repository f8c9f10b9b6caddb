"""Exception hierarchy shared by all weildeco modules."""


class WeilDecoError(Exception):
    """Base class for every error raised by this package."""


class NotDivisible(WeilDecoError, ArithmeticError):
    pass


class DivisionByZero(WeilDecoError, ZeroDivisionError):
    pass


class IndexOutOfRange(WeilDecoError, IndexError):
    pass


class ZeroInput(WeilDecoError, ValueError):
    pass


class ZeroFunction(WeilDecoError, ValueError):
    pass


class DimensionMismatch(WeilDecoError, ValueError):
    pass


class CoordinateMismatch(WeilDecoError, ValueError):
    pass


class NotSmooth(WeilDecoError, ValueError):
    pass


class UnknownName(WeilDecoError, ValueError):
    pass


class HNotUnit(WeilDecoError, ValueError):
    pass


class KindMismatch(WeilDecoError, TypeError):
    pass


class NoContainingCone(WeilDecoError, ValueError):
    pass


class NotALift(WeilDecoError, ValueError):
    pass


class InvalidU(WeilDecoError, ValueError):
    pass


class OrderMismatch(WeilDecoError, ValueError):
    pass


class RankMismatch(WeilDecoError, ValueError):
    pass


class ZeroDivisorInput(WeilDecoError, ValueError):
    pass


class IterationCap(WeilDecoError, RuntimeError):
    pass


class LinearlyDependent(WeilDecoError, ValueError):
    pass


class UnsupportedKind(WeilDecoError, ValueError):
    pass


class InhomogeneousProjectiveInput(WeilDecoError, ValueError):
    pass


class ExprSyntaxError(WeilDecoError, ValueError):
    """Parse failure; ``position`` is the 0-based offset of the offending token."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
