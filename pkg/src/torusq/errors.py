"""Exception hierarchy shared by every torusq module."""


class TorusqError(Exception):
    """Base class for all library errors."""


class NotFiniteOrder(TorusqError):
    pass


class GroupTooLarge(TorusqError):
    pass


class InvalidComplexStructure(TorusqError):
    pass


class OddRank(TorusqError):
    pass


class InvarianceViolation(TorusqError):
    pass


class NoPeriod(TorusqError):
    pass


class NonIntegerDimension(TorusqError):
    pass


class NoSolution(TorusqError):
    pass


class RankDeficientPeriod(TorusqError):
    pass


class EigenvalueNotRootOfUnity(TorusqError):
    pass


class NoUnitWeight(TorusqError):
    pass


class WeightsNotNormalized(TorusqError):
    pass


class UnsupportedOrder(TorusqError):
    pass


class InvalidDims(TorusqError):
    pass


class GeneralType(TorusqError):
    pass


class DivisionByZero(TorusqError, ZeroDivisionError):
    pass


class ParseError(TorusqError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


class ValidationError(TorusqError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason
