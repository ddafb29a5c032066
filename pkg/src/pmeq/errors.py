"""Exception types shared across the package."""


class PmeqError(Exception):
    """Base class for all errors raised by pmeq."""


class FieldMismatch(PmeqError):
    pass


class DivisionByZero(PmeqError):
    pass


class FieldTooSmall(PmeqError):
    pass


class NotSquare(PmeqError):
    pass


class UnknownLabel(PmeqError):
    pass


class DuplicatePoint(PmeqError):
    pass


class NotACut(PmeqError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ZeroBlock(PmeqError):
    pass


class NotIrreducible(PmeqError):
    pass


class TooLarge(PmeqError):
    pass


class LabelMismatch(PmeqError):
    pass


class DimensionMismatch(PmeqError):
    pass


class RankTooHigh(PmeqError):
    def __init__(self, message, term_index=None):
        super().__init__(message)
        self.term_index = term_index
