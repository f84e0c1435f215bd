"""Exception types raised by the certifiers and file readers."""


class CpTensorError(Exception):
    """Base class for every error raised by this package."""


class IndexOutOfRange(CpTensorError, IndexError):
    pass


class DimensionMismatch(CpTensorError, ValueError):
    pass


class OrderMismatch(CpTensorError, ValueError):
    pass


class NegativeFactor(CpTensorError, ValueError):
    pass


class EmptyFamily(CpTensorError, ValueError):
    pass


class UndefinedNorm(CpTensorError, ValueError):
    pass


class DomainError(CpTensorError, ValueError):
    """A value lies outside the declared or required value domain."""


class BadSubset(CpTensorError, ValueError):
    pass


class NotDiagonal(CpTensorError, ValueError):
    pass


class InvalidDecomposition(CpTensorError, ValueError):
    pass


class NotApplicable(CpTensorError):
    """The input does not satisfy the hypotheses a certifier relies on."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class WrongDimension(NotApplicable):
    pass


class SearchSpaceTooLarge(CpTensorError):
    def __init__(self, nodes, cap):
        super().__init__(f"search visited {nodes} nodes, cap is {cap}")
        self.nodes = nodes
        self.cap = cap


class FormatError(CpTensorError, ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
