"""Exception hierarchy shared by every module."""


class DcAbpError(Exception):
    """Base class for all errors raised by dcabp."""


class FieldMismatch(DcAbpError, ValueError):
    pass


class DivisionByZero(DcAbpError, ZeroDivisionError):
    pass


class DimensionMismatch(DcAbpError, ValueError):
    pass


class VariableCountMismatch(DimensionMismatch):
    pass


class ParseError(DcAbpError, ValueError):
    pass


class PreconditionError(DcAbpError, ValueError):
    """An input is well formed but violates an operation's precondition."""


class ConstantPartInvertible(PreconditionError):
    pass


class NotRegular(PreconditionError):
    pass


class DegreeTooSmall(PreconditionError):
    pass


class SizeDegreeMismatch(PreconditionError):
    pass


class NonzeroConstantTerm(PreconditionError):
    pass


class NotHomogeneous(PreconditionError):
    def __init__(self, degrees, message=None):
        self.degrees = tuple(degrees)
        if message is None:
            message = f"determinant is not homogeneous: components of degrees {list(self.degrees)}"
        super().__init__(message)
