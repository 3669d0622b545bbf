"""Exception hierarchy shared by the services, the CLI and the web layer."""
from __future__ import annotations


class GinToolkitError(Exception):
    """Base class for every error raised by the toolkit.

    `exit_code` is what the CLI returns, `http_status` what the web layer sends.
    """
    exit_code = 1
    http_status = 400


# Arithmetic and shapes

class DivisionByZero(GinToolkitError, ZeroDivisionError):
    pass


class LengthMismatch(GinToolkitError):
    pass


class DimensionMismatch(GinToolkitError):
    pass


class RosterMismatch(GinToolkitError):
    pass


class DegreeMismatch(GinToolkitError):
    pass


class DegreeTooSmall(GinToolkitError):
    pass


class ZeroPolynomial(GinToolkitError):
    pass


class NotRepresentable(GinToolkitError):
    """A value (e.g. a square root) does not lie in the coefficient field."""


# Parsing

class ExpressionSyntaxError(GinToolkitError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(GinToolkitError):
    def __init__(self, name: str, position: int | None = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"unknown variable '{name}'{where}")
        self.name = name
        self.position = position


class NegativeExponent(GinToolkitError):
    def __init__(self, position: int):
        super().__init__(f"negative exponent at position {position}")
        self.position = position


class NonRealForm(GinToolkitError):
    """The assembled coefficient matrix of a real form is not Hermitian."""


# Catalog and maps

class UnknownName(GinToolkitError):
    pass


class MissingParam(GinToolkitError):
    pass


class SignatureMismatch(GinToolkitError):
    pass


class AllComponentsZero(GinToolkitError):
    pass


class TruncationRejected(GinToolkitError):
    pass


class NotDivisible(GinToolkitError):
    """The map does not take HQ(a, b+1) into HQ(A, B+1)."""
    exit_code = 2
    http_status = 422


class InvalidMap(GinToolkitError):
    exit_code = 2
    http_status = 422


class GenericityFailure(GinToolkitError):
    """Independent random coordinate changes kept disagreeing."""
    exit_code = 3
    http_status = 500


class UnsupportedOrder(GinToolkitError):
    """The operation needs a classical (or a Green) monomial order."""
