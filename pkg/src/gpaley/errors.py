"""Exception hierarchy shared by every module of the package."""


class GPaleyError(Exception):
    """Base class for all errors raised by gpaley."""


class NotPrime(GPaleyError, ValueError):
    pass


class BoundExceeded(GPaleyError, ValueError):
    pass


class DivisionByZero(GPaleyError, ZeroDivisionError):
    pass


class ZeroArgument(GPaleyError, ValueError):
    pass


class NotADivisor(GPaleyError, ValueError):
    pass


class InvalidParams(GPaleyError, ValueError):
    """Parameters violate a condition of the generalised Paley definition.

    ``condition`` names the violated condition: one of ``"divisibility"``,
    ``"k>=2"``, ``"parity"``.
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class NotSymmetricConnectionSet(GPaleyError, ValueError):
    pass


class ZeroInConnectionSet(GPaleyError, ValueError):
    pass


class OutOfRange(GPaleyError, IndexError):
    pass


class IsConnected(GPaleyError, ValueError):
    pass


class NotHamming(GPaleyError, ValueError):
    pass


class SpanNotSubfield(GPaleyError, AssertionError):
    """The F_p-span of the connection set failed to be a subfield (a bug)."""


class SingularBasis(GPaleyError, AssertionError):
    """The Hamming coordinate basis turned out singular (a bug)."""


class SymmetryViolation(GPaleyError, AssertionError):
    pass


class NotAScheme(GPaleyError, AssertionError):
    def __init__(self, h, i, j, pair, expected=None, found=None):
        super().__init__(
            f"intersection number p[{h}][{i}][{j}] not constant: pair {pair} "
            f"gives {found}, representative gives {expected}"
        )
        self.h, self.i, self.j, self.pair = h, i, j, pair


class NotTransitive(GPaleyError, ValueError):
    pass


class DegreeMismatch(GPaleyError, ValueError):
    pass


class SearchTimeout(GPaleyError, TimeoutError):
    pass


class CheckFailed(GPaleyError, AssertionError):
    def __init__(self, name, report=None):
        super().__init__(f"check failed: {name}")
        self.name = name
        self.report = report
