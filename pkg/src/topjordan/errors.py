"""Exception hierarchy shared by every module of the package."""


class TopJordanError(Exception):
    """Base class for all library errors."""


class ContextMismatch(TopJordanError, ValueError):
    """Operands were built over different arithmetic contexts."""


class InvalidContext(TopJordanError, ValueError):
    pass


class NonUnit(TopJordanError, ZeroDivisionError):
    """Inversion of an element whose reduction mod p vanishes."""


class PrecisionInsufficient(TopJordanError, ArithmeticError):
    """The available p-adic precision cannot certify the requested answer."""


class Singular(TopJordanError, ArithmeticError):
    """Matrix is not invertible (or invertibility cannot be certified)."""


class NotBounded(TopJordanError, ArithmeticError):
    """Element does not stabilize any lattice."""


class NotBoundedModCenter(NotBounded):
    pass


class NeedsRamified(TopJordanError, ArithmeticError):
    """The central twist only exists over a ramified extension of index ``e``.

    ``tame`` is advisory: it records whether ``e`` is prime to ``p``.
    """

    def __init__(self, e, p):
        self.e = e
        self.tame = e % p != 0
        super().__init__(
            f"central twist requires a ramified extension of index {e}"
            f" ({'tame' if self.tame else 'wild'})"
        )


class NotIntegral(TopJordanError, ValueError):
    pass


class NonUnitDet(TopJordanError, ValueError):
    pass


class NotDiagonal(TopJordanError, ValueError):
    pass


class RankDeficient(TopJordanError, ArithmeticError):
    pass


class SearchTooLarge(TopJordanError, ValueError):
    pass


class UnknownSuite(TopJordanError, KeyError):
    pass
