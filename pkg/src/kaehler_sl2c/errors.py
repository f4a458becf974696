"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class KaehlerError(Exception):
    """Base class for library errors."""


class NonFinite(KaehlerError, ArithmeticError):
    """An integrand or derivative evaluated to NaN or an infinity."""


class NoConvergence(KaehlerError, ArithmeticError):
    """The adaptive panel budget was exhausted before reaching tolerance."""


class StepTooSmall(KaehlerError, ValueError):
    pass


class JetDomainError(KaehlerError, ValueError):
    """Division by a zero value part, or log/sqrt of a non-positive value."""


class ProfileSyntaxError(KaehlerError, SyntaxError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.msg = message
        self.offset = offset


class UnknownIdentifier(ProfileSyntaxError):
    pass


class InvalidParameter(KaehlerError, ValueError):
    pass


class InadmissibleProfile(KaehlerError, ValueError):
    """f' <= 0 or f'' <= 0 where positivity is required."""


class DerivativeUnavailable(KaehlerError):
    pass


class ChartDomain(KaehlerError, ValueError):
    pass


class DomainError(KaehlerError, ValueError):
    pass


class OutsideImage(KaehlerError, ValueError):
    pass


class LimitUndetermined(KaehlerError):
    pass


class NotHomogeneous(KaehlerError, ValueError):
    pass


class NotApplicable(KaehlerError):
    """Quantity undefined in this regime (e.g. infinite volume)."""


class Undetermined(KaehlerError):
    """A heuristic decision could not be made reliably."""
