"""Exception hierarchy with stable machine-readable error codes.

Every error raised by the library carries a ``code`` string that the service
and the CLI forward unchanged, so callers can dispatch on it without parsing
messages.
"""

from __future__ import annotations


class FactorBoundsError(Exception):
    """Base class for all library errors."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def payload(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.details:
            out["details"] = {k: v for k, v in self.details.items()}
        return out


class InvalidInputError(FactorBoundsError):
    code = "invalid-input"


class DivisionByZeroError(FactorBoundsError):
    code = "division-by-zero"


class UnsupportedError(FactorBoundsError):
    """Requested analysis is out of scope at this point (e.g. local exponents
    at an irregular singularity)."""

    code = "unsupported"


class NeedsMoreInitialTermsError(FactorBoundsError):
    """A series coefficient is underdetermined by the recurrence; the caller
    must supply more initial terms.  ``details['blocking_index']`` names the
    first coefficient that cannot be computed."""

    code = "needs-more-initial-terms"


class NeedsExponentBoundError(FactorBoundsError):
    """The operator is not Fuchsian, so the exponent bound cannot be computed
    from the singularity census and must be supplied by the caller."""

    code = "needs-exponent-bound"


class InconsistencyError(FactorBoundsError):
    """The minimizer exhausted all candidate orders, or a found annihilator
    failed the right-division cross-check."""

    code = "inconsistency"


class ParseError(FactorBoundsError):
    code = "parse-error"

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message, position=position)
        self.position = position


class ReducibleModulusError(FactorBoundsError):
    """Raised by quotient-ring arithmetic when a supposed field element turns
    out to be a zero divisor.  Carries a nontrivial factor of the modulus so
    the caller can split the point cluster and retry."""

    code = "reducible-modulus"

    def __init__(self, message: str, factor):
        super().__init__(message)
        self.factor = factor
