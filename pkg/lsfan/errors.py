"""Error types.

Every error carries a stable code (``E_*``) and the process exit code the CLI
reports for it. Input problems are ``ValueError`` subclasses, consistency
failures are ``RuntimeError`` subclasses so callers can catch them the usual way.
"""

from __future__ import annotations

INT64_MAX = 2**63 - 1


class LsFanError(Exception):
    """Base class for all lsfan errors."""

    code: str = "E_LSFAN"
    exit_code: int = 1

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def to_dict(self) -> dict[str, str]:
        return {"error": self.code, "message": str(self)}


class InvalidInputError(LsFanError, ValueError):
    """Bad user or caller input (exit 2)."""

    code = "E_BAD_INPUT"
    exit_code = 2


class ResourceLimitError(LsFanError):
    """A configured cap or the checked-arithmetic range was exceeded (exit 3)."""

    code = "E_LIMIT"
    exit_code = 3


class ConsistencyError(LsFanError, RuntimeError):
    """An identity that must hold was violated (exit 1)."""

    code = "E_CONSISTENCY"
    exit_code = 1


class BadKindError(InvalidInputError):
    code = "E_BAD_KIND"


class BadIndexError(InvalidInputError):
    code = "E_BAD_INDEX"


class NotDominantError(InvalidInputError):
    code = "E_NOT_DOMINANT"


class NotMinimalRepError(InvalidInputError):
    code = "E_NOT_MINREP"


class NotReducedError(InvalidInputError):
    code = "E_NOT_REDUCED"


class SupportError(InvalidInputError):
    code = "E_SUPPORT"


class NotLsPathError(InvalidInputError):
    code = "E_NOT_LS_PATH"


class NotDegreeOneError(InvalidInputError):
    code = "E_NOT_DEGREE_ONE"


class StandardInputError(InvalidInputError):
    code = "E_STANDARD_INPUT"


class NotComparableError(InvalidInputError):
    code = "E_NOT_COMPARABLE"


class EmptyChainError(InvalidInputError):
    code = "E_EMPTY_CHAIN"


class BadCaseError(InvalidInputError):
    code = "E_BAD_CASE"


class TooManyChainsError(ResourceLimitError):
    code = "E_TOO_MANY_CHAINS"


class TooManyError(ResourceLimitError):
    code = "E_TOO_MANY"


class TooManyLinearExtensionsError(ResourceLimitError):
    code = "E_TOO_MANY_LINEXT"


class ArithmeticOverflowError(ResourceLimitError):
    code = "E_OVERFLOW"


class NoCoverRootError(ConsistencyError):
    code = "E_NO_COVER_ROOT"


class AmbiguousBondError(ConsistencyError):
    code = "E_AMBIGUOUS_BOND"


class GcdMismatchError(ConsistencyError):
    code = "E_GCD_MISMATCH"


class NegativeMultiplicityError(ConsistencyError):
    code = "E_NEGATIVE_MULT"


class DecompositionError(ConsistencyError):
    code = "E_DECOMP_FAIL"


class FitMismatchError(ConsistencyError):
    code = "E_FIT_MISMATCH"


class DegreeMismatchError(ConsistencyError):
    code = "E_DEGREE_MISMATCH"


def checked(value: int) -> int:
    """Return ``value`` if it fits a signed 64-bit integer, else raise E_OVERFLOW."""
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise ArithmeticOverflowError(f"integer {value} leaves the 64-bit range")
    return value
