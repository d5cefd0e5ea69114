"""Exception types shared across the package."""


class NumseqError(Exception):
    """Base class for all package errors."""


class ArityMismatch(NumseqError):
    """Initial term count does not match the rule order."""


class NegativeTerm(NumseqError):
    """A generated term is negative and cannot be digit-encoded."""


class Overflow(NumseqError):
    """A term does not fit in the requested digit width."""


class EmptyRange(NumseqError):
    """A sampling range contains no integers."""


class UnsatisfiableConfig(NumseqError):
    """Resampling budget exhausted without a representable instance."""


class MalformedOneHot(NumseqError):
    """A one-hot cell has zero or more than one active channel."""


class RegisterOverflow(NumseqError):
    """A term exceeded the counter machine's digit registers."""


class StackUnderflow(NumseqError):
    """The stack machine was asked to pop from an empty stack."""


class MalformedStream(NumseqError):
    """A token stream violates the digit/blank/delimiter grammar."""


class UnknownKind(NumseqError):
    """Task kind not present in the catalog."""


class BudgetExceeded(NumseqError):
    """Exact minimization budget (input bit count) exceeded."""


class EmptyList(NumseqError):
    """An aggregate operation received an empty list."""


class EmptyVector(NumseqError):
    """Argmax decoding received an empty probability vector."""


class ShapeMismatch(NumseqError):
    """Predictions do not line up with the referenced dataset."""

    def __init__(self, message: str, missing_ids: list[int] | None = None):
        super().__init__(message)
        self.missing_ids = missing_ids or []


class MissingMetadata(NumseqError):
    """Dataset lacks the metadata needed for a split check."""


class NoPlanFound(NumseqError):
    """No composition plan exists within the function budget."""
