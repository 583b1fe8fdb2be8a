"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter violates a documented precondition or invariant."""


class FormatError(ValueError):
    """An input file or serialized document is malformed."""


class SearchTimeout(RuntimeError):
    """An exhaustive search exceeded its time budget.

    Raised instead of returning a value so that a timeout can never be
    mistaken for a computed answer.
    """


class SelfCheckError(RuntimeError):
    """An internally produced witness or cross-check failed verification.

    This always indicates a bug, never bad user input.
    """
