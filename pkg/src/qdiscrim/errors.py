"""Exception types raised across the package."""


class ValidationError(ValueError):
    """An input does not satisfy the invariants of the type it is meant to build.

    ``field`` names the offending input (e.g. ``"psi1.alpha"``) when known, so
    front ends can report a field-level diagnostic.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class UndefinedConditionalError(ValueError):
    """Conditioning on an outcome that has probability zero."""


class NumericConsistencyError(ArithmeticError):
    """Two routes to the same quantity disagree beyond roundoff."""
