class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


class ConstructionError(ValueError):
    """Construction hypotheses are violated (each violated condition is listed)."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations or [message]


class FormatError(ValueError):
    """A code or chain file does not follow the expected schema."""
