"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GEUError(Exception):
    """Base class for all library errors."""


class ValidationError(GEUError):
    """An object violates one or more of its structural laws.

    ``violations`` lists every problem found, not just the first one.
    """

    def __init__(self, message: str, violations: list[str] | None = None):
        self.violations = list(violations or [])
        if self.violations:
            message = message + ": " + "; ".join(self.violations)
        super().__init__(message)


class TableError(ValidationError):
    """Operation or order tables are not total, closed, or consistent."""


class BudgetExceeded(GEUError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, what: str, required: int, budget: int):
        self.what = what
        self.required = required
        self.budget = budget
        super().__init__(f"{what}: {required} instances required, budget is {budget}")


class DuplicateActError(GEUError):
    """Two act names denote the same function from states to consequences."""


class PreconditionError(GEUError):
    """A check was requested on a problem outside its required class."""

    def __init__(self, message: str, classes: list[str] | None = None):
        self.classes = list(classes or [])
        super().__init__(message)


class SpecialVersionMismatch(PreconditionError):
    """The special version was requested but A is not the set of all simple acts."""


class ParseError(GEUError):
    """A problem document is malformed; ``location`` is a JSON-pointer-like path."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
