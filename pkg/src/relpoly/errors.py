"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class RefusalError(RuntimeError):
    """A computation was refused because it would exceed a configured cap."""


class InconclusiveError(RuntimeError):
    """A numeric procedure failed to converge within its budget."""


class FormatError(DomainError):
    """Malformed input text, with a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)
