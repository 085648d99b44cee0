"""Exception types shared across the package."""


class QCorrError(Exception):
    """Base class for package errors."""


class InvalidStateError(QCorrError, ValueError):
    """A matrix failed density-matrix validation (message names the residual)."""


class ParseError(QCorrError, ValueError):
    """Malformed density-matrix file."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ConvergenceError(QCorrError, RuntimeError):
    """Eigensolver exhausted its sweep budget."""


class PartitionBudgetExceeded(QCorrError, RuntimeError):
    """Exact G would need more partitions than the configured budget."""
