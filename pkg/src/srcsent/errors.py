"""Exception types shared across the toolkit."""


class SrcsentError(Exception):
    """Base class for all toolkit errors."""


class CorpusError(SrcsentError):
    """A corpus or annotation file violates the line format or a record invariant.

    Carries the offending line number (1-based) and file path when known.
    """

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
        if line is not None:
            prefix += f"{line}:"
        if prefix:
            message = f"{prefix} {message}"
        super().__init__(message)


class BackendError(SrcsentError):
    """A scorer backend failed: unreachable, timed out, or returned garbage."""


class ConvergenceError(SrcsentError):
    """An iterative solver ran out of iterations. Carries the last residual."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (last residual {residual:.3e})")
