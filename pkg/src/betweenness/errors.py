"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Malformed edge-list input. ``lineno`` is 1-based, or None for structural errors."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DisconnectedGraphError(ValueError):
    pass


class UnsupportedGraphError(ValueError):
    """Method cannot run on this kind of graph (e.g. directed input to the algebraic method)."""


class CountOverflowError(OverflowError):
    """A shortest-path count no longer fits in an unsigned 64-bit integer."""


class InconsistentApspError(ValueError):
    pass


class OracleCapError(RuntimeError):
    pass


class SamplingExhaustedError(RuntimeError):
    pass
