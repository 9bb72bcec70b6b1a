"""Exception types shared across the package."""


class ParseError(ValueError):
    """A light-curve file contains a line that cannot be parsed.

    Carries the offending path and 1-based line number so callers can
    point the user at the exact location.
    """

    def __init__(self, path, line_number: int, message: str):
        super().__init__(f"{path}:{line_number}: {message}")
        self.path = str(path)
        self.line_number = int(line_number)


class InsufficientDataError(ValueError):
    """Fewer usable samples than an operation requires."""


class DegenerateCurveError(ValueError):
    """Curve has no usable variance (constant magnitudes, empty after cuts)."""


class InvalidPeriodError(ValueError):
    """A trial period is zero, negative, or otherwise unusable."""


class InsufficientPairsError(ValueError):
    """No sample pairs fall inside any lag slot."""


class EmptyReportError(RuntimeError):
    """An estimation run produced no period candidates at all."""
