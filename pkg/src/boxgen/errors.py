"""Exception types shared across the package."""


class BoxgenError(Exception):
    """Base class for all package errors."""


class ParameterError(BoxgenError, ValueError):
    """An argument or configuration value violates a documented constraint."""


class DataError(BoxgenError, ValueError):
    """An input file is malformed or violates its schema."""


class SamplingError(BoxgenError, RuntimeError):
    """Rejection sampling exhausted its proposal budget.

    Carries acceptance-rate diagnostics so pathological polygons are
    debuggable instead of hanging.
    """

    def __init__(self, attempts, message=None):
        self.attempts = attempts
        super().__init__(
            message
            or f"rejection sampling exhausted its budget of {attempts} proposals"
        )


class GenerationError(BoxgenError, RuntimeError):
    """Box generation failed after the verification-retry loop."""
