"""Shared exception types."""


class SpecializationPole(ArithmeticError):
    """Raised when an exact evaluation lands on a pole."""


class UnsupportedRegime(ValueError):
    """Raised for divisor degrees the pipeline has no route for."""


class WindowTooSmall(ValueError):
    """Raised when a truncation window cannot supply a stable representative.

    Carries the d_max that would have sufficed.
    """

    def __init__(self, message, needed_dmax):
        super().__init__(message)
        self.needed_dmax = needed_dmax


class EnumerationCapExceeded(RuntimeError):
    """Raised when a brute-force enumeration would exceed the configured cap."""

    def __init__(self, message, required_cap):
        super().__init__(message)
        self.required_cap = required_cap
