"""Exception types raised across the package."""


class ConfigError(ValueError):
    """Invalid configuration (bad layer dims, rates out of range, ...)."""


class DimensionError(ValueError):
    """Array or architecture shapes do not line up."""


class IncomparableError(ValueError):
    """Dominance asked for solutions with different layer counts."""


class SearchSpaceExhausted(RuntimeError):
    """Not enough distinct architectures could be drawn."""


class NumericalError(ArithmeticError):
    """Training diverged to a non-finite cost."""

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state


class DatasetError(ValueError):
    """Dataset contents violate the expected invariants."""


class DatasetFormatError(DatasetError):
    """Malformed dataset file; ``offset`` is the byte where parsing failed."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset
