class ComplexkitError(Exception):
    """Base class for library errors."""


class ConfigError(ComplexkitError, ValueError):
    """A field configuration could not be parsed or is inconsistent."""


class NumericalError(ComplexkitError, ArithmeticError):
    """A numerical routine failed to reach its advertised accuracy."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateGeometryError(ComplexkitError, ValueError):
    """A geometric quantity is undefined for the given input (no motion)."""
