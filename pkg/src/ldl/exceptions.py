"""Exception hierarchy shared by all ldl modules."""


class LDLError(Exception):
    """Base class for errors raised by ldl."""


class ConfigError(LDLError, ValueError):
    """Invalid run configuration or option combination."""


class DataError(LDLError, ValueError):
    """Malformed or inconsistent input data."""


class NumericalError(LDLError, ArithmeticError):
    """A numerical quantity is undefined (e.g. zero-variance correlation)."""
