class SuperJordanError(Exception):
    """Base class for every error raised by the library."""


class ParameterOutOfRange(SuperJordanError):
    """A closed form or operation was called outside its parameter range."""


class InvalidBicomplexPosition(SuperJordanError):
    """A bicomplex component map was applied at a position where it is not defined."""


class PatternUnsupported(SuperJordanError):
    """The bar term lies outside the domain on which the comparison map g is defined."""


class NotACocycle(SuperJordanError):
    """A cochain passed for reduction does not satisfy d(z) = 0."""


class BasisMismatch(SuperJordanError):
    """A cocycle cannot be written in the named basis modulo coboundaries."""


class NoSolution(SuperJordanError):
    """A linear system expected to be consistent has no solution."""


class FitImpossible(SuperJordanError):
    """No intermediate series parameters (a, b) reproduce the computed action."""


class ResourceGuardExceeded(SuperJordanError):
    """A requested computation exceeds the configured size guard."""


class InvalidConfig(SuperJordanError):
    """The run configuration is invalid."""
