"""Exception types raised across the package."""


class DoeForgeError(Exception):
    """Base class for all doe-forge errors."""


class DimensionError(DoeForgeError):
    """Dimension mismatch or unsupported dimensionality."""


class SizeError(DoeForgeError):
    """Requested design exceeds a documented count or budget guard."""


class ParseError(DoeForgeError):
    """Malformed textual input (generator strings, CSV files)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GeneratorError(DoeForgeError):
    """Inconsistent fractional-factorial generator set."""


class LevelError(DoeForgeError):
    """Orthogonal-array level structure unsuitable for the operation."""


class DensityError(DoeForgeError):
    """Sampling density is degenerate (vanishes everywhere)."""


class InitError(DoeForgeError):
    """Chain initialisation point is invalid for the target density."""


class ShapeError(DoeForgeError):
    """Array shape or length mismatch."""


class DomainError(DoeForgeError):
    """Points fall outside the domain required by the operation."""
