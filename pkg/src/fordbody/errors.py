"""Exception types shared across the package."""


class FordBodyError(Exception):
    """Base class for all package errors."""


class FixesInfinity(FordBodyError):
    """Raised when an isometric sphere is requested for a map fixing the cusp point."""


class NotParabolic(FordBodyError):
    """Raised when a supposed cusp generator is not parabolic (or fixes the wrong point)."""


class NotLoxodromic(FordBodyError):
    """Raised when the tunnel generator is not loxodromic."""


class DegenerateLattice(FordBodyError):
    """Raised when the two cusp translations are linearly dependent over the reals."""


class NoIntersection(FordBodyError):
    """Raised when an edge or angle is requested for spheres that do not cross."""


class OpenCycle(FordBodyError):
    """Raised when an edge cycle cannot be closed inside the discovered face set."""

    def __init__(self, message, missing_arc=None):
        super().__init__(message)
        self.missing_arc = missing_arc


class PathBroken(FordBodyError):
    """Raised when a parameter path contains a sample without a usable domain."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class SchemaError(FordBodyError):
    """Config validation failure; ``field`` holds the offending field path."""

    def __init__(self, field, message=None):
        super().__init__(message or f"invalid or missing field: {field}")
        self.field = field
