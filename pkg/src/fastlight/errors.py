"""Exception types shared across the package."""


class FastlightError(Exception):
    """Base class for package errors."""


class ScenarioError(FastlightError):
    """A scenario file could not be parsed or fails validation."""


class ComputationError(FastlightError):
    """A computation cannot proceed (no root, resonance not bracketed, ...)."""
