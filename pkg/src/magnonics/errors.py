"""Exception types raised by the simulator."""


class MagnonicsError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(MagnonicsError, ValueError):
    """An argument is outside the accepted range."""


class ConfigError(MagnonicsError, ValueError):
    """Unknown sweep parameter, figure name or malformed run configuration."""


class ShapeError(MagnonicsError, ValueError):
    """Matrix has the wrong shape or lacks the required symmetry."""


class StabilityError(MagnonicsError):
    """Drift matrix has an eigenvalue with non-negative real part."""


class NumericalError(MagnonicsError, ArithmeticError):
    """A linear solve or closed-form expression broke down numerically."""


class ConvergenceError(MagnonicsError):
    """Time integration hit its step cap before reaching steady state."""


class DomainError(MagnonicsError, ValueError):
    """Input lies outside the domain where a closed-form measure is valid."""
