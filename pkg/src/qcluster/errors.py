"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class QClusterError(Exception):
    """Base class for library errors."""


class ConfigError(QClusterError, ValueError):
    """Invalid user-supplied configuration."""


class UnsupportedType(ConfigError):
    pass


class NotAdapted(ConfigError):
    pass


class WindowError(QClusterError):
    """The finite window cannot support the requested computation."""


class WindowTooSmall(WindowError):
    pass


class BoundaryTouch(WindowError):
    pass


class KnittingFailed(QClusterError):
    pass


class FrozenVertex(QClusterError, ValueError):
    pass


class TranslationMismatch(QClusterError):
    pass


class SingularBlock(QClusterError):
    pass


class NotStabilized(QClusterError):
    pass


class FrameMismatch(QClusterError, ValueError):
    pass


class IdentityFailed(QClusterError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class MismatchWithLambdaC(IdentityFailed):
    pass
