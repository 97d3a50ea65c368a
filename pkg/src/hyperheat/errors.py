"""Exception types shared across the package."""


class HyperheatError(Exception):
    """Base class for all package errors."""


class ParameterError(HyperheatError, ValueError):
    """A parameter is outside its documented domain."""


class SymmetryError(HyperheatError, ValueError):
    """Spectral coefficients violate Hermitian symmetry beyond tolerance."""


class InconsistentGridError(HyperheatError, ValueError):
    """Two fields that must share a grid do not."""


class IntegrationError(HyperheatError, RuntimeError):
    """A time step produced non-finite or unstable values.

    Carries ``step`` (slab index) and ``time`` of the offending step.
    """

    def __init__(self, message, step=None, time=None):
        super().__init__(message)
        self.step = step
        self.time = time


class BlowupSuspectedError(HyperheatError, RuntimeError):
    """Fixed-point iteration diverged; blow-up of the solution suspected.

    Carries ``report``, the partial iteration report collected so far.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConfigError(HyperheatError, ValueError):
    """An experiment configuration file is malformed."""
