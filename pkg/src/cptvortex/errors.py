"""Exception types shared across the package.

The CLI maps these onto process exit codes: validation problems exit with 2,
numerical divergence with 3, and I/O failures (plain OSError) with 4.
"""


class CptVortexError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(CptVortexError, ValueError):
    """A parameter, grid, or configuration value violates its preconditions."""


class DegenerateProfileError(ValidationError):
    """Both control amplitudes vanish, so the mixing angle is undefined."""


class DivergenceError(CptVortexError, RuntimeError):
    """The time integration produced a non-finite value.

    Carries the location of the first failure so runs can be diagnosed.
    """

    def __init__(self, message, z=None, t=None):
        super().__init__(message)
        self.z = z
        self.t = t
