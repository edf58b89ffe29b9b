"""Exception classes raised by ossieve.

Each class derives from the builtin a caller would otherwise expect, so ``except ValueError`` keeps
catching domain problems. The command line maps the classes below onto exit codes.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation (rank, probability, design)."""


class BoundaryError(DomainError):
    """A quantile was requested at a support endpoint, p = 0 or p = 1."""


class NullEventError(ValueError):
    """Conditioning event has probability zero."""


class UnsupportedOperationError(NotImplementedError):
    """The distribution object does not provide the requested capability."""


class InvalidCoefficientsError(ValueError):
    """Sieve coefficients give a degenerate normalising constant."""


class ConfigurationError(ValueError):
    """Run configuration, design, or panel dimensions are inconsistent."""


class DataError(ValueError):
    """An input data file could not be parsed or violates the data invariants."""


class EstimationFailedError(RuntimeError):
    """Every optimizer start was infeasible."""


EXIT_SUCCESS = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NOT_CONVERGED = 4
EXIT_ESTIMATION_FAILED = 5


def exit_code(error):
    """Exit code for an exception raised by a command."""
    if isinstance(error, DataError):
        return EXIT_DATA
    if isinstance(error, EstimationFailedError):
        return EXIT_ESTIMATION_FAILED
    if isinstance(error, (ConfigurationError, DomainError, OSError)):
        return EXIT_CONFIG
    raise error
