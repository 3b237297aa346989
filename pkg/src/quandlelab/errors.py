"""Exception hierarchy. The CLI maps each class to an exit code."""


class QuandleLabError(Exception):
    exit_code = 1


class InputError(QuandleLabError, ValueError):
    """Malformed or unsupported input (exit code 2)."""

    exit_code = 2


class ResourceLimitError(QuandleLabError):
    """A configured size cap was exceeded (exit code 3)."""

    exit_code = 3


class CosetLimitError(ResourceLimitError):
    """Coset enumeration hit max_cosets; the index may be infinite."""


class ConsistencyError(QuandleLabError, AssertionError):
    """A theorem-guaranteed check failed, which signals a bug (exit code 4)."""

    exit_code = 4


class CompositionError(ConsistencyError, ValueError):
    """d_out * d_in != 0 when computing homology."""


class NotACycleError(InputError):
    pass
