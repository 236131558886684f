"""Exception taxonomy shared by the library and the CLI exit-code contract."""


class LiouvilleError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DomainError(LiouvilleError):
    """An argument lies outside the mathematical domain of the operation."""

    exit_code = 1


class ResourceLimitError(LiouvilleError):
    """The request exceeds a configured budget (sieve size, integer width, ...)."""

    exit_code = 2


class ValidationError(LiouvilleError):
    """A request, constructor description, or parameter set is malformed."""

    exit_code = 3


class UndecidableError(DomainError):
    """The analytic metadata required by the operation is not decided for this set."""
