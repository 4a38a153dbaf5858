"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class LatCountError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InputError(LatCountError, ValueError):
    """Malformed or out-of-domain input (CLI exit code 2)."""

    exit_code = 2


class DescriptorError(InputError):
    """Invalid Lie type descriptor (family/rank/twist combination)."""


class DomainError(InputError):
    """Argument outside the domain where a functional is defined."""


class UnsupportedFieldError(InputError):
    """Operation not available for this kind of field (e.g. real quadratic)."""


class FeasibilityError(LatCountError):
    """A desk-scale feasibility guard was exceeded (CLI exit code 3)."""

    exit_code = 3
