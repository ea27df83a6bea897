"""Exception hierarchy shared by every module."""


class FrobFlatError(Exception):
    """Base class for library errors."""


class InputError(FrobFlatError, ValueError):
    """Malformed or inconsistent input (bad prime, unknown variable, ...)."""


class RingMismatchError(InputError):
    """Operands live in different rings."""


class PreconditionError(FrobFlatError, ValueError):
    """An operation was called outside its domain (e.g. infinite length)."""


class LimitError(FrobFlatError):
    """A configured resource cap (degree, basis size, search budget) was hit."""


class ConsistencyError(FrobFlatError, AssertionError):
    """Two independent computations disagreed; indicates a bug."""
