"""Exception hierarchy shared by the library and the command line front end."""


class CoxError(Exception):
    """Base class for all errors raised by :mod:`coxrings`."""

    exit_code = 1


class InputError(CoxError, ValueError):
    """Malformed literal, JSON document or dimension mismatch."""

    exit_code = 2


class PreconditionError(CoxError, ValueError):
    """Well-formed input that violates an operation's precondition.

    Examples are unbounded section polyhedra, oversized classification
    searches, non-exact sequences and non-multiplicative trivializations.
    """

    exit_code = 3


class InvariantViolation(CoxError, AssertionError):
    """An internal consistency check failed. This indicates a bug."""

    exit_code = 4
