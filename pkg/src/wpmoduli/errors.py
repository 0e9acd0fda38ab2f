"""Error types shared by the library and mapped to CLI exit codes."""


class WPError(Exception):
    """Base class for errors raised by this package."""

    exit_code = 1


class DomainError(WPError, ValueError):
    """An argument lies outside the domain where a formula is defined."""

    exit_code = 2


class BudgetError(WPError):
    """An exact computation would exceed the configured size budget.

    Raised instead of silently switching to an asymptotic estimate, so the
    caller has to pick the mode explicitly.
    """

    exit_code = 3


class InvariantError(WPError):
    """A hard invariant checked by a verifier did not hold."""

    exit_code = 4
