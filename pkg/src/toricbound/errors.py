"""Exception hierarchy shared by all modules."""


class ToricError(Exception):
    """Base class for errors raised by toricbound."""


class InputError(ToricError, ValueError):
    """Malformed or mismatched input (rank mismatch, zero vector, ...)."""


class UnsupportedInputError(ToricError, ValueError):
    """Input is well formed but outside what an operation supports."""


class ConfigurationError(ToricError):
    """Infeasible configuration: rank overflow, bad plan, too-small bound."""
