"""Exception types shared across the package.

Everything raised by the library derives from ReliaforgeError so the CLI
can map computation failures to a single exit code.
"""


class ReliaforgeError(Exception):
    """Base class for all errors raised by this package."""


class NetworkError(ReliaforgeError):
    """Invalid network document or violated network invariant."""


class PathLimitError(ReliaforgeError):
    """Simple-path enumeration exceeded the configured per-OD cap."""


class StateError(ReliaforgeError):
    """Reliability state does not cover the network's elements exactly."""


class EnumerationError(ReliaforgeError):
    """Network too large for exact state enumeration."""


class SimplexError(ReliaforgeError):
    """Linear program could not be solved."""


class InfeasibleProblem(SimplexError):
    """The LP has no feasible point."""


class UnboundedProblem(SimplexError):
    """The LP objective is unbounded on the feasible set."""


class GameStalledError(ReliaforgeError):
    """No strategy weight is attached to an improvable element."""
