"""Exception types shared across the package.

The CLI maps these onto process exit codes (see ihtwalk.cli):
ConfigError -> 2, DeadBandError -> 3, InvariantError -> 4.
"""


class WalkError(Exception):
    """Base class for all ihtwalk errors."""


class ConfigError(WalkError):
    """Invalid experiment description (schema, dimensions, unknown kinds)."""


class GraphConnectivityError(WalkError):
    """The supplied generators do not produce a connected Cayley graph."""


class DeadBandError(WalkError):
    """A numerical decision (eigenphase gap, singular value) fell inside the
    tolerance dead band, so integer outputs would be unreliable. Re-run with
    an explicitly chosen tolerance."""


class InvariantError(WalkError):
    """A structural identity that must hold by construction was violated."""
