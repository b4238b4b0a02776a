"""Exception hierarchy shared by every gridmagic module."""


class GridMagicError(Exception):
    """Base class for domain errors (mapped to exit status 1 by the CLI)."""


class NonBipartiteError(GridMagicError):
    """Raised where odd-set constraints would be needed but are not modelled."""


class EmptyPolytopeError(GridMagicError):
    """The graph has no perfect matching, so its matching polytope is empty."""


class CapExceededError(GridMagicError):
    """A configured size cap (states, labellings, precision) was exceeded."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class VerificationError(GridMagicError):
    """An internal cross-check failed (held-out term, formula, round trip)."""


class BackwardUndefinedError(GridMagicError):
    """A recurrence with zero trailing coefficient cannot be run backwards."""
