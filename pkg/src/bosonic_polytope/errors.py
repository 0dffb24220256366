"""Exception hierarchy shared by all modules."""


class PolytopeError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(PolytopeError, ValueError):
    """Inputs live in different (N, d) settings or have mismatched lengths."""


class DomainError(PolytopeError, ValueError):
    """(N, d, r) outside the supported range, e.g. N < r - 1 or d < r."""


class PreconditionError(PolytopeError, ValueError):
    """An operation's documented precondition does not hold."""


class NormalizationError(PolytopeError, ValueError):
    """A spectrum or weight vector does not carry the required total."""


class DegeneracyError(PolytopeError, ValueError):
    """A computation needs non-degenerate input (weights or energies)."""


class UnsupportedError(PolytopeError, NotImplementedError):
    """Requested path is not available for these parameters."""


class SizeError(PolytopeError, ValueError):
    """Dense many-body matrix would exceed the supported envelope."""


class DegeneracyWarning(UserWarning):
    """Weighted many-body levels are degenerate; the eigenbasis was fixed by convention."""
