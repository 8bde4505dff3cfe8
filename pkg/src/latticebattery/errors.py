"""Exception hierarchy shared by all modules."""


class LatticeBatteryError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpecError(LatticeBatteryError, ValueError):
    """A lattice or run configuration violates its invariants."""


class InvalidArgumentError(LatticeBatteryError, ValueError):
    """An operation received an argument outside its domain."""


class InvalidStateError(InvalidArgumentError):
    """A matrix is not a valid density matrix within tolerance."""


class NonUniqueSteadyStateError(LatticeBatteryError):
    """The Liouvillian has a degenerate zero eigenspace."""


class NotConvergedError(LatticeBatteryError):
    """An iterative procedure did not reach its target.

    ``best`` carries the closest value attained (e.g. the largest
    ergotropy fraction), when meaningful.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class BracketError(LatticeBatteryError):
    """Root bracketing failed (e.g. entropy below the reachable floor)."""
