"""Exception hierarchy shared by every module of the package."""


class BallCoversError(Exception):
    """Base class for all errors raised by this package."""


class RankDeficient(BallCoversError, ValueError):
    """Generators span a lattice of rank smaller than the ambient rank."""


class RankMismatch(BallCoversError, ValueError):
    pass


class NotUnimodular(BallCoversError, ValueError):
    pass


class ModulusMismatch(BallCoversError, ValueError):
    pass


class CapExceeded(BallCoversError):
    """A requested exponent ``n`` lies beyond the configured cap."""


class BudgetExceeded(BallCoversError):
    """An exhaustive enumeration would exceed its scan budget."""


class DisjointnessViolation(BallCoversError):
    """Two proper transforms of boundary curves still meet after blowing up."""


class VerificationFailure(BallCoversError):
    """A computed invariant disagrees with the value it must have."""
