"""Exception hierarchy shared by all modules."""


class BethecircError(Exception):
    """Base class for all package errors."""


class PoleError(BethecircError):
    """A Boltzmann-weight denominator sinh(u + i*gamma) is too close to zero."""


class DegenerateRapiditiesError(BethecircError):
    """Two rapidities coincide within tolerance; Bethe states would be linearly dependent."""


class SizeGuardError(BethecircError):
    """Requested object exceeds the dense desk-scale guards."""


class SingularFactorError(BethecircError):
    """A matrix that must be inverted (F-matrix, gauge, Gram, B) is numerically singular."""


class CompletionError(BethecircError):
    """Orthonormal completion of a unitary block failed; signals an upstream isometry bug."""
