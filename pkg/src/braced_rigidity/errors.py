"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (bad data or a violated
precondition, CLI exit code 2) and :class:`InvariantBreach` (something that a
theorem guarantees did not happen, CLI exit code 3).
"""


class RigidityError(Exception):
    """Base class for every error raised by this package."""


class InputError(RigidityError, ValueError):
    pass


class InvariantBreach(RigidityError, RuntimeError):
    pass


# --- triangulations -------------------------------------------------------

class NotSimple(InputError):
    pass


class NonTriangularFace(InputError):
    pass


class EulerViolation(InputError):
    pass


class Not3Connected(InputError):
    pass


class NotFourConnected(InputError):
    pass


class NotAnEdge(InputError):
    pass


class EdgeOnSeparatingTriangle(InputError):
    pass


# --- contractible edge search ---------------------------------------------

class AdjacentPair(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class NoneContractible(InvariantBreach):
    pass


class NotFound(InvariantBreach):
    pass


# --- rigidity --------------------------------------------------------------

class InvalidSplit(InputError):
    pass


class GeneralPositionViolated(InputError):
    pass


class MaxAttemptsExceeded(InvariantBreach):
    pass


class NotEquilibrium(InputError):
    pass


class CoincidentRankDeficient(RigidityError):
    """The coincident realisation needed for a split step is not full rank."""


# --- braced triangulations -------------------------------------------------

class WitnessFailed(InvariantBreach):
    pass


class CertificationFailed(InvariantBreach):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
