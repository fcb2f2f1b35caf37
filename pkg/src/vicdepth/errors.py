"""Exception hierarchy.

Every error carries an exit code so the command line front end can map
failures to a status without inspecting messages.
"""


class VicDepthError(Exception):
    exit_code = 1


class PreconditionError(VicDepthError, ValueError):
    """An operation was called outside its stated hypotheses."""

    exit_code = 2


class RankTooSmallError(PreconditionError):
    """A bipartition label needs more rows than the rank provides."""


class HypothesisError(PreconditionError):
    """A closed formula was requested outside the range where it is a theorem."""


class WindowError(PreconditionError):
    """Window bounds of two modules disagree, or a window is too short."""


class IntegrityError(VicDepthError):
    """Input data is internally inconsistent (relations fail, maps not equivariant...)."""

    exit_code = 3


class RelationError(IntegrityError):
    pass


class NotRootOfUnityError(IntegrityError):
    """An eigenvalue of an elementary matrix is not a root of unity."""


class VerificationError(IntegrityError):
    pass


class DecompositionError(IntegrityError):
    """A level could not be split into (label, finite part) pairs."""


class CapExceededError(VicDepthError):
    """A configured resource cap would be exceeded."""

    exit_code = 4
