"""Exception types shared across the package."""


class BlockForcingError(Exception):
    """Base class for every error this package raises on purpose."""


class CycleError(BlockForcingError):
    """The input relation has a cycle, so it is not a strict partial order."""


class NotCofinal(BlockForcingError):
    """The designated subset fails to bound some element from above."""


class UnknownElement(BlockForcingError):
    """An element identifier does not belong to the poset."""


class EmptySequence(BlockForcingError):
    """A block sequence with no entries defines no blocks at all."""


class LengthTooShort(BlockForcingError):
    """A sequence is too short for the requested comparison window."""


class InsufficientViolations(BlockForcingError):
    """Fewer than two non-adjacent violating blocks; no witness exists."""


class SearchExhausted(BlockForcingError):
    """A bounded search finished without finding what it was asked for."""


class CannotAdvance(BlockForcingError):
    """A name failed to produce its next block from the data it was given."""


class NotIncomparable(BlockForcingError):
    """The pair is comparable, so there is nothing to separate."""


class ResolutionExhausted(BlockForcingError):
    """The step budget ran out before every goal was met.

    ``unmet`` lists the indices of the goals still outstanding.
    """

    def __init__(self, message, unmet=()):
        super().__init__(message)
        self.unmet = tuple(unmet)


class SpecError(BlockForcingError):
    """A JSON input file is malformed or violates its schema."""
