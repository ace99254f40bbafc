"""Exception types raised by hardytree."""


class HardyTreeError(Exception):
    """Base class for all library errors."""


class RootHasNoParent(HardyTreeError, ValueError):
    pass


class LevelTooLarge(HardyTreeError):
    """A level has more vertices than the enumeration cap allows.

    Dense enumeration is refused instead of silently truncated; use a
    representation with a closed-form mean.
    """

    def __init__(self, level, size, cap):
        self.level = level
        self.size = size
        self.cap = cap
        super().__init__(f"level {level} has {size} vertices, enumeration cap is {cap}")


class InvalidExponents(HardyTreeError, ValueError):
    pass


class TailMismatch(HardyTreeError, ValueError):
    """Observed values contradict the declared tail of a level sequence."""


class NotInvertible(HardyTreeError):
    """The shifted multiplication operator has no bounded inverse."""


class SpectrumUndecided(HardyTreeError):
    """The representation cannot certify whether a point lies in the spectrum."""


class DocumentError(HardyTreeError, ValueError):
    """A serialized function document is malformed."""


class NotSerializable(HardyTreeError, TypeError):
    pass
