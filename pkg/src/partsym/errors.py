"""Exception types shared across the package."""


class PartsymError(Exception):
    """Base class for every error raised by partsym."""


class MalformedQuery(PartsymError, ValueError):
    """An argument violates the documented precondition of an operation."""


class ResourceLimit(PartsymError, ValueError):
    """A requested enumeration would be too large to materialise."""


class InconsistencyError(PartsymError):
    """No object exists that is consistent with the given finite data.

    ``witness`` names the piece of input that could not be matched.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalConsistencyError(PartsymError):
    """A construction failed its own post-check; the input table was bad."""
