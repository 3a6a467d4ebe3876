"""Exception hierarchy shared by every module of the package."""


class SyncLabError(Exception):
    pass


class InvalidWordError(SyncLabError, ValueError):
    """A word uses a letter index outside the automaton's alphabet."""


class DimensionError(SyncLabError, ValueError):
    """Two objects live over different state universes."""


class ParseError(SyncLabError, ValueError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class ResourceError(SyncLabError, RuntimeError):
    """A configured size or budget cap would be exceeded."""


class NotSynchronizingError(SyncLabError, ValueError):
    pass


class DomainError(SyncLabError, ValueError):
    """Parameters outside the domain of a formula or operation."""


class ConstructionError(SyncLabError, ValueError):
    pass


class HypothesisError(SyncLabError, ValueError):
    """A bound or simulation was called on input outside its preconditions."""


class CongruenceError(SyncLabError, ValueError):
    pass


class ConsistencyError(SyncLabError, AssertionError):
    """Internal self-check failed; indicates a bug, never a user error."""
