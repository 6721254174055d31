"""Exception hierarchy shared by all contextia modules."""


class ContextiaError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ContextiaError, ValueError):
    """An input failed a precondition or type invariant."""


class CapacityError(ContextiaError):
    """A request exceeded an exhaustive-enumeration or size cap."""


class ConstructionError(ContextiaError, RuntimeError):
    """A randomized sampler could not realize the requested object."""


class VerificationError(ContextiaError):
    """A numerically verified property failed its asserted bound."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
