class NoetherError(Exception):
    """Base class for errors raised by this package."""


class HypothesisError(NoetherError):
    """An input violates a hypothesis of the requested construction."""


class ResourceLimitError(NoetherError):
    """A configured size or term cap was exceeded."""


class RetryExhaustedError(NoetherError):
    """A randomized construction failed for every attempt up to the retry cap."""

    def __init__(self, message, seed=None, cap=None):
        super().__init__(f"{message} (seed={seed}, retry cap={cap})")
        self.seed = seed
        self.cap = cap
