"""Exception types raised by the simulator."""


class FockError(Exception):
    """Base class for all simulator errors."""


class CutoffExceeded(FockError, ValueError):
    """A requested photon number lies above the cutoff."""


class CutoffTooSmall(FockError, ValueError):
    """The cutoff cannot hold the requested state to the required accuracy.

    ``required`` carries the smallest cutoff that would work, when known.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class CutoffMismatch(FockError, ValueError):
    """Two objects built on different cutoffs were combined."""


class ZeroState(FockError, ValueError):
    """Normalization of a state with zero norm."""


class ConfigInvalid(FockError, ValueError):
    """A scenario configuration failed validation.

    ``field`` names the offending entry.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
