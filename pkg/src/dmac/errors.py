"""Exception types shared across the package.

Each carries a short ``category`` string that the command line layer reports
as the machine-readable error kind.
"""


class DmacError(Exception):
    category = "error"


class TopologyError(DmacError, ValueError):
    category = "topology"


class AdmissibilityError(DmacError, ValueError):
    category = "admissibility"


class CapacityError(DmacError, ValueError):
    category = "capacity"


class ConfigError(DmacError, ValueError):
    category = "config"


class DisturbanceRangeError(DmacError, IndexError):
    category = "disturbance"


class BlowUpError(DmacError, FloatingPointError):
    """Raised when a simulated state becomes non-finite or exceeds the guard."""

    category = "blowup"

    def __init__(self, message, step=None, node=None, partial=None):
        super().__init__(message)
        self.step = step
        self.node = node
        self.partial = partial
