"""Error hierarchy for wedgeops."""


class WedgeOpsError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(WedgeOpsError, ValueError):
    """Shapes, dimensions or grades of the operands do not match."""


class CapabilityError(WedgeOpsError, ValueError):
    """The request is valid but beyond what the dense oracles will build."""


class DomainError(WedgeOpsError, ValueError):
    """A function was evaluated or differentiated outside its analytic domain."""


class PreconditionError(WedgeOpsError, ValueError):
    """A numerical precondition failed; ``deviation`` is how far off it was."""

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation


class SerializationError(WedgeOpsError, ValueError):
    """A JSON document does not describe a valid series, symbol or config."""
