"""Exception hierarchy shared by all modules."""


class FrameDragError(Exception):
    """Base class for every error raised by this package."""


class GridError(FrameDragError, ValueError):
    """Invalid grid specification or mismatched grids."""


class ParameterError(FrameDragError, ValueError):
    """Model or step parameters violate their constraints."""


class NormalizationError(FrameDragError):
    """A state that must be normalized is not."""


class LeakageError(FrameDragError):
    """Probability mass reached the edge band of the periodic grid."""

    def __init__(self, boundary_mass, limit):
        self.boundary_mass = boundary_mass
        self.limit = limit
        super().__init__(
            f"boundary mass {boundary_mass:.3e} exceeds leak limit {limit:.1e}")


class StabilityError(FrameDragError):
    """Explicit time step exceeds the stability bound of the scheme."""


class FitError(FrameDragError):
    """A packet does not fit inside the grid domain."""


class TraceDriftError(FrameDragError):
    """Master-equation step changed the trace by more than allowed."""


class InsufficientDataError(FrameDragError, ValueError):
    """Too few samples for a statistical fit."""


class ConfigError(FrameDragError, ValueError):
    """Run configuration failed validation; ``field`` names the culprit."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ExperimentFailedError(FrameDragError):
    """More trajectories failed than the experiment's failure budget allows."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
