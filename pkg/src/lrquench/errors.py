"""Exception types shared by the simulation engines."""


class LRQuenchError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LRQuenchError):
    """One or more parameter invariants are violated.

    ``violations`` lists one short name per failed invariant.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid parameters: " + ", ".join(self.violations))


class InvalidPairError(LRQuenchError):
    """A coupling or overlap was queried for an invalid site pair."""


class SpinWaveInstabilityError(LRQuenchError):
    """A mode has negative squared frequency: magnetic order is too weak
    for the harmonic expansion to make sense at these parameters."""


class GaplessModeError(LRQuenchError):
    """A zero-frequency mode makes ground-state correlators ill-defined."""


class DegenerateQuenchError(LRQuenchError):
    """The local-quench normalization vanishes."""


class NumericFailureError(LRQuenchError):
    """An iterative routine failed to converge or produced NaN/overflow."""


class SizeCapError(LRQuenchError):
    """Requested exact-diagonalization size exceeds the hard cap."""


class EntropyDomainError(LRQuenchError):
    """Single-site entropy evaluated at a negative occupation."""
