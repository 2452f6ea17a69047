"""Exception hierarchy shared by the library and the CLI."""


class GaugeError(Exception):
    """Base class for all library errors."""

    exit_code = 4


class GaugeDomainError(GaugeError, ValueError):
    """Input outside the domain of an operation (zero vector, NaN, bad polygon...)."""

    exit_code = 4


class CapabilityError(GaugeError):
    """Operation needs a capability the gauge does not have (e.g. derivatives of a polygon gauge)."""

    exit_code = 3


class NumericalError(GaugeError):
    """A numerical procedure failed to meet its tolerance."""

    exit_code = 4


class EvoluteUndefinedError(NumericalError):
    """Circular curvature too small at some samples for the evolute to exist."""

    def __init__(self, message, offending_s=()):
        super().__init__(message)
        self.offending_s = list(offending_s)


class NotApplicableError(GaugeError):
    """The input violates the sign hypotheses of a round-trip check."""

    exit_code = 5
