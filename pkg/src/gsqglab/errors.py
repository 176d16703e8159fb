"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A run/sweep/verify configuration is inconsistent or incomplete."""


class ZeroModeError(ValueError):
    """A negative-power spectral multiplier was applied to a field with mean != 0."""


class UnresolvedFieldError(ValueError):
    """A field carries too much energy near the grid Nyquist for the requested operation."""


class BlowUpError(RuntimeError):
    """Non-finite values appeared during time integration."""

    def __init__(self, t: float, step: int):
        super().__init__(f"blow-up or instability at t={t:.6g}, step {step}")
        self.t = t
        self.step = step


class SnapshotFormatError(ValueError):
    """A snapshot file does not conform to the GSF1 layout."""
