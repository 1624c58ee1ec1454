"""Exception types raised across the package."""
from __future__ import annotations


class EstimationError(ValueError):
    """Base class for rejected estimation inputs."""


class GaplessModelError(EstimationError):
    """The Ising chain is at the critical point |g| = 1."""


class UnreachableTargetError(EstimationError):
    """A requested guess-state overlap lies outside what the ansatz family can reach."""

    def __init__(self, target: float, maximum: float, minimum: float | None = None):
        if minimum is None:
            msg = f"target overlap {target:.6g} exceeds the family maximum {maximum:.6g}"
        else:
            msg = f"target overlap {target:.6g} is below the family minimum {minimum:.6g}"
        super().__init__(msg)
        self.target = target
        self.maximum = maximum
        self.minimum = minimum


class InfeasiblePlanError(EstimationError):
    """Rotation-synthesis corrections consume the whole reflector error budget."""


class AlphabetTooSmallError(EstimationError):
    """The plane-wave count is below eta**2, so no system-register qubits can be recycled."""


class ConfigError(EstimationError):
    """Malformed or inconsistent run configuration."""
