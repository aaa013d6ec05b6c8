"""Model definition: chain parameters, pair couplings, momentum grid.

The chain is open, sites are 0-indexed, and the energy unit is the bare
coupling of the Hamiltonian

    H = sum_{i<j} sin(theta) x_i x_j / |i-j|^alpha + cos(theta) sum_i z_i

written with Pauli matrices x, z.  theta interpolates between a pure
transverse field (theta = 0) and a pure long-range Ising coupling
(theta = pi/2); alpha > 0 controls the interaction range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidPairError, ValidationError

#: Spin length.  The whole package is specialized to spin one-half.
SPIN = 0.5


def default_quench_site(length: int) -> int:
    """Center-left site (0-indexed) used when no quench site is given."""
    return math.ceil(length / 2) - 1


@dataclass(frozen=True)
class ModelParams:
    """Physical configuration of the long-range transverse-field Ising chain.

    Angles are in radians, sites 0-indexed.  ``quench_site`` defaults to the
    center-left site ceil(L/2) - 1.
    """

    theta: float
    alpha: float
    length: int
    spin: float = SPIN
    quench_site: int | None = None

    def __post_init__(self):
        if self.quench_site is None:
            object.__setattr__(self, "quench_site", default_quench_site(self.length))

    def violations(self) -> list[str]:
        """Names of all violated invariants (empty when valid)."""
        found = []
        if not (isinstance(self.length, (int, np.integer)) and self.length >= 2):
            found.append("length-too-small")
        if not (np.isfinite(self.alpha) and self.alpha > 0.0):
            found.append("alpha-nonpositive")
        if not (np.isfinite(self.theta) and 0.0 <= self.theta <= math.pi / 2):
            found.append("theta-out-of-range")
        if self.spin != SPIN:
            found.append("spin-not-half")
        if "length-too-small" not in found:
            if not (
                isinstance(self.quench_site, (int, np.integer))
                and 0 <= self.quench_site < self.length
            ):
                found.append("quench-site-out-of-range")
        return found


def validate(params: ModelParams) -> None:
    """Raise ValidationError naming every violated ModelParams invariant."""
    found = params.violations()
    if found:
        raise ValidationError(found)


def coupling(i: int, j: int, params: ModelParams) -> float:
    """Bare pair coupling 1/|i-j|^alpha between two distinct sites."""
    n = params.length
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise InvalidPairError(f"invalid site pair ({i}, {j}) for length {n}")
    return float(abs(i - j) ** (-params.alpha))


@dataclass(frozen=True)
class MomentumGrid:
    """Periodic momentum grid k_n = 2 pi n / L for n = 0 .. L-1."""

    length: int

    @property
    def modes(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.length) / self.length

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.length
