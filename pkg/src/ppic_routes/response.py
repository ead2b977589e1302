"""Transfer matrix of a single TBU and the complex response of a routed path.

A TBU is a 2x2 Mach-Zehnder interferometer with two phase shifts. Bar and
cross are the two settings used for routing; at bar the lower arm picks up a
sign flip, so a path's response carries ``(-1)^q`` with ``q`` the parity of
its bar traversals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import Configuration
from .errors import OutOfRange
from .tracer import TracedPath

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class TbuPhysical:
    """Loss factor, waveguide length (m), effective index and angular frequency (rad/s)."""

    alpha: float
    length: float
    n_eff: float
    omega: float
    c: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise OutOfRange(f"alpha must lie in (0, 1], got {self.alpha}")
        for name in ("length", "n_eff", "omega"):
            if not getattr(self, name) > 0:
                raise OutOfRange(f"{name} must be positive, got {getattr(self, name)}")

    @classmethod
    def from_wavelength(cls, alpha: float, length: float, n_eff: float, wavelength: float) -> TbuPhysical:
        return cls(alpha, length, n_eff, 2 * math.pi * SPEED_OF_LIGHT / wavelength)

    @property
    def phase_delay(self) -> float:
        """Propagation phase of one TBU traversal, ``omega * n_eff * L / c``."""
        return self.omega * self.n_eff * self.length / self.c

    @property
    def unit_factor(self) -> complex:
        return self.alpha * complex(math.cos(self.phase_delay), -math.sin(self.phase_delay))


@dataclass(frozen=True)
class PhaseSettings:
    theta: float
    phi: float


BAR = PhaseSettings(0.0, math.pi)
CROSS = PhaseSettings(-math.pi / 2, -math.pi / 2)


def tbu_transfer(ph: PhaseSettings, phys: TbuPhysical) -> np.ndarray:
    """2x2 complex transfer matrix of one TBU at phase shifts ``(theta, phi)``."""
    a = np.exp(-1j * ph.theta)
    b = np.exp(-1j * ph.phi)
    core = 0.5 * np.array([[a - b, -1j * a - 1j * b], [-1j * a - 1j * b, -a + b]])
    return core * phys.unit_factor


def path_response(b: complex, length: int, q: int, phys: TbuPhysical) -> complex:
    """Output of a path of ``length`` TBUs with bar parity ``q`` for input ``b``."""
    if length < 1:
        raise OutOfRange(f"path length must be at least 1, got {length}")
    if q not in (0, 1):
        raise OutOfRange(f"bar parity must be 0 or 1, got {q}")
    sign = -1 if q else 1
    return b * sign * phys.unit_factor**length


def bar_parity(path: TracedPath, config: Configuration | None = None) -> int:
    """Parity of bar-state traversals along the path (each traversal counts once)."""
    if config is None:
        return path.bar_traversals % 2
    return sum(1 for t in path.tbus if not config.cross[t]) % 2
