"""Thrust-to-power arithmetic: ideal pair-production thruster vs photon thruster.

Thrust is taken as F = 2 mdot v for mdot of particles plus mdot of
antiparticles leaving at speed v (no relativistic momentum correction).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import c
from .errors import ExhaustAtLightSpeed


@dataclass(frozen=True)
class ThrusterPoint:
    mdot: float
    v: float

    def __post_init__(self):
        if not self.mdot >= 0:
            raise ValueError("mdot must be >= 0")
        _check_speed(self.v)


@dataclass(frozen=True)
class PowerBreakdown:
    exact: float
    approx: float

    @property
    def rel_difference(self) -> float:
        if self.exact == 0:
            return 0.0
        return abs(self.exact - self.approx) / self.exact


def _check_speed(v):
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise ValueError("exhaust speed must be >= 0")
    if np.any(v >= c):
        raise ExhaustAtLightSpeed("exhaust speed must be below c")


def pair_thruster_power(p: ThrusterPoint) -> PowerBreakdown:
    """Minimum input power in W: 2 mdot c^2 gamma, and 2 mdot c^2 + mdot v^2."""
    beta2 = (p.v / c) ** 2
    exact = 2.0 * p.mdot * c**2 / np.sqrt(1.0 - beta2)
    approx = 2.0 * p.mdot * c**2 + p.mdot * p.v**2
    return PowerBreakdown(float(exact), float(approx))


def thrust(p: ThrusterPoint) -> float:
    return 2.0 * p.mdot * p.v


def pair_thruster_f_over_p(v):
    """2 v / (2 c^2 + v^2) in N/W. Accepts scalars or arrays."""
    _check_speed(v)
    v = np.asarray(v, dtype=float)
    out = 2.0 * v / (2.0 * c**2 + v * v)
    return float(out) if out.ndim == 0 else out


def photon_thruster_f_over_p() -> float:
    return 1.0 / c


def sweep(mdot: float, speeds) -> dict[str, np.ndarray]:
    """Table of the trade study over exhaust speeds, one column per quantity."""
    v = np.asarray(speeds, dtype=float)
    _check_speed(v)
    p_exact = 2.0 * mdot * c**2 / np.sqrt(1.0 - (v / c) ** 2)
    p_approx = 2.0 * mdot * c**2 + mdot * v**2
    return {
        "v": v,
        "P_exact": p_exact,
        "P_approx": p_approx,
        "F": 2.0 * mdot * v,
        "F_over_P_pair": pair_thruster_f_over_p(v) * np.ones_like(v),
        "F_over_P_photon": np.full_like(v, photon_thruster_f_over_p()),
    }
