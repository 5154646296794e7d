"""Classical field algebra for uniform E and B fields (SI units).

Drift velocity, Lorentz boosts of (E, B) along an arbitrary axis, the boost
that makes non-perpendicular fields parallel, and a relativistic Boris pusher
used to show that the E x B drift does not depend on the sign of the charge.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import c
from .errors import (
    DegenerateNullField,
    DriftExceedsC,
    PerpendicularFields,
    SuperluminalBoost,
    SuperluminalInitialVelocity,
    TimestepTooLarge,
    ZeroMagneticField,
)

#: |cos(theta)| below this counts as perpendicular fields
PERPENDICULAR_TOL = 1e-10


def _vec(v) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(3)
    return a.copy()


@dataclass(frozen=True)
class FieldConfiguration:
    """Uniform electric (V/m) and magnetic (T) field vectors."""

    E: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        E, B = _vec(self.E), _vec(self.B)
        if not (np.all(np.isfinite(E)) and np.all(np.isfinite(B))):
            raise ValueError("field components must be finite")
        E.flags.writeable = False
        B.flags.writeable = False
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "B", B)

    @property
    def I1(self) -> float:
        """E . B, invariant under boosts."""
        return float(np.dot(self.E, self.B))

    @property
    def I2(self) -> float:
        """E^2 - c^2 B^2, invariant under boosts."""
        return float(np.dot(self.E, self.E) - c**2 * np.dot(self.B, self.B))

    @property
    def theta(self) -> float:
        """Angle between E and B in radians (nan if either vanishes)."""
        nE, nB = np.linalg.norm(self.E), np.linalg.norm(self.B)
        if nE == 0 or nB == 0:
            return math.nan
        return math.atan2(np.linalg.norm(np.cross(self.E, self.B)), np.dot(self.E, self.B))

    def invariant_scales(self) -> tuple[float, float]:
        """Magnitudes against which I1 and I2 errors are measured."""
        E2 = float(np.dot(self.E, self.E))
        cB2 = c**2 * float(np.dot(self.B, self.B))
        return math.sqrt(E2 * np.dot(self.B, self.B)), E2 + cB2


@dataclass(frozen=True)
class BoostResult:
    u: float
    gamma: float
    boosted: FieldConfiguration
    axis: np.ndarray


def lorentz_gamma(u: float) -> float:
    beta = u / c
    return 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))


def drift_velocity(f: FieldConfiguration) -> np.ndarray:
    """E x B / B^2 in m/s. Warns with DriftExceedsC when the result reaches c."""
    B2 = float(np.dot(f.B, f.B))
    if B2 == 0.0:
        raise ZeroMagneticField("drift velocity needs |B| > 0")
    v = np.cross(f.E, f.B) / B2
    if np.linalg.norm(v) >= c:
        warnings.warn(f"|E x B|/B^2 = {np.linalg.norm(v):.6g} m/s >= c", DriftExceedsC, stacklevel=2)
    return v


def boost_fields(f: FieldConfiguration, u: float, axis=(1.0, 0.0, 0.0)) -> FieldConfiguration:
    """Fields seen from a frame moving with velocity u * axis.

    Parallel components are unchanged; transverse ones mix as
    E' = gamma (E + u x B), B' = gamma (B - u x E / c^2).
    """
    if not abs(u) < c:
        raise SuperluminalBoost(f"|u| = {abs(u)!r} m/s is not below c")
    n = _vec(axis)
    norm = np.linalg.norm(n)
    if norm == 0:
        raise ValueError("boost axis must be nonzero")
    n /= norm
    g = lorentz_gamma(u)
    E_par = np.dot(f.E, n) * n
    B_par = np.dot(f.B, n) * n
    uvec = u * n
    E_new = E_par + g * (f.E - E_par + np.cross(uvec, f.B))
    B_new = B_par + g * (f.B - B_par - np.cross(uvec, f.E) / c**2)
    return FieldConfiguration(E_new, B_new)


def colinear_speed_relation(u: float, f: FieldConfiguration) -> float:
    """Relative residual of u / (1 + u^2/c^2) = |E x B| / (B^2 + E^2/c^2)."""
    r = np.linalg.norm(np.cross(f.E, f.B)) / (np.dot(f.B, f.B) + np.dot(f.E, f.E) / c**2)
    lhs = u / (1.0 + (u / c) ** 2)
    if r == 0:
        return abs(lhs)
    return abs(lhs - r) / r


def colinearizing_boost(f: FieldConfiguration) -> BoostResult:
    """Boost along E x B after which E and B are parallel.

    Solves (r/c^2) u^2 - u + r = 0 with r = |E x B| / (B^2 + E^2/c^2),
    keeping the subluminal root.
    """
    nE, nB = np.linalg.norm(f.E), np.linalg.norm(f.B)
    cross = np.cross(f.E, f.B)
    ncross = np.linalg.norm(cross)
    if nE == 0 or nB == 0 or ncross == 0:
        # already colinear (or one field absent)
        axis = _any_perpendicular(f.B if nB else f.E)
        return BoostResult(0.0, 1.0, f, axis)
    cos_theta = np.dot(f.E, f.B) / (nE * nB)
    if abs(cos_theta) < PERPENDICULAR_TOL:
        raise PerpendicularFields(f"|cos theta| = {abs(cos_theta):.3g}; no frame with parallel fields")
    r = ncross / (nB**2 + nE**2 / c**2)
    disc = 1.0 - 4.0 * (r / c) ** 2
    if disc <= 0:
        raise DegenerateNullField(f"discriminant {disc:.3g} <= 0")
    # smaller root, written without cancellation
    u = 2.0 * r / (1.0 + math.sqrt(disc))
    axis = cross / ncross
    boosted = boost_fields(f, u, axis)
    return BoostResult(u, lorentz_gamma(u), boosted, axis)


def _any_perpendicular(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if not np.any(v):
        return np.array([1.0, 0.0, 0.0])
    trial = np.eye(3)[int(np.argmin(np.abs(v)))]
    p = np.cross(v, trial)
    return p / np.linalg.norm(p)


def parallelism_defect(f: FieldConfiguration) -> float:
    """|E x B| / (|E| |B|); zero for parallel or anti-parallel fields."""
    nE, nB = np.linalg.norm(f.E), np.linalg.norm(f.B)
    if nE == 0 or nB == 0:
        return 0.0
    return float(np.linalg.norm(np.cross(f.E, f.B)) / (nE * nB))


# --- particle pusher -------------------------------------------------------


@dataclass
class Trajectory:
    t: np.ndarray  # (steps+1,)
    x: np.ndarray  # (steps+1, 3) positions
    v: np.ndarray  # (steps+1, 3) velocities at the same times
    q: float
    m: float
    dt: float


def gyroperiod(q: float, m: float, B: float, gamma: float = 1.0) -> float:
    return 2.0 * math.pi * gamma * m / (abs(q) * B)


def push_particle(f: FieldConfiguration, q: float, m: float, x0, v0, dt: float, steps: int) -> Trajectory:
    """Integrate the relativistic Lorentz-force equation with the Boris scheme.

    Momentum per mass u = gamma v is advanced with a half electric kick, a
    magnetic rotation and a second half kick; positions are leapfrogged.
    Velocities in the returned trajectory are synchronised with positions
    by a half Boris step from the preceding half-step momentum.
    """
    if m <= 0:
        raise ValueError("mass must be positive")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    x0, v0 = _vec(x0), _vec(v0)
    if np.linalg.norm(v0) >= c:
        raise SuperluminalInitialVelocity("|v0| must be below c")
    nB = np.linalg.norm(f.B)
    if nB > 0 and q != 0 and dt > 0.05 * gyroperiod(q, m, nB):
        raise TimestepTooLarge(f"dt = {dt:.3g} s exceeds 0.05 gyroperiods ({gyroperiod(q, m, nB):.3g} s)")

    qmdt2 = q * dt / (2.0 * m)
    E, B = f.E, f.B
    g0 = 1.0 / math.sqrt(1.0 - np.dot(v0, v0) / c**2)
    u0 = g0 * v0
    # back u up half a step so the leapfrog is centred
    u = _boris_step(u0, E, B, -qmdt2 / 2.0)

    xs = np.empty((steps + 1, 3))
    us_half = np.empty((steps + 1, 3))
    xs[0] = x0
    us_half[0] = u
    x = x0.copy()
    for i in range(1, steps + 1):
        u = _boris_step(u, E, B, qmdt2)
        gamma = math.sqrt(1.0 + np.dot(u, u) / c**2)
        x = x + dt * u / gamma
        xs[i] = x
        us_half[i] = u
    # u at integer times: advance each u^{n-1/2} by a half Boris step
    u_int = np.empty_like(us_half)
    u_int[0] = u0
    for i in range(1, steps + 1):
        u_int[i] = _boris_step(us_half[i], E, B, qmdt2 / 2.0)
    gam = np.sqrt(1.0 + np.sum(u_int**2, axis=1) / c**2)
    t = dt * np.arange(steps + 1)
    return Trajectory(t, xs, u_int / gam[:, None], q, m, dt)


def _boris_step(u, E, B, qmdt2):
    u_minus = u + qmdt2 * E
    gamma = math.sqrt(1.0 + np.dot(u_minus, u_minus) / c**2)
    T = qmdt2 * B / gamma
    S = 2.0 * T / (1.0 + np.dot(T, T))
    u_prime = u_minus + np.cross(u_minus, T)
    u_plus = u_minus + np.cross(u_prime, S)
    return u_plus + qmdt2 * E


def gyro_averaged_drift(traj: Trajectory, f: FieldConfiguration, skip_periods: int = 1) -> np.ndarray:
    """Mean velocity over an integer number of gyroperiods.

    The period is taken from |B| and the mean Lorentz factor of the run.
    Uses the net displacement, so the estimate carries no gyrophase bias.
    """
    nB = np.linalg.norm(f.B)
    if nB == 0:
        raise ZeroMagneticField("gyro-averaging needs |B| > 0")
    v2 = np.sum(traj.v**2, axis=1)
    gamma = float(np.mean(1.0 / np.sqrt(1.0 - v2 / c**2)))
    T = gyroperiod(traj.q, traj.m, nB, gamma)
    per = T / traj.dt
    start = int(round(skip_periods * per))
    total = (len(traj.t) - 1 - start) / per
    n_periods = int(math.floor(total))
    if n_periods < 1:
        raise ValueError("trajectory shorter than one gyroperiod after the skipped transient")
    stop = start + int(round(n_periods * per))
    return (traj.x[stop] - traj.x[start]) / (traj.t[stop] - traj.t[start])
