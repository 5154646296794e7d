"""Mode functions of a charged scalar field in parallel E and B (natural units).

Gauge A^mu = (0, -B z, -E t, 0) with E, B along y.  Separating
psi = phi(t) chi(z) exp(i (k_x x + k_y y)) gives

    chi'' - ((k_x + qB z)^2 - beta) chi = 0      (Landau levels, beta_n = (2n+1) qB)
    phi'' + ((k_y + qE t)^2 + m^2 + beta) phi = 0

The transverse solutions are Hermite functions of xi = (k_x + qB z)/sqrt(qB);
the temporal ones are parabolic cylinder functions of tau e^{-i pi/4} with
tau = sqrt(2/qE) (k_y + qE t).

Sign note: with A_x = -B z the standard curl gives B = -B y_hat, not +B y_hat.
The mode equations above are used as written; they are self-consistent and
the vanishing results do not depend on the sign of B.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from . import pcf
from .errors import IndexTooLarge, LossOfPrecision, OutOfDomain

MAX_LANDAU_INDEX = 1000
MAX_TAU = 50.0
_RAY = cmath.exp(-0.25j * math.pi)


@dataclass(frozen=True)
class ModeContext:
    qE: float
    qB: float
    m: float = 0.0
    n: int = 0
    k_x: float = 0.0
    k_y: float = 0.0

    def __post_init__(self):
        if not self.qE > 0 or not self.qB > 0:
            raise ValueError("qE and qB must be positive")
        if not self.m >= 0:
            raise ValueError("m must be >= 0")
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a non-negative integer")
        if self.n > MAX_LANDAU_INDEX:
            raise IndexTooLarge(f"n = {self.n} exceeds {MAX_LANDAU_INDEX}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def beta(self) -> float:
        return (2 * self.n + 1) * self.qB

    @property
    def a(self) -> float:
        return -(self.m**2 + self.beta) / (2.0 * self.qE)

    @property
    def nu(self) -> complex:
        """Order of the parabolic cylinder function, -i a - 1/2."""
        return complex(-0.5, -self.a)

    @property
    def delta(self) -> float:
        """arg Gamma(1/2 + i a), folded into (-pi, pi]."""
        d = complex(loggamma(complex(0.5, self.a))).imag
        d = math.remainder(d, 2.0 * math.pi)
        return math.pi if d == -math.pi else d

    def with_n(self, n: int) -> "ModeContext":
        return ModeContext(self.qE, self.qB, self.m, n, self.k_x, self.k_y)


def xi(ctx: ModeContext, z):
    return (ctx.k_x + ctx.qB * np.asarray(z, dtype=float)) / math.sqrt(ctx.qB)


def tau(ctx: ModeContext, t):
    return math.sqrt(2.0 / ctx.qE) * (ctx.k_y + ctx.qE * np.asarray(t, dtype=float))


# --- Hermite functions ------------------------------------------------------------------


def hermite_functions(n_max: int, x) -> np.ndarray:
    """Unit-normalised Hermite functions h_0..h_{n_max} at x, shape (n_max+1, *x.shape).

    Uses h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1} with a running
    log scale, so large |x| does not underflow before the turning point.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max > MAX_LANDAU_INDEX:
        raise IndexTooLarge(f"n = {n_max} exceeds {MAX_LANDAU_INDEX}")
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    out = np.empty((n_max + 1, x.size))
    log_scale = -0.5 * x * x - 0.25 * math.log(math.pi)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    out[0] = cur
    for k in range(n_max):
        nxt = x * math.sqrt(2.0 / (k + 1)) * cur - math.sqrt(k / (k + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > 1e150
        if np.any(big):
            s = np.where(big, np.abs(cur), 1.0)
            cur = cur / s
            prev = prev / s
            out[: k + 1] /= s  # earlier entries share the scale
            log_scale = log_scale + np.log(s)
        out[k + 1] = cur
    with np.errstate(under="ignore"):
        out *= np.exp(log_scale)
    return out.reshape((n_max + 1,) + shape)


def hermite_mode(ctx: ModeContext, xi_value):
    """chi_n(xi) = (qB)^{1/4} h_n(xi)."""
    return ctx.qB**0.25 * hermite_functions(ctx.n, xi_value)[ctx.n]


def hermite_mode_derivative(ctx: ModeContext, xi_value):
    """d chi_n / d xi from the ladder relation h_n' = sqrt(n/2) h_{n-1} - sqrt((n+1)/2) h_{n+1}."""
    h = hermite_functions(ctx.n + 1, xi_value)
    n = ctx.n
    d = -math.sqrt((n + 1) / 2.0) * h[n + 1]
    if n > 0:
        d = d + math.sqrt(n / 2.0) * h[n - 1]
    return ctx.qB**0.25 * d


# --- temporal modes ----------------------------------------------------------------------


def _phi_log_prefactor(ctx: ModeContext) -> tuple[float, complex]:
    log_mag = -0.25 * math.log(2.0 * ctx.qE) + 0.25 * math.pi * ctx.a
    phase = cmath.exp(1j * (0.5 * math.pi + 0.5 * ctx.delta))
    return log_mag, phase


def _combine(log_mag: float, phase: complex, v: pcf.PCFValue, factor: complex) -> tuple[complex, complex]:
    mag = max(abs(v.value), abs(v.deriv))
    if mag == 0:
        return 0j, 0j
    s = math.exp(log_mag + v.log_scale + math.log(mag))
    return s * phase * v.value / mag, s * phase * factor * v.deriv / mag


def _ray_values(ctx: ModeContext, taus: np.ndarray) -> list:
    """D_nu(tau e^{-i pi/4}) for every tau, one continuation pass per sign."""
    taus = np.asarray(taus, dtype=float)
    if np.any(np.abs(taus) > MAX_TAU):
        raise OutOfDomain(f"|tau| must be <= {MAX_TAU}")
    if not np.all(np.isfinite(taus)):
        raise OutOfDomain("tau must be finite")
    out: list = [None] * taus.size
    flat = taus.ravel()
    for sign in (1.0, -1.0):
        idx = np.nonzero(flat >= 0)[0] if sign > 0 else np.nonzero(flat < 0)[0]
        if idx.size == 0:
            continue
        order = idx[np.argsort(np.abs(flat[idx]), kind="stable")]
        vals = pcf.pcf_d_ray(ctx.nu, np.abs(flat[order]), sign * _RAY)
        for i, v in zip(order, vals):
            out[i] = v
    return out


def phi_mode_with_derivative(ctx: ModeContext, taus) -> tuple[np.ndarray, np.ndarray]:
    """phi_n(tau) and d phi_n / d tau, carried together through the continuation.

    phi_n = (2 qE)^{-1/4} exp(pi a/4 + i pi/2 + i delta/2) D_{-i a - 1/2}(tau e^{-i pi/4}).
    """
    taus = np.asarray(taus, dtype=float)
    vals = _ray_values(ctx, taus)
    log_mag, phase = _phi_log_prefactor(ctx)
    phi = np.empty(taus.size, dtype=complex)
    dphi = np.empty(taus.size, dtype=complex)
    worst = 0.0
    for i, v in enumerate(vals):
        phi[i], dphi[i] = _combine(log_mag, phase, v, _RAY)
        worst = max(worst, v.rel_error)
    if worst > pcf.PRECISION_FLAG:
        warnings.warn(f"phi_n: estimated relative error {worst:.2g}", LossOfPrecision, stacklevel=2)
    return phi.reshape(taus.shape), dphi.reshape(taus.shape)


def phi_mode(ctx: ModeContext, tau_value):
    phi, _ = phi_mode_with_derivative(ctx, tau_value)
    return phi if phi.ndim else complex(phi)


def phi_mode_conj_with_derivative(ctx: ModeContext, taus) -> tuple[np.ndarray, np.ndarray]:
    """phi*_n = (2 qE)^{-1/4} exp(pi a/4 - i pi/2 - i delta/2) conj(D_{-i a - 1/2}(tau e^{-i pi/4}))."""
    taus = np.asarray(taus, dtype=float)
    vals = _ray_values(ctx, taus)
    log_mag, phase = _phi_log_prefactor(ctx)
    phase_c = phase.conjugate()
    out = np.empty(taus.size, dtype=complex)
    dout = np.empty(taus.size, dtype=complex)
    for i, v in enumerate(vals):
        conj_v = pcf.PCFValue(v.value.conjugate(), v.deriv.conjugate(), v.log_scale, v.rel_error, v.method)
        out[i], dout[i] = _combine(log_mag, phase_c, conj_v, _RAY.conjugate())
    return out.reshape(taus.shape), dout.reshape(taus.shape)


def phi_mode_conj(ctx: ModeContext, tau_value):
    out, _ = phi_mode_conj_with_derivative(ctx, tau_value)
    return out if out.ndim else complex(out)


def wronskian(ctx: ModeContext, taus):
    """W{phi_n, phi*_n} = phi_n d phi*_n/d tau - phi*_n d phi_n/d tau."""
    phi, dphi = phi_mode_with_derivative(ctx, taus)
    phic, dphic = phi_mode_conj_with_derivative(ctx, taus)
    return phi * dphic - phic * dphi


def wronskian_t(ctx: ModeContext, taus):
    """phi*_n d phi_n/dt - phi_n d phi*_n/dt; the bracket of the field commutator."""
    return -math.sqrt(2.0 * ctx.qE) * wronskian(ctx, taus)


def expected_wronskian(ctx: ModeContext) -> complex:
    """Closed form of W{phi_n, phi*_n} for the normalisation used here: -i / sqrt(2 qE)."""
    return -1j / math.sqrt(2.0 * ctx.qE)


# --- separated-equation residuals ----------------------------------------------------------

_D2_WEIGHTS = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFFSETS = np.arange(-2, 3)


def default_steps(ctx: ModeContext, t: float, z: float) -> tuple[float, float]:
    """Finite-difference steps that resolve the local oscillation/decay scale."""
    w_t = math.sqrt((ctx.k_y + ctx.qE * t) ** 2 + ctx.m**2 + ctx.beta)
    w_z = math.sqrt(abs((ctx.k_x + ctx.qB * z) ** 2 - ctx.beta) + ctx.qB)
    return 0.01 / w_t, 0.01 / w_z


def residual_temporal(ctx: ModeContext, t: float, step: float) -> float:
    ts = t + step * _OFFSETS
    phi = phi_mode(ctx, tau(ctx, ts))
    d2 = np.dot(_D2_WEIGHTS, phi) / step**2
    coef = (ctx.k_y + ctx.qE * t) ** 2 + ctx.m**2 + ctx.beta
    res = abs(d2 + coef * phi[2])
    scale = (1.0 + coef) * np.max(np.abs(phi))
    return float(res / scale)


def residual_transverse(ctx: ModeContext, z: float, step: float) -> float:
    zs = z + step * _OFFSETS
    chi = hermite_mode(ctx, xi(ctx, zs))
    d2 = np.dot(_D2_WEIGHTS, chi) / step**2
    coef = (ctx.k_x + ctx.qB * z) ** 2 - ctx.beta
    res = abs(d2 - coef * chi[2])
    scale = (1.0 + abs(coef)) * np.max(np.abs(chi))
    return float(res / scale)


def residual_kg(ctx: ModeContext, t: float, z: float, step_t: float | None = None, step_z: float | None = None) -> float:
    """Largest normalised residual of the two separated equations at (t, z).

    Second derivatives use the five-point fourth-order stencil; each residual
    is divided by (1 + |coefficient|) times the local solution magnitude.
    """
    dt, dz = default_steps(ctx, t, z)
    dt = step_t if step_t is not None else dt
    dz = step_z if step_z is not None else dz
    return max(residual_temporal(ctx, t, dt), residual_transverse(ctx, z, dz))


# --- Hermite orthonormality and completeness ------------------------------------------------


def _legendre_grid(lo: float, hi: float, panels: int, points: int):
    nodes, weights = np.polynomial.legendre.leggauss(points)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    xs = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    ws = (half[:, None] * weights[None, :]).ravel()
    return xs, ws


def hermite_overlaps(n_max: int, half_width: float | None = None) -> np.ndarray:
    """Matrix of <h_n, h_m> for n, m <= n_max by composite Gauss-Legendre on [-L, L]."""
    if half_width is None:
        half_width = math.sqrt(2 * n_max + 1) + 12.0
    xs, ws = _legendre_grid(-half_width, half_width, 64, 32)
    h = hermite_functions(n_max, xs)
    return (h * ws) @ h.T


def hermite_projection(N: int, g, xs, half_width: float | None = None) -> np.ndarray:
    """sum_{n<=N} h_n(x) int h_n(x') g(x') dx', the truncated completeness sum applied to g."""
    if half_width is None:
        half_width = math.sqrt(2 * N + 1) + 12.0
    qx, qw = _legendre_grid(-half_width, half_width, 128, 32)
    coeffs = hermite_functions(N, qx) @ (qw * g(qx))
    return coeffs @ hermite_functions(N, np.asarray(xs, dtype=float))


def hermite_completeness_error(N: int, g, xs) -> float:
    """Sup-norm error of the truncated completeness sum against g on the points xs."""
    xs = np.asarray(xs, dtype=float)
    return float(np.max(np.abs(hermite_projection(N, g, xs) - g(xs))))


def residual_orders(ctx: ModeContext, t: float, z: float, factor: float = 8.0) -> tuple[float, float]:
    """Observed convergence orders log2(r(h) / r(h/2)) of the temporal and transverse residuals.

    h is factor times the default step, large enough that truncation error
    dominates rounding.  Near a node of chi the transverse residual is
    rounding-limited and its order is not meaningful.
    """
    dt, dz = default_steps(ctx, t, z)
    dt, dz = factor * dt, factor * dz
    ot = math.log2(residual_temporal(ctx, t, dt) / residual_temporal(ctx, t, dt / 2))
    oz = math.log2(residual_transverse(ctx, z, dz) / residual_transverse(ctx, z, dz / 2))
    return ot, oz
