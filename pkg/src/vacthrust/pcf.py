"""Parabolic cylinder functions D_nu(z) for complex order and argument.

D_nu solves Weber's equation w'' = (z^2/4 - nu - 1/2) w.  Three evaluation
routes are used:

* Kummer series (the confluent hypergeometric decomposition) for
  |z| <= SERIES_RADIUS;
* analytic continuation along straight rays by local Taylor expansion of the
  ODE, seeded at the origin with the closed-form D_nu(0) and D_nu'(0);
* the large-|z| asymptotic expansion, used as a seed for inward
  continuation where D_nu is recessive and as an independent cross-check.

All routes return values as mantissa times exp(log_scale) so that orders
with large imaginary part (|D_nu(0)| ~ exp(pi |Im nu| / 4)) stay finite.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from .errors import LossOfPrecision, OutOfDomain

SERIES_RADIUS = 2.0
MAX_RADIUS = 50.0
MAX_IMAG_ORDER = 1.0e4
ASYMPTOTIC_RADIUS = 20.0
PRECISION_FLAG = 1e-7

_EPS = 2.220446049250313e-16
_LN2 = math.log(2.0)
_LNPI = math.log(math.pi)
_RENORM_HI = 1e64
_RENORM_LO = 1e-64


@dataclass(frozen=True)
class PCFValue:
    """D_nu(z) = value * exp(log_scale); deriv is dD/dz on the same scale."""

    value: complex
    deriv: complex
    log_scale: float
    rel_error: float
    method: str

    def unscaled(self) -> tuple[complex, complex]:
        mag = max(abs(self.value), abs(self.deriv))
        if mag == 0:
            return 0j, 0j
        log_total = self.log_scale + math.log(mag)
        if log_total > 709.0:
            raise OutOfDomain(f"|D| ~ exp({log_total:.1f}) overflows double precision; use pcf_d_scaled")
        s = math.exp(log_total)
        return s * (self.value / mag), s * (self.deriv / mag)


def _check_domain(nu: complex, z: complex):
    if abs(z) > MAX_RADIUS:
        raise OutOfDomain(f"|z| = {abs(z):.6g} exceeds the supported radius {MAX_RADIUS}")
    if abs(nu.imag) > MAX_IMAG_ORDER:
        raise OutOfDomain(f"|Im nu| = {abs(nu.imag):.6g} exceeds {MAX_IMAG_ORDER}")
    if not (cmath.isfinite(nu) and cmath.isfinite(z)):
        raise OutOfDomain("nu and z must be finite")


def _is_gamma_pole(x: complex) -> bool:
    return x.imag == 0.0 and x.real <= 0.0 and x.real == math.floor(x.real)


def _log_over_gamma(log_num: complex, arg: complex) -> complex | None:
    """log(exp(log_num) / Gamma(arg)); None when 1/Gamma(arg) vanishes."""
    if _is_gamma_pole(arg):
        return None
    return log_num - complex(loggamma(arg))


def origin_logs(nu: complex) -> tuple[complex | None, complex | None]:
    """Logs of D_nu(0) and -D_nu'(0) (None for an exact zero)."""
    l0 = _log_over_gamma(0.5 * nu * _LN2 + 0.5 * _LNPI, 0.5 * (1.0 - nu))
    l1 = _log_over_gamma(0.5 * (nu + 1.0) * _LN2 + 0.5 * _LNPI, -0.5 * nu)
    return l0, l1


def _origin_state(nu: complex) -> tuple[complex, complex, float]:
    l0, l1 = origin_logs(nu)
    L = max(x.real for x in (l0, l1) if x is not None)
    w0 = 0j if l0 is None else cmath.exp(l0 - L)
    dw0 = 0j if l1 is None else -cmath.exp(l1 - L)
    return w0, dw0, L


# --- Kummer series -------------------------------------------------------------


def _kummer(alpha: complex, beta: float, x: complex, max_terms: int = 5000):
    """Sum of M(alpha, beta, x) and the sum of |terms| (for conditioning)."""
    t = 1.0 + 0j
    s = t
    abs_sum = 1.0
    quiet = 0
    for k in range(max_terms):
        t *= (alpha + k) / ((beta + k) * (k + 1)) * x
        s += t
        at = abs(t)
        abs_sum += at
        if at <= 1e-17 * abs(s) and abs(alpha + k) * abs(x) < 0.5 * (beta + k) * (k + 1):
            quiet += 1
            if quiet >= 2:
                return s, abs_sum
        else:
            quiet = 0
        if t == 0:
            return s, abs_sum
    raise ArithmeticError("Kummer series did not converge")


def pcf_d_series(nu: complex, z: complex) -> PCFValue:
    """D_nu(z) from D_nu(0) u1(z) + D_nu'(0) u2(z) with u1, u2 in Kummer form."""
    nu, z = complex(nu), complex(z)
    w0, dw0, L = _origin_state(nu)
    x = 0.5 * z * z
    a1 = -0.5 * nu
    a2 = 0.5 * (1.0 - nu)
    M1, s1 = _kummer(a1, 0.5, x)
    M2, s2 = _kummer(a2, 1.5, x)
    M1p, s1p = _kummer(a1 + 1.0, 1.5, x)
    M2p, s2p = _kummer(a2 + 1.0, 2.5, x)
    # u1 = e^{-z^2/4} M1,  u2 = z e^{-z^2/4} M2  (the exponential goes to the scale)
    u1 = M1
    u2 = z * M2
    du1 = -0.5 * z * M1 + z * (a1 / 0.5) * M1p
    du2 = M2 - 0.5 * z * z * M2 + z * z * (a2 / 1.5) * M2p
    val = w0 * u1 + dw0 * u2
    der = w0 * du1 + dw0 * du2
    expo = -0.25 * z * z
    phase = cmath.exp(1j * expo.imag)
    val *= phase
    der *= phase
    cond = (abs(w0) * s1 + abs(dw0) * abs(z) * s2) / max(abs(val), 1e-300)
    cond_d = (abs(w0) * abs(z) * (s1 + 2 * abs(a1) * s1p) + abs(dw0) * (s2 + abs(z) ** 2 * (s2 + abs(a2) * s2p))) / max(
        abs(der), 1e-300
    )
    rel = 4 * _EPS * (max(cond, cond_d) + 1.0 + abs(L) + abs(expo))
    return PCFValue(val, der, L + expo.real, rel, "series")


# --- Taylor continuation -----------------------------------------------------------


def _taylor_step(qz: complex, hz: complex, h: complex, state, tol: float, kmax: int):
    """Advance both fundamental columns by h; None if the series needs > kmax terms."""
    w1, d1, w2, d2 = state
    # coefficient recurrences: (k)(k-1) c_k = qz c_{k-2} + hz c_{k-3} + c_{k-4}/4
    a = [w1, d1]
    b = [w2, d2]
    hp = h
    v1 = w1 + d1 * h
    v2 = w2 + d2 * h
    g1 = d1
    g2 = d2
    quiet = 0
    for k in range(2, kmax + 1):
        ak = qz * a[k - 2]
        bk = qz * b[k - 2]
        if k >= 3:
            ak += hz * a[k - 3]
            bk += hz * b[k - 3]
        if k >= 4:
            ak += 0.25 * a[k - 4]
            bk += 0.25 * b[k - 4]
        den = k * (k - 1)
        ak /= den
        bk /= den
        a.append(ak)
        b.append(bk)
        g1 += k * ak * hp
        g2 += k * bk * hp
        hp *= h
        ta = ak * hp
        tb = bk * hp
        v1 += ta
        v2 += tb
        norm = max(abs(v1), abs(v2), abs(h) * abs(g1), abs(h) * abs(g2))
        if k * max(abs(ta), abs(tb)) <= tol * norm:
            quiet += 1
            if quiet >= 3:
                return v1, g1, v2, g2
        else:
            quiet = 0
    return None


def _continue(A: complex, z_start: complex, direction: complex, s_targets, tol: float = 1e-17, kmax: int = 80):
    """Transfer matrix of w'' = (z^2/4 + A) w from z_start to z_start + s*direction.

    Yields (w1, dw1, w2, dw2, log_scale, steps) at each s in s_targets
    (ascending, >= 0); columns start from the identity at z_start.
    """
    w1, d1, w2, d2 = 1 + 0j, 0j, 0j, 1 + 0j
    logY = 0.0
    s = 0.0
    steps = 0
    for st in s_targets:
        while s < st:
            z0 = z_start + s * direction
            qz = 0.25 * z0 * z0 + A
            hmag = min(st - s, 1.5 / (1.0 + math.sqrt(abs(qz)) + 0.25 * abs(z0)))
            while True:
                res = _taylor_step(qz, 0.5 * z0, hmag * direction, (w1, d1, w2, d2), tol, kmax)
                if res is not None:
                    break
                hmag *= 0.5
            w1, d1, w2, d2 = res
            s = st if st - s <= hmag else s + hmag
            steps += 1
            mag = max(abs(w1), abs(d1), abs(w2), abs(d2))
            if mag > _RENORM_HI or mag < _RENORM_LO:
                w1, d1, w2, d2 = w1 / mag, d1 / mag, w2 / mag, d2 / mag
                logY += math.log(mag)
        yield w1, d1, w2, d2, logY, steps


def _apply(Y, y0, L0: float, base_err: float, method: str) -> PCFValue:
    w1, d1, w2, d2, logY, steps = Y
    v = w1 * y0[0] + w2 * y0[1]
    d = d1 * y0[0] + d2 * y0[1]
    ny = max(abs(v), abs(d))
    nY = max(abs(w1) + abs(w2), abs(d1) + abs(d2))
    n0 = max(abs(y0[0]), abs(y0[1]))
    if ny == 0:
        amp = math.inf
    else:
        amp = nY * n0 / ny
    rel = (base_err + 4 * _EPS * (steps + 4)) * amp
    return PCFValue(v, d, L0 + logY, rel, method)


def pcf_d_continued(nu: complex, z: complex) -> PCFValue:
    """D_nu(z) by Taylor continuation along the straight ray from 0 to z."""
    nu, z = complex(nu), complex(z)
    w0, dw0, L = _origin_state(nu)
    seed_err = 4 * _EPS * (1.0 + abs(L))
    if z == 0:
        return PCFValue(w0, dw0, L, seed_err, "origin")
    r = abs(z)
    (Y,) = _continue(-nu - 0.5, 0j, z / r, [r])
    return _apply(Y, (w0, dw0), L, seed_err, "continuation")


def pcf_d_ray(nu: complex, s_values, direction: complex) -> list[PCFValue]:
    """D_nu at z = s * direction for ascending s >= 0, sharing one continuation pass."""
    nu = complex(nu)
    s_values = [float(s) for s in s_values]
    if any(s < 0 for s in s_values) or any(b < a for a, b in zip(s_values, s_values[1:])):
        raise ValueError("s_values must be ascending and non-negative")
    if s_values and s_values[-1] > MAX_RADIUS:
        raise OutOfDomain(f"|z| = {s_values[-1]:.6g} exceeds the supported radius {MAX_RADIUS}")
    if abs(nu.imag) > MAX_IMAG_ORDER:
        raise OutOfDomain(f"|Im nu| = {abs(nu.imag):.6g} exceeds {MAX_IMAG_ORDER}")
    w0, dw0, L = _origin_state(nu)
    seed_err = 4 * _EPS * (1.0 + abs(L))
    direction = complex(direction) / abs(direction)
    out = []
    for Y in _continue(-nu - 0.5, 0j, direction, s_values):
        out.append(_apply(Y, (w0, dw0), L, seed_err, "continuation"))
    return out


# --- asymptotic expansion ----------------------------------------------------------


def pcf_d_asymptotic(nu: complex, z: complex, max_terms: int = 200) -> PCFValue:
    """Large-|z| expansion z^nu e^{-z^2/4} sum_s (-1)^s (-nu)_{2s} / (s! (2 z^2)^s).

    Valid for |arg z| < 3 pi / 4; truncated at the smallest term, whose size
    sets the reported error.
    """
    return _asymptotic(complex(nu), complex(z), max_terms)[0]


def _asymptotic(nu: complex, z: complex, max_terms: int = 200) -> tuple[PCFValue, float]:
    if z == 0:
        raise OutOfDomain("asymptotic expansion needs z != 0")
    inv = 1.0 / (2.0 * z * z)
    t = 1.0 + 0j
    S = t
    dS = 0j  # derivative of S with respect to z
    last = math.inf
    err = math.inf
    for s in range(max_terms):
        t_next = -t * (-nu + 2 * s) * (-nu + 2 * s + 1) / (s + 1) * inv
        at = abs(t_next)
        if at >= last and s > 0:
            err = last / abs(S)
            break
        if t_next == 0:
            err = 0.0
            break
        S += t_next
        dS += t_next * (-2.0 * (s + 1)) / z
        last = at
        t = t_next
        if at <= 0.25 * _EPS * abs(S):
            err = at / abs(S)
            break
    logf = nu * cmath.log(z) - 0.25 * z * z
    phase = cmath.exp(1j * logf.imag)
    val = phase * S
    der = phase * (S * (nu / z - 0.5 * z) + dS)
    rel = err + 4 * _EPS * (1.0 + abs(logf))
    return PCFValue(val, der, logf.real, rel, "asymptotic"), err


def _inward(nu: complex, z: complex) -> PCFValue | None:
    """Seed the asymptotic form far out on the ray through z and integrate back to z."""
    r = abs(z)
    u = z / r
    R = max(r, ASYMPTOTIC_RADIUS)
    while R <= 8 * MAX_RADIUS:
        far, trunc = _asymptotic(nu, R * u)
        if trunc < 1e-15:
            break
        R *= 1.5
    else:
        return None
    if R == r:
        return far
    (Y,) = _continue(-nu - 0.5, R * u, -u, [R - r])
    res = _apply(Y, (far.value, far.deriv), far.log_scale, far.rel_error, "asymptotic+continuation")
    return res


# --- public entry points ---------------------------------------------------------------


def pcf_d_scaled(nu, z) -> PCFValue:
    """Best available evaluation of D_nu(z), as a scaled PCFValue.

    Warns with LossOfPrecision when the estimated relative error exceeds 1e-7.
    """
    nu, z = complex(nu), complex(z)
    _check_domain(nu, z)
    best = None
    if abs(z) <= SERIES_RADIUS:
        best = pcf_d_series(nu, z)
        if best.rel_error > 1e-12:
            alt = pcf_d_continued(nu, z)
            if alt.rel_error < best.rel_error:
                best = alt
    else:
        best = pcf_d_continued(nu, z)
        if best.rel_error > 1e-12 and abs(cmath.phase(z)) < 0.5 * math.pi:
            alt = _inward(nu, z)
            if alt is not None and alt.rel_error < best.rel_error:
                best = alt
    if best.rel_error > PRECISION_FLAG:
        warnings.warn(
            f"D_nu(z) at nu={nu}, z={z}: estimated relative error {best.rel_error:.2g}",
            LossOfPrecision,
            stacklevel=2,
        )
    return best


def pcf_d(nu, z) -> complex:
    """D_nu(z) as a plain complex number.

    Raises OutOfDomain if |z| > MAX_RADIUS, |Im nu| > MAX_IMAG_ORDER, or the
    value is too large for a double (use pcf_d_scaled then).
    """
    return pcf_d_scaled(nu, z).unscaled()[0]


def pcf_d_vec(nu, z) -> np.ndarray:
    """Elementwise pcf_d over an array of arguments."""
    z = np.asarray(z, dtype=complex)
    return np.vectorize(lambda zz: pcf_d(nu, zz), otypes=[complex])(z)
