import cmath
import math
import warnings

import mpmath
import numpy as np
import pytest

from vacthrust import pcf
from vacthrust.errors import LossOfPrecision, OutOfDomain

mpmath.mp.dps = 30

RAY = cmath.exp(-0.25j * math.pi)


def oracle(nu, z):
    return complex(mpmath.pcfd(mpmath.mpc(nu), mpmath.mpc(z)))


def oracle_deriv(nu, z):
    return complex(mpmath.diff(lambda w: mpmath.pcfd(mpmath.mpc(nu), w), mpmath.mpc(z)))


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize(
    "nu, z",
    [
        (0, 1.0),  # D_0 = exp(-z^2/4)
        (1, 1.5),
        (2.5, -0.7),
        (-0.5 - 1j, 2 + 1j),
        (-0.5 + 3.25j, 1.2 * RAY),
        (0.3 - 0.8j, 4 - 2j),
        (-0.5 + 1j, 8.0),
        (-0.5 + 1j, 25.0),
        (-0.5 + 16.25j, 6 * RAY),
        (-0.5 + 16.25j, -9 * RAY),
        (-2.5 + 0.5j, 12 * cmath.exp(0.3j)),
    ],
)
def test_against_mpmath(nu, z):
    assert rel(pcf.pcf_d(nu, z), oracle(nu, z)) < 1e-11


@pytest.mark.parametrize("nu, z", [(0.7 - 0.2j, 1.1 + 0.4j), (-0.5 + 2j, 3 * RAY), (-0.5 + 2j, 0.0)])
def test_derivative_against_mpmath(nu, z):
    v = pcf.pcf_d_scaled(nu, z)
    _, d = v.unscaled()
    assert rel(d, oracle_deriv(nu, z)) < 1e-10


def test_elementary_closed_forms():
    for z in (-3.0, 0.0, 0.5, 2.0, 3.7):
        assert pcf.pcf_d(0, z) == pytest.approx(math.exp(-z * z / 4), rel=1e-13, abs=1e-300)
        assert pcf.pcf_d(1, z) == pytest.approx(z * math.exp(-z * z / 4), rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("nu", [0.4 - 0.3j, -0.5 + 5j, -0.5 - 12j, 3.0])
@pytest.mark.parametrize("theta", [0.0, -0.25 * math.pi, 0.75 * math.pi, 0.4])
def test_seam_continuity(nu, theta):
    # series and continuation must agree where the dispatch switches
    z = pcf.SERIES_RADIUS * cmath.exp(1j * theta)
    s = pcf.pcf_d_series(nu, z)
    t = pcf.pcf_d_continued(nu, z)
    a = s.value * math.exp(s.log_scale)
    b = t.value * math.exp(t.log_scale)
    assert abs(a - b) / abs(b) < 1e-9


@pytest.mark.parametrize("nu, z", [(-0.5 + 1j, 22.0), (0.25, 30.0 * cmath.exp(0.2j)), (-0.5 + 0.2j, 21 * cmath.exp(-0.5j))])
def test_asymptotic_cross_check(nu, z):
    a = pcf.pcf_d_asymptotic(nu, z)
    va = a.value * cmath.exp(a.log_scale)
    assert rel(va, oracle(nu, z)) < 1e-11
    assert rel(pcf.pcf_d(nu, z), va) < 1e-9


def test_outward_continuation_flags_recessive_loss():
    # continuing outward along the positive real axis cannot follow the decaying
    # solution; the error estimate has to say so, and the dispatcher must not use it
    nu, z = -0.5 + 1j, 22.0
    t = pcf.pcf_d_continued(nu, z)
    assert t.rel_error > 1e-6
    assert pcf.pcf_d_scaled(nu, z).rel_error < 1e-12


def test_large_imaginary_order_on_ray():
    nu = -0.5 + 1e4j
    z = 3 * RAY
    v = pcf.pcf_d_scaled(nu, z)
    ref = mpmath.pcfd(mpmath.mpc(nu), mpmath.mpc(z))
    log_ref = complex(mpmath.log(ref))
    got_log = cmath.log(v.value) + v.log_scale
    assert abs(got_log.real - log_ref.real) < 1e-9
    assert abs(cmath.exp(1j * (got_log.imag - log_ref.imag)) - 1) < 1e-9


def test_satisfies_weber_equation():
    # D'' = (z^2/4 - nu - 1/2) D, checked with a centred difference of D'
    nu, z, h = 0.2 - 1.3j, 1.7 + 0.9j, 1e-5
    d2 = (pcf.pcf_d_scaled(nu, z + h).unscaled()[1] - pcf.pcf_d_scaled(nu, z - h).unscaled()[1]) / (2 * h)
    D = pcf.pcf_d(nu, z)
    assert abs(d2 - (z * z / 4 - nu - 0.5) * D) < 1e-8 * abs(D)


def test_domain_errors():
    with pytest.raises(OutOfDomain):
        pcf.pcf_d(0.5, 51.0)
    with pytest.raises(OutOfDomain):
        pcf.pcf_d(-0.5 + 2e4j, 1.0)
    with pytest.raises(OutOfDomain):
        pcf.pcf_d(complex(math.nan, 0), 1.0)


def test_overflow_needs_scaled_api():
    # the Gamma-function factors of a large imaginary order exceed double range
    v = pcf.pcf_d_scaled(-0.5 + 1e4j, 3 * RAY)
    assert v.log_scale > 709
    assert math.isfinite(abs(v.value))
    with pytest.raises(OutOfDomain):
        pcf.pcf_d(-0.5 + 1e4j, 3 * RAY)


def test_cancellation_warns():
    with pytest.warns(LossOfPrecision):
        pcf.pcf_d_scaled(-0.5 - 1e4j, 3 * RAY)


def test_no_precision_warning_in_normal_use():
    with warnings.catch_warnings():
        warnings.simplefilter("error", LossOfPrecision)
        pcf.pcf_d_vec(-0.5 + 3j, np.linspace(-10, 10, 21) * RAY)


def test_ray_matches_pointwise():
    nu = -0.5 + 2.5j
    s = np.array([0.0, 0.5, 3.0, 7.5, 12.0])
    vals = pcf.pcf_d_ray(nu, s, RAY)
    for si, v in zip(s, vals):
        got = v.value * cmath.exp(v.log_scale)
        assert rel(got, oracle(nu, si * RAY)) < 1e-11
