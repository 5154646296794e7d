import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from vacthrust import vev
from vacthrust.errors import QuadratureFailure, UnsupportedArity
from vacthrust.vev import ModeFamily, ModeLabel, RegularizationWindow, a, adag, b, bdag

K = ModeLabel.symbolic()
KP = ModeLabel.symbolic("p")
NEAR_CRITICAL = ModeFamily(1.0, 1.0, 0.0)
SUB_CRITICAL = ModeFamily(0.1, 3.0, 0.5)


# --- operator algebra -----------------------------------------------------------------


def test_annihilate_then_create_contracts():
    v = vev.vacuum_expectation(a(K) * adag(KP))
    assert v.contractions == {(K, KP): 1}
    assert v.constant == 0
    assert vev.vacuum_expectation(b(K) * bdag(KP)).contractions == {(K, KP): 1}


@pytest.mark.parametrize(
    "expr",
    [adag(K) * a(KP), a(K) * a(KP), adag(K) * adag(KP), a(K) * bdag(KP), b(K) * adag(KP), a(K), bdag(K)],
)
def test_vanishing_vacuum_values(expr):
    assert vev.vacuum_expectation(expr).is_zero


def test_commutator_of_ladder_pair():
    v = vev.vacuum_expectation(vev.commutator(a(K), adag(KP)))
    assert v.contractions == {(K, KP): 1}


def test_particle_and_antiparticle_cancel():
    expr = b(K) * bdag(KP) - a(K) * adag(KP)
    assert vev.vacuum_expectation(expr).is_zero


def test_scalar_terms_are_kept():
    v = vev.vacuum_expectation(vev.OperatorExpression.scalar(3) + a(K) * adag(KP) * 2)
    assert v.constant == 3
    assert v.contractions[(K, KP)] == 2


def test_normal_order():
    ordered, c = vev.normal_order(a(K) * adag(KP) + bdag(K) * b(KP))
    assert [tuple(str(o) for o in ops) for _, ops in ordered.terms] == [
        (str(adag(KP).terms[0][1][0]), str(a(K).terms[0][1][0])),
        (str(bdag(K).terms[0][1][0]), str(b(KP).terms[0][1][0])),
    ]
    assert vev.vacuum_expectation(ordered).is_zero
    assert c.contractions == {(K, KP): 1}


def test_arity_guard():
    with pytest.raises(UnsupportedArity):
        vev.vacuum_expectation(a(K) * adag(KP) * a(K))
    with pytest.raises(UnsupportedArity):
        vev.normal_order(a(K) * a(K) * a(K))


def test_density_uses_left_label():
    c = vev.chi_f(KP.n, KP.kx, vev.z_sym)
    v = vev.vacuum_expectation(a(K) * adag(KP) * c)
    assert v.density() == vev.chi_f(K.n, K.kx, vev.z_sym)


@pytest.mark.parametrize("kind, comp", [("momentum", "x"), ("momentum", "y"), ("current", "z")])
def test_algebraic_zeros(kind, comp):
    assert vev.symbolic_density(kind, comp) == 0


def _chi():
    return vev.chi_f(K.n, K.kx, vev.z_sym)


def _phi():
    return vev.phi_f(K.n, K.ky, vev.t_sym), vev.phis_f(K.n, K.ky, vev.t_sym)


def test_current_x_density():
    phi, phis = _phi()
    expected = 2 * vev.q_sym * (K.kx + vev.qB_sym * vev.z_sym) * _chi() ** 2 * phi * phis
    assert sp.simplify(vev.symbolic_density("current", "x") - expected) == 0


def test_current_y_density():
    phi, phis = _phi()
    expected = 2 * vev.q_sym * (K.ky + vev.qE_sym * vev.t_sym) * _chi() ** 2 * phi * phis
    assert sp.simplify(vev.symbolic_density("current", "y") - expected) == 0


def test_momentum_z_density():
    phi, phis = _phi()
    chi = _chi()
    dens = vev.symbolic_density("momentum", "z")
    expected = 2 * chi * sp.diff(chi, vev.z_sym) * phi * sp.diff(phis, vev.t_sym)
    assert sp.simplify(dens - expected) == 0


def test_gauge_potential():
    assert vev.gauge_potential("x") == -vev.qB_sym / vev.q_sym * vev.z_sym
    assert vev.gauge_potential("y") == -vev.qE_sym / vev.q_sym * vev.t_sym
    assert vev.gauge_potential("z") == 0


# --- quadrature -----------------------------------------------------------------------


def test_windowed_integral_known_values():
    I, A = vev.windowed_integral(np.exp, -1.0, 1.0)
    assert I == pytest.approx(2 * math.sinh(1.0), rel=1e-14)
    assert A == pytest.approx(I, rel=1e-14)
    I, A = vev.windowed_integral(lambda s: s**3, -2.0, 2.0)
    assert abs(I) < 1e-15
    assert A == pytest.approx(8.0, rel=1e-12)
    I, _ = vev.windowed_integral(lambda s: np.exp(1j * s), 0.0, math.pi)
    assert I == pytest.approx(2j, abs=1e-14)


def test_windowed_integral_failure():
    with pytest.raises(QuadratureFailure):
        vev.windowed_integral(lambda s: 1.0 / np.sqrt(np.abs(s - 0.3)), 0.0, 1.0, max_panels=16)


def test_window_validation():
    with pytest.raises(ValueError):
        RegularizationWindow(-1, 1.0)
    with pytest.raises(ValueError):
        RegularizationWindow(2, 0.0)
    with pytest.raises(ValueError):
        RegularizationWindow(2, 1.0, k_low=2.0)
    w = RegularizationWindow(3, 2.0)
    assert w.symmetric and w.lower == -2.0
    assert not RegularizationWindow(3, 2.0, k_low=-1.0).symmetric


def test_geometric_windows():
    ws = vev.geometric_windows(5, 1.0, count=4)
    assert [w.k_cut for w in ws] == [1.0, 2.0, 4.0, 8.0]


# --- numerical VEVs --------------------------------------------------------------------


@pytest.mark.parametrize("component", ["P^x", "P^y", "J^z"])
def test_symbolic_components_report_exact_zero(component):
    r = vev.vev(component, NEAR_CRITICAL, RegularizationWindow(4, 2.0))
    assert r.value == 0.0 and r.mechanism == "operator algebra" and r.passed


@pytest.mark.parametrize("component", ["P^z", "J^x"])
@pytest.mark.parametrize("k_cut", [1.0, 3.0])
def test_symmetric_window_cancels(component, k_cut):
    r = vev.vev(component, NEAR_CRITICAL, RegularizationWindow(4, k_cut))
    assert r.scale > 0
    assert abs(r.value) <= 1e-8 * r.scale
    assert r.passed


def test_asymmetric_window_does_not_cancel():
    r = vev.vev("J^x", NEAR_CRITICAL, RegularizationWindow(4, 1.0, k_low=-0.5))
    assert r.relative > 0.1
    assert not r.passed


def test_jy_subcritical_cancels():
    r = vev.vev("J^y", SUB_CRITICAL, RegularizationWindow(4, 4.0))
    assert r.passed
    assert r.parity_diagnostic < 1e-10


def test_jy_near_critical_reports_asymmetry():
    # |phi|^2 is not even in tau when pair creation is not exponentially suppressed
    r = vev.vev("J^y", NEAR_CRITICAL, RegularizationWindow(4, 4.0))
    assert r.parity_diagnostic > 0.1
    assert r.relative > 1e-4


def test_results_are_deterministic():
    w = RegularizationWindow(3, 2.0)
    r1 = vev.vev("J^y", NEAR_CRITICAL, w)
    r2 = vev.vev("J^y", NEAR_CRITICAL, w)
    assert r1.as_dict() == r2.as_dict()


def test_report_keys():
    d = vev.vev("J^y", SUB_CRITICAL, RegularizationWindow(2, 1.0)).as_dict()
    assert {"component", "window", "value", "scale", "tolerance", "pass", "parity_diagnostic"} <= set(d)


@pytest.mark.parametrize("name", ["Q^x", "P^w", "J^q"])
def test_unknown_components(name):
    with pytest.raises(ValueError):
        vev.vev(name, NEAR_CRITICAL, RegularizationWindow(1, 1.0))


def test_name_aliases():
    w = RegularizationWindow(1, 1.0)
    assert vev.vev("pz", NEAR_CRITICAL, w).component == "P^z"
    assert vev.vev("Jx", NEAR_CRITICAL, w).component == "J^x"


@settings(max_examples=8, deadline=None)
@given(st.floats(0.3, 5.0), st.integers(0, 3))
def test_jx_cancels_for_any_symmetric_cutoff(k_cut, n_max):
    r = vev.current_vev("x", NEAR_CRITICAL, RegularizationWindow(n_max, k_cut))
    assert abs(r.value) <= 1e-8 * r.scale


def test_commutator_pieces():
    checks = vev.commutator_checks(NEAR_CRITICAL)
    assert checks["time_bracket_error"] < 1e-10
    assert checks["hermite_completeness_error"] < 1e-3
    assert checks["fourier_delta_error"] < 1e-3
