"""Exit criteria, each run at its stated tolerance.

One PASS/FAIL line per criterion is printed in the pytest terminal summary.
Run alone with:  pytest tests/test_acceptance.py -v
"""

import math
import time

import mpmath
import numpy as np
import pytest

from vacthrust import fields, modes, propulsion, schwinger, vev
from vacthrust.constants import c, e, m_e
from vacthrust.scenario import random_configurations

pytestmark = pytest.mark.acceptance

TRIPLES = [(1.0, 1.0, 0.0), (1.0, 1.0, 1.0), (0.1, 3.0, 0.5)]
LANDAU = [0, 1, 5, 20]


def test_criterion_1_colinearization(report_criterion):
    configs = random_configurations(1000, seed=20240611, min_cos=0.01)
    t0 = time.perf_counter()
    results = [fields.colinearizing_boost(f) for f in configs]
    elapsed = time.perf_counter() - t0
    defect = max(fields.parallelism_defect(r.boosted) for r in results)
    i1 = max(abs(r.boosted.I1 - f.I1) / f.invariant_scales()[0] for r, f in zip(results, configs))
    i2 = max(abs(r.boosted.I2 - f.I2) / f.invariant_scales()[1] for r, f in zip(results, configs))
    ok = defect < 1e-10 and i1 < 1e-12 and i2 < 1e-12 and elapsed < 1.0
    report_criterion(
        1,
        ok,
        f"max parallel defect {defect:.2e} (<1e-10), invariant errors {i1:.2e}, {i2:.2e} (<1e-12), {elapsed:.3f} s (<1 s)",
    )
    assert ok


def test_criterion_2_drift_equivalence(report_criterion):
    f = fields.FieldConfiguration((1e3, 0, 0), (0, 0, 0.1))
    ref = fields.drift_velocity(f)
    t0 = time.perf_counter()
    drifts = {}
    for name, q in (("electron", -e), ("positron", e)):
        T = fields.gyroperiod(q, m_e, 0.1)
        traj = fields.push_particle(f, q, m_e, (0, 0, 0), (0, 2e5, 0), T / 200, 200 * 41)
        drifts[name] = fields.gyro_averaged_drift(traj, f)
    elapsed = time.perf_counter() - t0
    errs = {k: np.linalg.norm(v - ref) / np.linalg.norm(ref) for k, v in drifts.items()}
    agree = np.linalg.norm(drifts["electron"] - drifts["positron"]) / np.linalg.norm(ref)
    ok = max(errs.values()) < 0.01 and agree < 1e-3 and elapsed < 10
    report_criterion(
        2,
        ok,
        f"drift error e- {errs['electron']:.2e}, e+ {errs['positron']:.2e} (<1e-2); species agree to {agree:.2e} (<1e-3); {elapsed:.2f} s (<10 s)",
    )
    assert ok


def test_criterion_3_schwinger_regime(report_criterion):
    lab = schwinger.pair_production_rate(schwinger.VacuumDecayQuery(1e5))
    Ec = schwinger.critical_field()
    q = schwinger.VacuumDecayQuery(Ec, kmax=10)
    ratio = schwinger.pair_production_rate(q) / schwinger.dominant_term_rate(q)
    mpmath.mp.dps = 40
    oracle = float(mpmath.fsum(mpmath.exp(-(k - 1) * mpmath.pi) / k**2 for k in range(1, 11)))
    ok = lab == 0.0 and abs(ratio - 1.0110) <= 1e-4 and abs(ratio - oracle) <= 1e-12
    report_criterion(
        3,
        ok,
        f"w(1e5 V/m) = {lab!r}; E_c = {Ec:.6e} V/m; ratio {ratio:.10f} vs oracle {oracle:.10f} (1.0110 +- 1e-4)",
    )
    assert ok


def test_criterion_4_thruster_dominance(report_criterion):
    rng = np.random.default_rng(7)
    v = c * rng.uniform(0.0, 1.0, 1_000_000)
    v = v[(v > 0) & (v < c)]
    photon = propulsion.photon_thruster_f_over_p()
    dominated = int(np.count_nonzero(photon > propulsion.pair_thruster_f_over_p(v)))
    ratio = photon / propulsion.pair_thruster_f_over_p(0.01 * c)
    ok = v.size == 1_000_000 and dominated == v.size and abs(ratio - 100) <= 0.01
    report_criterion(4, ok, f"photon F/P larger for {dominated}/{v.size} samples; ratio at 0.01c = {ratio:.6f} (100 +- 0.01)")
    assert ok


def _wronskian_scan():
    taus = np.linspace(-10, 10, 201)
    rows = []
    for triple in TRIPLES:
        for n in LANDAU:
            ctx = modes.ModeContext(*triple, n)
            W = modes.wronskian(ctx, taus)
            rows.append(
                (
                    triple,
                    n,
                    float(np.max(np.abs(W + 2j))),
                    float(np.max(np.abs(W - modes.expected_wronskian(ctx)))),
                    float(np.max(np.abs(modes.wronskian_t(ctx, taus) - 1j))),
                )
            )
    return rows


def test_criterion_5_wronskian(report_criterion):
    t0 = time.perf_counter()
    rows = _wronskian_scan()
    elapsed = time.perf_counter() - t0
    literal = max(r[2] for r in rows)
    closed = max(r[3] for r in rows)
    bracket = max(r[4] for r in rows)
    ok = literal < 1e-8 and elapsed < 30
    report_criterion(
        5,
        ok,
        f"max |W + 2i| = {literal:.4f} (<1e-8) over 12 contexts, {elapsed:.2f} s (<30 s)",
        [
            f"W is constant and equals -i/sqrt(2 qE) to {closed:.1e}; t-bracket phi* dphi/dt - phi dphi*/dt = i to {bracket:.1e}",
            "the -2i target is not met by the stated normalisation (see decisions ledger)",
        ],
    )
    assert ok


def test_criterion_6_hermite(report_criterion):
    x, w = np.polynomial.hermite.hermgauss(40)
    h = modes.hermite_functions(20, x) * np.exp(0.5 * x * x)
    ortho_gh = float(np.max(np.abs((h * w) @ h.T - np.eye(21))))
    ortho_gl = float(np.max(np.abs(modes.hermite_overlaps(20) - np.eye(21))))
    xs = np.linspace(-3, 3, 121)
    comp = modes.hermite_completeness_error(200, lambda s: np.exp(-0.5 * (s - 0.5) ** 2), xs)
    ok = max(ortho_gh, ortho_gl) < 1e-10 and comp < 1e-3
    report_criterion(
        6,
        ok,
        f"orthonormality {max(ortho_gh, ortho_gl):.2e} (<1e-10); completeness sup error at N=200 {comp:.2e} (<1e-3)",
    )
    assert ok


def test_criterion_7_vanishing_vevs(report_criterion):
    t0 = time.perf_counter()
    symbolic = {name: vev.vev(name, vev.ModeFamily(1.0, 1.0), vev.RegularizationWindow(1, 1.0)) for name in ("P^x", "P^y", "J^z")}
    sym_ok = all(r.value == 0.0 and r.mechanism == "operator algebra" for r in symbolic.values())
    details = [f"P^x, P^y, J^z symbolic densities: {'0, 0, 0' if sym_ok else 'nonzero'}"]
    numeric_ok = True
    worst_sym_jx = 0.0
    for triple in TRIPLES:
        fam = vev.ModeFamily(*triple)
        for comp in ("P^z", "J^x", "J^y"):
            rs = [vev.vev(comp, fam, w) for w in vev.geometric_windows(10, 1.0, count=4)]
            rel = [r.relative for r in rs]
            passed = all(r.passed for r in rs)
            numeric_ok &= passed
            if comp == "J^x":
                worst_sym_jx = max(worst_sym_jx, *rel)
            line = f"{comp} (qE,qB,m)={triple}: max |value|/scale {max(rel):.2e} over k_cut 1,2,4,8 -> {'ok' if passed else 'NOT below 1e-8'}"
            if comp == "J^y":
                line += f"; parity diagnostic {max(r.parity_diagnostic for r in rs):.2e}"
            details.append(line)
    asym = vev.vev("J^x", vev.ModeFamily(1.0, 1.0), vev.RegularizationWindow(10, 1.0, k_low=-0.5))
    separation = asym.relative / max(worst_sym_jx, np.finfo(float).eps)
    control_ok = separation >= 1e6
    details.append(f"asymmetric J^x control [-0.5, 1]: |value|/scale {asym.relative:.3e}, {separation:.1e}x the symmetric case (>=1e6)")
    elapsed = time.perf_counter() - t0
    ok = sym_ok and numeric_ok and control_ok and elapsed < 120
    report_criterion(7, ok, f"symbolic {sym_ok}, numeric windows {numeric_ok}, control {control_ok}, {elapsed:.1f} s (<120 s)", details)
    assert ok


def test_criterion_8_residuals(report_criterion):
    worst = 0.0
    orders = []
    for triple in TRIPLES:
        for n in LANDAU:
            ctx = modes.ModeContext(*triple, n, 0.3, -0.2)
            for t, z in [(-3.0, -0.8), (0.0, 0.35), (2.5, 1.1)]:
                worst = max(worst, modes.residual_kg(ctx, t, z))
                orders.extend(modes.residual_orders(ctx, t, z))
    median = float(np.median(orders))
    ok = worst < 1e-6 and abs(median - 4.0) < 0.5
    report_criterion(
        8,
        ok,
        f"max normalised residual {worst:.2e} (<1e-6); median observed order under step halving {median:.3f} (4 +- 0.5)",
        [f"orders range {min(orders):.2f} .. {max(orders):.2f} over {len(orders)} samples"],
    )
    assert ok
