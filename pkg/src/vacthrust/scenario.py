"""Scenario files: parsing, schema validation and dispatch to the physics modules.

A scenario is an INI-style file with a [scenario] header section and one
section named after the subcommand:

    [scenario]
    name = unit-crossed-fields
    subcommand = drift
    format = json

    [drift]
    E = 0, 1, 0
    B = 0, 0, 1

SI <-> natural unit conversion for the modes and vev subcommands happens here
and nowhere else; the factors used are written into the report.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import constants, fields, modes, propulsion, schwinger, vev
from .constants import c


class ConfigParseError(Exception):
    pass


class SchemaError(Exception):
    pass


SUBCOMMANDS = ("drift", "boost", "colinear", "push", "schwinger", "thruster", "modes", "vev")
FORMATS = ("json", "csv")
_REQUIRED = object()


@dataclass
class Scenario:
    name: str
    subcommand: str
    parameters: dict
    output: Path | None = None
    format: str = "json"
    source: Path | None = None


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tolerance": self.tolerance, "pass": bool(self.passed)}


def check_below(name: str, value: float, tolerance: float) -> Check:
    return Check(name, float(value), float(tolerance), bool(value < tolerance))


def check_at_least(name: str, value: float, threshold: float) -> Check:
    return Check(name, float(value), float(threshold), bool(value >= threshold))


@dataclass
class RunOutput:
    results: dict
    checks: list[Check]
    table: dict[str, np.ndarray] | None = None
    conversions: dict = field(default_factory=dict)
    figure: dict | None = None  # data for plotting.render

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)


# --- value parsers -----------------------------------------------------------------


def _float(s: str) -> float:
    return float(s)


def _floats(s: str) -> list[float]:
    return [float(p) for p in s.replace(";", ",").split(",") if p.strip()]


def _vec3(s: str) -> np.ndarray:
    v = _floats(s)
    if len(v) != 3:
        raise ValueError(f"expected 3 components, got {len(v)}")
    return np.array(v)


def _int(s: str) -> int:
    v = float(s)
    if v != int(v):
        raise ValueError(f"{s!r} is not an integer")
    return int(v)


def _ints(s: str) -> list[int]:
    return [_int(p) for p in s.split(",") if p.strip()]


def _bool(s: str) -> bool:
    t = s.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"{s!r} is not a boolean")


def _choice(*options):
    def parse(s: str) -> str:
        t = s.strip()
        if t not in options:
            raise ValueError(f"{t!r} not in {options}")
        return t

    return parse


def _strings(s: str) -> list[str]:
    return [p.strip() for p in s.split(",") if p.strip()]


SCHEMAS: dict[str, dict[str, tuple]] = {
    "drift": {
        "E": (_vec3, _REQUIRED),
        "B": (_vec3, _REQUIRED),
        "expect": (_vec3, None),
        "tolerance": (_float, 1e-12),
    },
    "boost": {
        "E": (_vec3, _REQUIRED),
        "B": (_vec3, _REQUIRED),
        "u": (_float, _REQUIRED),
        "axis": (_vec3, np.array([1.0, 0.0, 0.0])),
        "tolerance": (_float, 1e-12),
    },
    "colinear": {
        "E": (_vec3, None),
        "B": (_vec3, None),
        "random": (_int, 0),
        "seed": (_int, 0),
        "min_cos": (_float, 0.01),
        "parallel_tolerance": (_float, 1e-10),
        "invariant_tolerance": (_float, 1e-12),
    },
    "push": {
        "E": (_vec3, _REQUIRED),
        "B": (_vec3, _REQUIRED),
        "species": (_strings, ["electron", "positron"]),
        "v0": (_vec3, np.zeros(3)),
        "steps_per_period": (_int, 200),
        "periods": (_int, 40),
        "drift_tolerance": (_float, 0.01),
        "species_tolerance": (_float, 0.001),
        "energy_tolerance": (_float, 1e-6),
    },
    "schwinger": {
        "E": (_floats, _REQUIRED),
        "mass": (_float, constants.m_e),
        "charge": (_float, constants.e),
        "kmax": (_int, schwinger.DEFAULT_KMAX),
        "expect_vacuum_persists": (_bool, None),
        "critical_ratio_reference": (_float, None),
        "critical_ratio_tolerance": (_float, 1e-4),
    },
    "thruster": {
        "mdot": (_float, 1e-9),
        "v_min_fraction": (_float, 1e-6),
        "v_max_fraction": (_float, 0.999),
        "points": (_int, 61),
        "samples": (_int, 0),
        "seed": (_int, 0),
        "ratio_speed_fraction": (_float, 0.01),
        "ratio_reference": (_float, None),
        "ratio_tolerance": (_float, 0.01),
    },
    "modes": {
        "action": (_choice("evaluate", "residual", "wronskian-scan", "hermite"), _REQUIRED),
        "qE": (_float, None),
        "qB": (_float, None),
        "m": (_float, 0.0),
        "E_si": (_float, None),
        "B_si": (_float, None),
        "mass_kg": (_float, constants.m_e),
        "charge_c": (_float, constants.e),
        "n": (_ints, [0]),
        "k_x": (_float, 0.0),
        "k_y": (_float, 0.0),
        "tau_min": (_float, -10.0),
        "tau_max": (_float, 10.0),
        "points": (_int, 201),
        "t": (_floats, [0.0]),
        "z": (_floats, [0.0]),
        "convergence_step_factor": (_float, 8.0),
        "order_tolerance": (_float, 0.5),
        "expected": (_choice("closed-form", "-2i"), "closed-form"),
        "tolerance": (_float, 1e-8),
        "n_max": (_int, 20),
        "completeness_n": (_int, 200),
        "completeness_tolerance": (_float, 1e-3),
    },
    "vev": {
        "component": (_strings, _REQUIRED),
        "qE": (_float, None),
        "qB": (_float, None),
        "m": (_float, 0.0),
        "q": (_float, 1.0),
        "E_si": (_float, None),
        "B_si": (_float, None),
        "mass_kg": (_float, constants.m_e),
        "charge_c": (_float, constants.e),
        "n_max": (_int, 10),
        "k_cut": (_floats, [20.0]),
        "k_low": (_float, None),
        "quadrature_points": (_int, 32),
        "tolerance": (_float, vev.DEFAULT_TOLERANCE),
        "expect": (_choice("zero", "nonzero"), "zero"),
        "nonzero_threshold": (_float, 1e-3),
    },
}


def parse_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    parser.optionxform = str  # keys are case-sensitive (E vs e)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    return scenario_from_parser(parser, source=path)


def parse_scenario_text(text: str, source: Path | None = None) -> Scenario:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigParseError(str(exc)) from exc
    return scenario_from_parser(parser, source=source)


def scenario_from_parser(parser: configparser.ConfigParser, source: Path | None = None) -> Scenario:
    if "scenario" not in parser:
        raise SchemaError("missing [scenario] section")
    head = dict(parser["scenario"])
    unknown = set(head) - {"name", "subcommand", "format", "output"}
    if unknown:
        raise SchemaError(f"unknown keys in [scenario]: {sorted(unknown)}")
    sub = head.get("subcommand", "").strip()
    if sub not in SUBCOMMANDS:
        raise SchemaError(f"subcommand must be one of {SUBCOMMANDS}, got {sub!r}")
    fmt = head.get("format", "json").strip()
    if fmt not in FORMATS:
        raise SchemaError(f"format must be one of {FORMATS}")
    extra = set(parser.sections()) - {"scenario", sub}
    if extra:
        raise SchemaError(f"unexpected sections {sorted(extra)} for subcommand {sub!r}")
    raw = dict(parser[sub]) if sub in parser else {}
    params = validate_parameters(sub, raw)
    output = head.get("output")
    out_path = None
    if output:
        out_path = Path(output)
        if source is not None and not out_path.is_absolute():
            out_path = source.parent / out_path
    name = head.get("name") or (source.stem if source else sub)
    return Scenario(name, sub, params, out_path, fmt, source)


def validate_parameters(subcommand: str, raw: dict[str, str]) -> dict:
    schema = SCHEMAS[subcommand]
    unknown = set(raw) - set(schema)
    if unknown:
        raise SchemaError(f"unknown keys for {subcommand}: {sorted(unknown)}")
    out = {}
    for key, (parse, default) in schema.items():
        if key in raw:
            try:
                out[key] = parse(raw[key])
            except ValueError as exc:
                raise SchemaError(f"{subcommand}.{key}: {exc}") from exc
        elif default is _REQUIRED:
            raise SchemaError(f"{subcommand}.{key} is required")
        else:
            out[key] = default
    return out


# --- unit conversion ---------------------------------------------------------------


def natural_units(p: dict) -> tuple[float, float, float, dict]:
    """(qE, qB, m) in natural units plus the conversion record.

    Either qE/qB (and m) are given directly, or E_si/B_si are converted using
    the particle mass as the unit: qE -> E / E_c, qB -> c B / E_c, m -> 1,
    with E_c = m^2 c^3 / (hbar q).
    """
    direct = p["qE"] is not None or p["qB"] is not None
    si = p["E_si"] is not None or p["B_si"] is not None
    if direct and si:
        raise SchemaError("give either qE/qB or E_si/B_si, not both")
    if direct:
        if p["qE"] is None or p["qB"] is None:
            raise SchemaError("both qE and qB are required")
        return p["qE"], p["qB"], p["m"], {"system": "natural (hbar = c = 1), parameters given directly"}
    if not si or p["E_si"] is None or p["B_si"] is None:
        raise SchemaError("both E_si and B_si are required")
    Ec = schwinger.critical_field(p["mass_kg"], p["charge_c"])
    conv = {
        "system": "natural (hbar = c = 1), mass unit = particle mass",
        "mass_unit_kg": p["mass_kg"],
        "charge_C": p["charge_c"],
        "E_field_unit_V_per_m": Ec,
        "B_field_unit_T": Ec / c,
        "length_unit_m": constants.hbar / (p["mass_kg"] * c),
        "time_unit_s": constants.hbar / (p["mass_kg"] * c**2),
    }
    return p["E_si"] / Ec, p["B_si"] * c / Ec, 1.0, conv


# --- runners --------------------------------------------------------------------


def run_drift(p: dict) -> RunOutput:
    f = fields.FieldConfiguration(p["E"], p["B"])
    v = fields.drift_velocity(f)
    nv = np.linalg.norm(v)
    nE, nB = np.linalg.norm(f.E), np.linalg.norm(f.B)
    checks = [
        check_below("perpendicular_to_E", abs(np.dot(v, f.E)) / max(nv * nE, 1e-300), p["tolerance"]),
        check_below("perpendicular_to_B", abs(np.dot(v, f.B)) / max(nv * nB, 1e-300), p["tolerance"]),
        check_below("speed_over_c", nv / c, 1.0),
    ]
    if p["expect"] is not None:
        ref = p["expect"]
        err = np.linalg.norm(v - ref) / max(np.linalg.norm(ref), 1.0)
        checks.append(check_below("matches_expected", err, p["tolerance"]))
    return RunOutput({"v": v.tolist(), "speed": float(nv)}, checks)


def run_boost(p: dict) -> RunOutput:
    f = fields.FieldConfiguration(p["E"], p["B"])
    g = fields.boost_fields(f, p["u"], p["axis"])
    back = fields.boost_fields(g, -p["u"], p["axis"])
    s1, s2 = f.invariant_scales()
    tol = p["tolerance"]
    roundtrip = max(
        np.linalg.norm(back.E - f.E) / max(np.linalg.norm(f.E), 1e-300) if np.any(f.E) else np.linalg.norm(back.E),
        np.linalg.norm(back.B - f.B) / max(np.linalg.norm(f.B), 1e-300) if np.any(f.B) else np.linalg.norm(back.B),
    )
    checks = [
        check_below("I1_preserved", abs(g.I1 - f.I1) / s1 if s1 else abs(g.I1), tol),
        check_below("I2_preserved", abs(g.I2 - f.I2) / s2 if s2 else abs(g.I2), tol),
        check_below("inverse_roundtrip", roundtrip, tol),
    ]
    res = {
        "gamma": fields.lorentz_gamma(p["u"]),
        "E_boosted": g.E.tolist(),
        "B_boosted": g.B.tolist(),
        "I1": [f.I1, g.I1],
        "I2": [f.I2, g.I2],
    }
    return RunOutput(res, checks)


def _colinear_metrics(f: fields.FieldConfiguration):
    r = fields.colinearizing_boost(f)
    s1, s2 = f.invariant_scales()
    return (
        r,
        fields.parallelism_defect(r.boosted),
        abs(r.boosted.I1 - f.I1) / s1,
        abs(r.boosted.I2 - f.I2) / s2,
        fields.colinear_speed_relation(r.u, f),
    )


def random_configurations(count: int, seed: int, min_cos: float) -> list[fields.FieldConfiguration]:
    """Fields with |B| ~ 1 T and |E| ~ c * 1 T, rejecting |cos theta| <= min_cos."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        B = rng.normal(size=3)
        E = c * rng.normal(size=3) * 10.0 ** rng.uniform(-2, 1)
        cos = np.dot(E, B) / (np.linalg.norm(E) * np.linalg.norm(B))
        if abs(cos) > min_cos:
            out.append(fields.FieldConfiguration(E, B))
    return out


def run_colinear(p: dict) -> RunOutput:
    ptol, itol = p["parallel_tolerance"], p["invariant_tolerance"]
    if p["random"] > 0:
        if p["E"] is not None or p["B"] is not None:
            raise SchemaError("colinear: give either E/B or random, not both")
        configs = random_configurations(p["random"], p["seed"], p["min_cos"])
        metrics = [_colinear_metrics(f) for f in configs]
        defect = max(m[1] for m in metrics)
        i1 = max(m[2] for m in metrics)
        i2 = max(m[3] for m in metrics)
        resid = max(m[4] for m in metrics)
        speeds = np.array([m[0].u for m in metrics])
        res = {
            "count": len(configs),
            "max_parallel_defect": defect,
            "max_I1_error": i1,
            "max_I2_error": i2,
            "max_speed_relation_residual": resid,
            "max_u_over_c": float(np.max(speeds) / c),
        }
        fig = {"kind": "colinear", "u_over_c": speeds / c, "defect": np.array([m[1] for m in metrics])}
    else:
        if p["E"] is None or p["B"] is None:
            raise SchemaError("colinear: E and B are required unless random > 0")
        f = fields.FieldConfiguration(p["E"], p["B"])
        r, defect, i1, i2, resid = _colinear_metrics(f)
        res = {
            "u": r.u,
            "gamma": r.gamma,
            "axis": r.axis.tolist(),
            "E_boosted": r.boosted.E.tolist(),
            "B_boosted": r.boosted.B.tolist(),
            "parallel_defect": defect,
        }
        fig = None
    checks = [
        check_below("parallel_defect", defect, ptol),
        check_below("I1_preserved", i1, itol),
        check_below("I2_preserved", i2, itol),
        check_below("speed_relation_residual", resid, 1e-12),
    ]
    return RunOutput(res, checks, figure=fig)


_SPECIES = {"electron": (-constants.e, constants.m_e), "positron": (constants.e, constants.m_e)}


def run_push(p: dict) -> RunOutput:
    f = fields.FieldConfiguration(p["E"], p["B"])
    nB = np.linalg.norm(f.B)
    if nB == 0:
        raise SchemaError("push: B must be nonzero")
    drifts = {}
    checks = []
    traj_fig = {}
    ref = np.cross(f.E, f.B) / nB**2
    for sp_name in p["species"]:
        if sp_name not in _SPECIES:
            raise SchemaError(f"push: unknown species {sp_name!r}")
        q, m = _SPECIES[sp_name]
        g0 = 1.0 / math.sqrt(1.0 - np.dot(p["v0"], p["v0"]) / c**2)
        T = fields.gyroperiod(q, m, nB, g0)
        dt = T / p["steps_per_period"]
        steps = p["steps_per_period"] * (p["periods"] + 1)
        traj = fields.push_particle(f, q, m, np.zeros(3), p["v0"], dt, steps)
        vd = fields.gyro_averaged_drift(traj, f)
        drifts[sp_name] = vd.tolist()
        traj_fig[sp_name] = traj.x[: 3 * p["steps_per_period"]]
        if np.linalg.norm(ref) > 0:
            err = np.linalg.norm(vd - ref) / np.linalg.norm(ref)
            checks.append(check_below(f"{sp_name}_drift_vs_ExB", err, p["drift_tolerance"]))
        if not np.any(f.E):
            speed = np.linalg.norm(traj.v, axis=1)
            spread = (speed.max() - speed.min()) / speed.max() if speed.max() > 0 else 0.0
            checks.append(check_below(f"{sp_name}_speed_conservation", spread, p["energy_tolerance"]))
    names = list(drifts)
    if len(names) >= 2 and np.linalg.norm(ref) > 0:
        a_, b_ = np.array(drifts[names[0]]), np.array(drifts[names[1]])
        checks.append(check_below("species_agreement", np.linalg.norm(a_ - b_) / np.linalg.norm(ref), p["species_tolerance"]))
    res = {"ExB_over_B2": ref.tolist(), "gyro_averaged_drift": drifts}
    return RunOutput(res, checks, figure={"kind": "push", "trajectories": traj_fig})


def run_schwinger(p: dict) -> RunOutput:
    rows = []
    checks = []
    Ec = schwinger.critical_field(p["mass"], p["charge"])
    for E in p["E"]:
        qy = schwinger.VacuumDecayQuery(E, p["mass"], p["charge"], p["kmax"])
        w = schwinger.pair_production_rate(qy)
        w1 = schwinger.dominant_term_rate(qy)
        rows.append((E, w, w1, schwinger.rate_exponent(qy), schwinger.vacuum_persists(qy)))
        if p["expect_vacuum_persists"] is not None:
            ok = schwinger.vacuum_persists(qy) == p["expect_vacuum_persists"]
            checks.append(Check(f"vacuum_persists_as_expected_at_E={E:.6g}", w, 0.0, ok))
        checks.append(Check(f"rate_finite_at_E={E:.6g}", w, 0.0, math.isfinite(w) and w >= 0))
    table = {
        "E": np.array([r[0] for r in rows]),
        "rate": np.array([r[1] for r in rows]),
        "dominant_term": np.array([r[2] for r in rows]),
        "exponent": np.array([r[3] for r in rows]),
        "vacuum_persists": np.array([float(r[4]) for r in rows]),
    }
    res = {
        "critical_field": Ec,
        "kmax": p["kmax"],
        "rates": [
            {"E": r[0], "rate": r[1], "dominant_term": r[2], "exponent": r[3], "vacuum_persists": bool(r[4])}
            for r in rows
        ],
    }
    if p["critical_ratio_reference"] is not None:
        qc = schwinger.VacuumDecayQuery(Ec, p["mass"], p["charge"], p["kmax"])
        ratio = schwinger.pair_production_rate(qc) / schwinger.dominant_term_rate(qc)
        res["critical_ratio"] = ratio
        checks.append(
            check_below("critical_full_over_dominant", abs(ratio - p["critical_ratio_reference"]), p["critical_ratio_tolerance"])
        )
    return RunOutput(res, checks, table=table, figure={"kind": "schwinger", "table": table, "Ec": Ec})


def run_thruster(p: dict) -> RunOutput:
    v = c * np.geomspace(p["v_min_fraction"], p["v_max_fraction"], p["points"])
    table = propulsion.sweep(p["mdot"], v)
    photon = propulsion.photon_thruster_f_over_p()
    margin = np.min(photon - table["F_over_P_pair"]) * c
    checks = [check_at_least("photon_dominance_margin_on_sweep", margin, np.finfo(float).tiny)]
    res = {"photon_F_over_P": photon, "min_photon_minus_pair_times_c": float(margin)}
    if p["samples"] > 0:
        rng = np.random.default_rng(p["seed"])
        vs = c * rng.uniform(0.0, 1.0, p["samples"])
        vs = vs[(vs > 0) & (vs < c)]
        fp = propulsion.pair_thruster_f_over_p(vs)
        res["samples"] = int(vs.size)
        res["samples_dominated"] = int(np.count_nonzero(photon > fp))
        checks.append(Check("photon_dominates_all_samples", float(res["samples_dominated"]), float(vs.size), bool(np.all(photon > fp))))
    vr = p["ratio_speed_fraction"] * c
    ratio = photon / propulsion.pair_thruster_f_over_p(vr)
    power = propulsion.pair_thruster_power(propulsion.ThrusterPoint(p["mdot"], vr))
    res["ratio_of_ratios"] = ratio
    res["power_rel_difference"] = power.rel_difference
    if p["ratio_reference"] is not None:
        checks.append(check_below("ratio_of_ratios", abs(ratio - p["ratio_reference"]), p["ratio_tolerance"]))
    return RunOutput(res, checks, table=table, figure={"kind": "thruster", "table": table})


def run_modes(p: dict) -> RunOutput:
    action = p["action"]
    if action == "hermite":
        return _run_hermite(p)
    qE, qB, m, conv = natural_units(p)
    checks = []
    res: dict = {"qE": qE, "qB": qB, "m": m}
    if action == "residual":
        rows = []
        for n in p["n"]:
            ctx = modes.ModeContext(qE, qB, m, n, p["k_x"], p["k_y"])
            for t in p["t"]:
                for z in p["z"]:
                    ot, oz = modes.residual_orders(ctx, t, z, p["convergence_step_factor"])
                    rows.append((n, t, z, modes.residual_kg(ctx, t, z), ot, oz))
        cols = ("n", "t", "z", "residual", "order_temporal", "order_transverse")
        table = {k: np.array(col, dtype=float) for k, col in zip(cols, zip(*rows))}
        order = float(np.median(np.concatenate([table["order_temporal"], table["order_transverse"]])))
        res["median_observed_order"] = order
        checks.append(check_below("max_residual", float(np.max(table["residual"])), p["tolerance"]))
        checks.append(check_below("observed_order_minus_4", abs(order - 4.0), p["order_tolerance"]))
        return RunOutput(res, checks, table=table, conversions=conv)
    taus = np.linspace(p["tau_min"], p["tau_max"], p["points"])
    table = {"tau": taus}
    worst, worst_t = 0.0, 0.0
    for n in p["n"]:
        ctx = modes.ModeContext(qE, qB, m, n, p["k_x"], p["k_y"])
        if action == "evaluate":
            phi = modes.phi_mode(ctx, taus)
            table[f"re_phi_{n}"] = phi.real
            table[f"im_phi_{n}"] = phi.imag
            table[f"abs2_phi_{n}"] = np.abs(phi) ** 2
        else:
            W = modes.wronskian(ctx, taus)
            target = -2j if p["expected"] == "-2i" else modes.expected_wronskian(ctx)
            table[f"re_W_{n}"] = W.real
            table[f"im_W_{n}"] = W.imag
            worst = max(worst, float(np.max(np.abs(W - target))))
            worst_t = max(worst_t, float(np.max(np.abs(modes.wronskian_t(ctx, taus) - 1j))))
    if action == "wronskian-scan":
        label = "wronskian_vs_minus_2i" if p["expected"] == "-2i" else "wronskian_vs_closed_form"
        checks.append(check_below(label, worst, p["tolerance"]))
        checks.append(check_below("time_bracket_vs_i", worst_t, p["tolerance"]))
        res["expected"] = p["expected"]
    return RunOutput(res, checks, table=table, conversions=conv, figure={"kind": f"modes-{action}", "table": table})


def _run_hermite(p: dict) -> RunOutput:
    n_max = p["n_max"]
    ortho = float(np.max(np.abs(modes.hermite_overlaps(n_max) - np.eye(n_max + 1))))
    xs = np.linspace(-3.0, 3.0, 121)
    gauss = float(modes.hermite_completeness_error(p["completeness_n"], _unit_gaussian, xs))
    bump = float(modes.hermite_completeness_error(p["completeness_n"], smooth_bump, xs))
    Ns = [10, 25, 50, 100, 200]
    curve = np.array([modes.hermite_completeness_error(N, smooth_bump, xs) for N in Ns])
    checks = [
        check_below("orthonormality", ortho, 1e-10),
        check_below("completeness_unit_gaussian", gauss, p["completeness_tolerance"]),
        check_below("completeness_smooth_bump", bump, p["completeness_tolerance"]),
    ]
    res = {"orthonormality_error": ortho, "completeness_gaussian": gauss, "completeness_bump": bump}
    table = {"N": np.array(Ns, dtype=float), "bump_sup_error": curve}
    return RunOutput(res, checks, table=table, figure={"kind": "hermite", "table": table})


def _unit_gaussian(x):
    """Unit-width Gaussian centred off the origin, so the check is not just h_0."""
    return np.exp(-0.5 * (np.asarray(x) - 0.5) ** 2)


def smooth_bump(x, width: float = 2.5):
    """C-infinity bump supported on |x| < width."""
    x = np.asarray(x, dtype=float) / width
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
    return out


def run_vev(p: dict) -> RunOutput:
    qE, qB, m, conv = natural_units(p)
    family = vev.ModeFamily(qE, qB, m, p["q"])
    evaluations = []
    checks = []
    for comp in p["component"]:
        if comp in ("x", "y", "z"):
            comp = f"P^{comp}"  # bare axis means momentum
        for k in p["k_cut"]:
            w = vev.RegularizationWindow(p["n_max"], k, p["quadrature_points"], p["k_low"])
            r = vev.vev(comp, family, w, p["tolerance"])
            evaluations.append(r.as_dict())
            name = f"{r.component}_window=[{w.lower:g},{k:g}]"
            if p["expect"] == "zero":
                checks.append(Check(name, r.relative, p["tolerance"], r.passed))
            else:
                checks.append(check_at_least(f"{name}_nonzero", r.relative, p["nonzero_threshold"]))
    res = {"family": family.as_dict(), "evaluations": evaluations}
    return RunOutput(res, checks, conversions=conv, figure={"kind": "vev", "evaluations": evaluations})


RUNNERS = {
    "drift": run_drift,
    "boost": run_boost,
    "colinear": run_colinear,
    "push": run_push,
    "schwinger": run_schwinger,
    "thruster": run_thruster,
    "modes": run_modes,
    "vev": run_vev,
}


def execute(s: Scenario) -> RunOutput:
    return RUNNERS[s.subcommand](s.parameters)
