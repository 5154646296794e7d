"""Vacuum expectation values of the field momentum and the conserved current.

Two parts:

* a bilinear operator algebra over a(k), a+(k), b(k), b+(k) with sympy
  coefficients.  Contracting <0| X Y |0> with [a_k, a+_k'] = [b_k, b+_k'] =
  (2 pi)^2 delta_nm delta(kx - kx') delta(ky - ky') shows which components
  vanish by operator algebra alone (P^x, P^y, J^z);
* windowed quadratures of the surviving integrands (P^z, J^x, J^y), which
  vanish only through the parity of the integrand over symmetric cutoffs.

Spatial derivatives in P^j and J^j are taken as d/dx^j, the convention under
which the current reduces to 2 q (k_x + qB z) chi^2 |phi|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp

from . import modes
from .errors import QuadratureFailure, UnsupportedArity

# --- symbolic operator algebra ---------------------------------------------------------

t_sym, x_sym, y_sym, z_sym = sp.symbols("t x y z", real=True)
q_sym, qB_sym, qE_sym = sp.symbols("q qB qE", positive=True)
chi_f = sp.Function("chi")  # chi(n, kx, z)
phi_f = sp.Function("phi")  # phi(n, ky, t)
phis_f = sp.Function("phistar")  # phi*(n, ky, t)
NORMALIZATION = (2 * sp.pi) ** 2


@dataclass(frozen=True)
class ModeLabel:
    """Mode label k = (n, k_x, k_y); entries are sympy symbols or numbers."""

    n: sp.Expr
    kx: sp.Expr
    ky: sp.Expr

    @classmethod
    def symbolic(cls, suffix: str = "") -> "ModeLabel":
        n = sp.Symbol(f"n{suffix}", integer=True, nonnegative=True)
        kx, ky = sp.symbols(f"kx{suffix} ky{suffix}", real=True)
        return cls(n, kx, ky)

    def __str__(self):
        return f"({self.n},{self.kx},{self.ky})"


@dataclass(frozen=True)
class Op:
    species: str  # "a" (particle) or "b" (antiparticle)
    dagger: bool
    label: ModeLabel

    def __post_init__(self):
        if self.species not in ("a", "b"):
            raise ValueError("species must be 'a' or 'b'")

    def __str__(self):
        return f"{self.species}{'+' if self.dagger else ''}{self.label}"


def a(k: ModeLabel) -> "OperatorExpression":
    return OperatorExpression.single(Op("a", False, k))


def adag(k: ModeLabel) -> "OperatorExpression":
    return OperatorExpression.single(Op("a", True, k))


def b(k: ModeLabel) -> "OperatorExpression":
    return OperatorExpression.single(Op("b", False, k))


def bdag(k: ModeLabel) -> "OperatorExpression":
    return OperatorExpression.single(Op("b", True, k))


class OperatorExpression:
    """Sum of coefficient * (ordered product of operators), at most bilinear."""

    def __init__(self, terms=()):
        self.terms: tuple[tuple[sp.Expr, tuple[Op, ...]], ...] = tuple(
            (sp.sympify(c), tuple(ops)) for c, ops in terms
        )

    @classmethod
    def single(cls, op: Op) -> "OperatorExpression":
        return cls([(sp.Integer(1), (op,))])

    @classmethod
    def scalar(cls, c) -> "OperatorExpression":
        return cls([(c, ())])

    def __add__(self, other):
        other = _as_expr(other)
        return OperatorExpression(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return OperatorExpression((-c, ops) for c, ops in self.terms)

    def __sub__(self, other):
        return self + (-_as_expr(other))

    def __rsub__(self, other):
        return _as_expr(other) - self

    def __mul__(self, other):
        if isinstance(other, OperatorExpression):
            return OperatorExpression(
                (c1 * c2, o1 + o2) for c1, o1 in self.terms for c2, o2 in other.terms
            )
        return OperatorExpression((c * other, ops) for c, ops in self.terms)

    def __rmul__(self, other):
        return OperatorExpression((other * c, ops) for c, ops in self.terms)

    def map_coefficients(self, fn) -> "OperatorExpression":
        return OperatorExpression((fn(c), ops) for c, ops in self.terms)

    def arity(self) -> int:
        return max((len(ops) for _, ops in self.terms), default=0)

    def __repr__(self):
        return " + ".join(f"({c})*{'*'.join(map(str, ops)) or '1'}" for c, ops in self.terms) or "0"


def _as_expr(x) -> OperatorExpression:
    return x if isinstance(x, OperatorExpression) else OperatorExpression.scalar(x)


def commutator(x: OperatorExpression, y: OperatorExpression) -> OperatorExpression:
    return x * y - y * x


@dataclass
class VacuumValue:
    """sum over contractions of coefficient * (2 pi)^2 delta(k_left, k_right), plus a c-number."""

    contractions: dict = field(default_factory=dict)  # (left label, right label) -> coefficient
    constant: sp.Expr = sp.Integer(0)

    @property
    def is_zero(self) -> bool:
        return self.constant == 0 and not self.contractions

    def density(self) -> sp.Expr:
        """Integrand per sum_n int dk/(2 pi)^2 after the deltas are used.

        The primed (right) label is replaced by the left one; the (2 pi)^2 of
        the contraction cancels against the second integration measure.
        """
        total = sp.Integer(0)
        for (kl, kr), c in self.contractions.items():
            total += _substitute_label(c, kr, kl)
        return _tidy(total)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = [f"({c})*(2*pi)**2*delta({kl},{kr})" for (kl, kr), c in self.contractions.items()]
        if self.constant != 0:
            parts.append(str(self.constant))
        return " + ".join(parts)


def _substitute_label(expr, old: ModeLabel, new: ModeLabel):
    return expr.subs({old.n: new.n, old.kx: new.kx, old.ky: new.ky}, simultaneous=True)


def _tidy(expr):
    expr = sp.expand(sp.powsimp(sp.expand(expr), combine="exp"))
    return sp.simplify(expr) if expr != 0 else expr


def vacuum_expectation(expr: OperatorExpression) -> VacuumValue:
    """<0| expr |0> using a|0> = b|0> = 0 and <0|a+ = <0|b+ = 0.

    Only annihilator-then-creator pairs of the same species survive.
    """
    if expr.arity() > 2:
        raise UnsupportedArity("the engine handles at most bilinear terms")
    out = VacuumValue()
    for c, ops in expr.terms:
        if len(ops) == 0:
            out.constant = out.constant + c
            continue
        if len(ops) == 1:
            continue
        left, right = ops
        if left.dagger or not right.dagger or left.species != right.species:
            continue
        key = (left.label, right.label)
        out.contractions[key] = out.contractions.get(key, sp.Integer(0)) + c
    # drop contractions whose coefficients cancel
    for key in list(out.contractions):
        coeff = _tidy(out.contractions[key])
        if coeff == 0:
            del out.contractions[key]
        else:
            out.contractions[key] = coeff
    out.constant = sp.simplify(out.constant)
    return out


def normal_order(expr: OperatorExpression) -> tuple[OperatorExpression, VacuumValue]:
    """Split expr into its normal-ordered part and the c-number from reordering.

    a b+ style pairs are rewritten as b+ a plus the commutator, which is a
    (2 pi)^2 delta only for matching species.
    """
    if expr.arity() > 2:
        raise UnsupportedArity("the engine handles at most bilinear terms")
    ordered = []
    for c, ops in expr.terms:
        if len(ops) == 2 and not ops[0].dagger and ops[1].dagger:
            ordered.append((c, (ops[1], ops[0])))
        else:
            ordered.append((c, ops))
    return OperatorExpression(ordered), vacuum_expectation(expr)


# --- field expansions --------------------------------------------------------------------


def _wave(k: ModeLabel, sign: int):
    return sp.exp(sign * sp.I * (k.kx * x_sym + k.ky * y_sym))


def psi(k: ModeLabel) -> OperatorExpression:
    chi = chi_f(k.n, k.kx, z_sym)
    return a(k) * (chi * phis_f(k.n, k.ky, t_sym) * _wave(k, 1)) + bdag(k) * (
        chi * phi_f(k.n, k.ky, t_sym) * _wave(k, 1)
    )


def psi_dag(k: ModeLabel) -> OperatorExpression:
    chi = chi_f(k.n, k.kx, z_sym)
    return adag(k) * (chi * phi_f(k.n, k.ky, t_sym) * _wave(k, -1)) + b(k) * (
        chi * phis_f(k.n, k.ky, t_sym) * _wave(k, -1)
    )


def d(expr: OperatorExpression, var: sp.Symbol) -> OperatorExpression:
    return expr.map_coefficients(lambda c: sp.diff(c, var))


_COORD = {"x": x_sym, "y": y_sym, "z": z_sym}


def gauge_potential(component: str, B=None, E=None):
    """Spatial components of A^mu = (0, -B z, -E t, 0)."""
    B = qB_sym / q_sym if B is None else B
    E = qE_sym / q_sym if E is None else E
    return {"x": -B * z_sym, "y": -E * t_sym, "z": sp.Integer(0)}[component]


def momentum_operator(component: str, k: ModeLabel, kp: ModeLabel) -> OperatorExpression:
    """psi-dot+ d_j psi + psi-dot d_j psi+ with mode labels k (left) and k' (right)."""
    xj = _COORD[component]
    return d(psi_dag(k), t_sym) * d(psi(kp), xj) + d(psi(k), t_sym) * d(psi_dag(kp), xj)


def current_operator(component: str, k: ModeLabel, kp: ModeLabel) -> OperatorExpression:
    """i q [(d_j psi+) psi - psi+ d_j psi] - 2 q^2 A^j psi+ psi."""
    xj = _COORD[component]
    A = gauge_potential(component)
    return (sp.I * q_sym) * (d(psi_dag(k), xj) * psi(kp) - psi_dag(k) * d(psi(kp), xj)) - (
        2 * q_sym**2 * A
    ) * (psi_dag(k) * psi(kp))


def symbolic_density(kind: str, component: str) -> sp.Expr:
    """VEV integrand of P^j ("momentum") or J^j ("current") after contraction."""
    k, kp = ModeLabel.symbolic(), ModeLabel.symbolic("p")
    op = momentum_operator(component, k, kp) if kind == "momentum" else current_operator(component, k, kp)
    return vacuum_expectation(op).density()


# --- numerical windows --------------------------------------------------------------------

DEFAULT_TOLERANCE = 1e-8
SYMBOLIC = {("momentum", "x"), ("momentum", "y"), ("current", "z")}


@dataclass(frozen=True)
class RegularizationWindow:
    """Sharp cutoffs: Landau index n <= n_max and shifted wavenumber in [k_low, k_cut].

    k_low defaults to -k_cut (a symmetric window).
    """

    n_max: int
    k_cut: float
    quadrature_points: int = 32
    k_low: float | None = None

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError("n_max must be a non-negative integer")
        if not self.k_cut > 0:
            raise ValueError("k_cut must be positive")
        if self.quadrature_points < 16:
            raise ValueError("quadrature_points must be >= 16")
        if self.k_low is not None and not self.k_low < self.k_cut:
            raise ValueError("k_low must be below k_cut")

    @property
    def lower(self) -> float:
        return -self.k_cut if self.k_low is None else float(self.k_low)

    @property
    def symmetric(self) -> bool:
        return self.lower == -self.k_cut

    def as_dict(self) -> dict:
        return {
            "n_max": int(self.n_max),
            "k_low": self.lower,
            "k_cut": float(self.k_cut),
            "quadrature_points": int(self.quadrature_points),
        }


@dataclass(frozen=True)
class ModeFamily:
    """Field strengths and mass shared by every mode of a VEV sum (natural units)."""

    qE: float
    qB: float
    m: float = 0.0
    q: float = 1.0

    def context(self, n: int, k_x: float = 0.0, k_y: float = 0.0) -> modes.ModeContext:
        return modes.ModeContext(self.qE, self.qB, self.m, n, k_x, k_y)

    def as_dict(self) -> dict:
        return {"qE": self.qE, "qB": self.qB, "m": self.m, "q": self.q}


@dataclass
class VEVResult:
    component: str  # e.g. "P^z", "J^x"
    value: float
    scale: float
    tolerance: float
    mechanism: str  # "operator algebra" or "integrand symmetry"
    window: RegularizationWindow
    parity_diagnostic: float | None = None
    imag: float = 0.0

    @property
    def passed(self) -> bool:
        if self.mechanism == "operator algebra":
            return self.value == 0.0
        return abs(complex(self.value, self.imag)) <= self.tolerance * self.scale

    @property
    def relative(self) -> float:
        if self.scale == 0:
            return 0.0 if self.value == 0 else math.inf
        return abs(complex(self.value, self.imag)) / self.scale

    def as_dict(self) -> dict:
        out = {
            "component": self.component,
            "window": self.window.as_dict(),
            "value": self.value,
            "scale": self.scale,
            "tolerance": self.tolerance,
            "mechanism": self.mechanism,
            "pass": self.passed,
        }
        if self.parity_diagnostic is not None:
            out["parity_diagnostic"] = self.parity_diagnostic
        if self.imag:
            out["imag"] = self.imag
        return out


def _fsum_complex(values) -> complex:
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


def windowed_integral(f, lo: float, hi: float, points: int = 32, rtol: float = 1e-13, max_panels: int = 4096, scale_rtol: float = 1e-6):
    """Composite Gauss-Legendre integral of f over [lo, hi] with panel doubling.

    Returns (integral, integral of |f|).  The signed integral must settle to
    rtol relative to the |f| integral; the latter has kinks at zeros of f and
    is only required to settle to scale_rtol.  Panel sums are combined with
    compensated summation in a fixed order, so results are reproducible.
    """
    nodes, weights = np.polynomial.legendre.leggauss(points)
    prev = None
    panels = 4
    while panels <= max_panels:
        edges = np.linspace(lo, hi, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        xs = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        fx = np.asarray(f(xs)).reshape(panels, points)
        w = (half[:, None] * weights[None, :])
        I = _fsum_complex((fx * w).ravel())
        A = math.fsum((np.abs(fx) * w).ravel())
        if prev is not None:
            I0, A0 = prev
            if abs(I - I0) <= rtol * A + 1e-300 and abs(A - A0) <= scale_rtol * A + 1e-300:
                return I, A
        prev = (I, A)
        panels *= 2
    raise QuadratureFailure(f"no convergence on [{lo}, {hi}] with {max_panels} panels")


def _chi_integrals(n: int, window: RegularizationWindow, weight: str):
    """Windowed integrals over xi of h_n^2 xi ("odd"), h_n h_n' ("derivative") or h_n^2 ("norm")."""
    lo, hi, P = window.lower, window.k_cut, window.quadrature_points
    if weight == "odd":
        return windowed_integral(lambda s: modes.hermite_functions(n, s)[n] ** 2 * s, lo, hi, P)
    if weight == "norm":
        return windowed_integral(lambda s: modes.hermite_functions(n, s)[n] ** 2, lo, hi, P)
    ctx = modes.ModeContext(1.0, 1.0, 0.0, n)
    return windowed_integral(
        lambda s: modes.hermite_mode(ctx, s) * modes.hermite_mode_derivative(ctx, s), lo, hi, P
    )


def _phi_integrals(ctx: modes.ModeContext, window: RegularizationWindow, weight: str):
    lo, hi, P = window.lower, window.k_cut, window.quadrature_points
    if weight == "norm":
        return windowed_integral(lambda s: np.abs(modes.phi_mode(ctx, s)) ** 2, lo, hi, P)
    if weight == "odd":
        return windowed_integral(lambda s: np.abs(modes.phi_mode(ctx, s)) ** 2 * s, lo, hi, P)

    def conj_deriv_times_phi(s):
        phi, dphi = modes.phi_mode_with_derivative(ctx, s)
        return np.conj(dphi) * phi

    return windowed_integral(conj_deriv_times_phi, lo, hi, P)


def phi_parity_diagnostic(ctx: modes.ModeContext, tau_max: float, samples: int = 401) -> float:
    """max | |phi(tau)|^2 - |phi(-tau)|^2 | / max |phi|^2 over [0, tau_max]."""
    s = np.linspace(0.0, tau_max, samples)
    p = np.abs(modes.phi_mode(ctx, s)) ** 2
    m = np.abs(modes.phi_mode(ctx, -s)) ** 2
    return float(np.max(np.abs(p - m)) / max(np.max(p), np.max(m)))


def _symbolic_result(label: str, kind: str, component: str, window, tolerance) -> VEVResult:
    density = symbolic_density(kind, component)
    if density != 0:  # pragma: no cover - guards the algebra
        raise AssertionError(f"{label} did not cancel: {density}")
    return VEVResult(label, 0.0, 0.0, tolerance, "operator algebra", window)


def momentum_vev(component: str, family: ModeFamily, window: RegularizationWindow, tolerance: float = DEFAULT_TOLERANCE) -> VEVResult:
    """<0|P^j|0> summed over n <= n_max and integrated over the window."""
    label = f"P^{component}"
    if component in ("x", "y"):
        return _symbolic_result(label, "momentum", component, window, tolerance)
    if component != "z":
        raise ValueError("component must be x, y or z")
    pref = 2.0 / (2.0 * math.pi) ** 2
    total, scale = [], []
    for n in range(window.n_max + 1):
        ctx = family.context(n)
        Ix, Ax = _chi_integrals(n, window, "derivative")
        Iy, Ay = _phi_integrals(ctx, window, "derivative")
        fx = family.qB**1.5
        total.append(pref * fx * Ix * family.qE * Iy)
        scale.append(pref * fx * Ax * family.qE * Ay)
    value = _fsum_complex(total)
    return VEVResult(label, float(value.real), math.fsum(scale), tolerance, "integrand symmetry", window, imag=float(value.imag))


def current_vev(component: str, family: ModeFamily, window: RegularizationWindow, tolerance: float = DEFAULT_TOLERANCE) -> VEVResult:
    """<0|J^j|0> summed over n <= n_max and integrated over the window."""
    label = f"J^{component}"
    if component == "z":
        return _symbolic_result(label, "current", component, window, tolerance)
    if component not in ("x", "y"):
        raise ValueError("component must be x, y or z")
    pref = 2.0 * family.q / (2.0 * math.pi) ** 2
    total, scale = [], []
    parity = 0.0
    for n in range(window.n_max + 1):
        ctx = family.context(n)
        if component == "x":
            Ix, Ax = _chi_integrals(n, window, "odd")
            Iy, Ay = _phi_integrals(ctx, window, "norm")
            fx, fy = family.qB**1.5, math.sqrt(family.qE / 2.0)
        else:
            Ix, Ax = _chi_integrals(n, window, "norm")
            Iy, Ay = _phi_integrals(ctx, window, "odd")
            fx, fy = family.qB, family.qE / 2.0
            parity = max(parity, phi_parity_diagnostic(ctx, max(abs(window.lower), window.k_cut)))
        total.append(pref * fx * Ix * fy * Iy)
        scale.append(pref * fx * Ax * fy * Ay)
    value = math.fsum(total)
    return VEVResult(
        label,
        float(value),
        math.fsum(scale),
        tolerance,
        "integrand symmetry",
        window,
        parity_diagnostic=parity if component == "y" else None,
    )


def vev(component: str, family: ModeFamily, window: RegularizationWindow, tolerance: float = DEFAULT_TOLERANCE) -> VEVResult:
    """Dispatch on names like "P^x", "J^y", "Px" or "jy"."""
    name = component.replace("^", "").strip()
    kind, comp = name[0].upper(), name[1:].lower()
    if kind == "P":
        return momentum_vev(comp, family, window, tolerance)
    if kind == "J":
        return current_vev(comp, family, window, tolerance)
    raise ValueError(f"unknown component {component!r}")


def geometric_windows(n_max: int, k_start: float, count: int = 4, ratio: float = 2.0, points: int = 32):
    return [RegularizationWindow(n_max, k_start * ratio**i, points) for i in range(count)]


# --- commutator reduction checks ------------------------------------------------------------


def fourier_delta_smear(g, x, band: float, half_width: float = 40.0, points: int = 64) -> np.ndarray:
    """int dx' g(x') sin(K (x - x')) / (pi (x - x')), the band-limited form of
    int dk/(2 pi) e^{i k (x - x')} applied to g."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    for i, xi_ in enumerate(x):
        def kern(s, xi_=xi_):
            return g(s) * band / math.pi * np.sinc(band * (xi_ - s) / math.pi)

        # |kernel| has a kink at every zero, so only a loose scale tolerance is attainable
        out[i], _ = windowed_integral(kern, xi_ - half_width, xi_ + half_width, points, rtol=1e-12, scale_rtol=1e-3)
    return out


def commutator_checks(family: ModeFamily, n: int = 0, tau_span: float = 10.0) -> dict:
    """Piecewise check of [psi, psi-dot+] = i delta^3: time bracket, Hermite sum, Fourier delta."""
    ctx = family.context(n)
    taus = np.linspace(-tau_span, tau_span, 101)
    bracket = modes.wronskian_t(ctx, taus)
    xs = np.linspace(-3.0, 3.0, 61)
    completeness = modes.hermite_completeness_error(200, lambda s: np.exp(-0.5 * (s - 0.5) ** 2), xs)
    g = lambda s: np.exp(-0.5 * s * s)  # noqa: E731
    fd = fourier_delta_smear(g, np.linspace(-3, 3, 13), band=20.0)
    return {
        "time_bracket_error": float(np.max(np.abs(bracket - 1j))),
        "hermite_completeness_error": float(completeness),
        "fourier_delta_error": float(np.max(np.abs(fd - g(np.linspace(-3, 3, 13))))),
    }
