"""Figures written next to scenario reports.

Uses the non-interactive Agg backend. PNG metadata is stripped of the
software tag so files do not change between matplotlib patch releases.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .constants import c  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 100,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 1.4,
    "legend.frameon": False,
    "savefig.bbox": "tight",
}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="png", metadata={"Software": None})
    plt.close(fig)
    return path


def thruster_figure(table, path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        beta = np.asarray(table["v"]) / c
        ax.loglog(beta, np.asarray(table["F_over_P_pair"]) * c, label="pair annihilation thruster")
        ax.loglog(beta, np.asarray(table["F_over_P_photon"]) * c, "--", label="photon thruster")
        ax.set_xlabel("exhaust speed v / c")
        ax.set_ylabel("c F / P")
        ax.legend()
        return _save(fig, path)


def schwinger_figure(table, Ec: float, path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        E = np.asarray(table["E"]) / Ec
        rate = np.asarray(table["rate"])
        keep = rate > 0
        ax.semilogy(E[keep], rate[keep], "o-", label="series")
        ax.semilogy(E[keep], np.asarray(table["dominant_term"])[keep], "x--", label="k = 1 term")
        ax.set_xlabel("E / E_c")
        ax.set_ylabel("rate per volume per time (SI)")
        ax.legend()
        return _save(fig, path)


def push_figure(trajectories: dict, path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for name in sorted(trajectories):
            x = np.asarray(trajectories[name])
            ax.plot(x[:, 0], x[:, 1], label=name)
        ax.set_xlabel("x (m)")
        ax.set_ylabel("y (m)")
        ax.set_aspect("equal", adjustable="datalim")
        ax.legend()
        return _save(fig, path)


def colinear_figure(u_over_c, defect, path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        d = np.maximum(np.asarray(defect), 1e-18)
        ax.semilogy(np.asarray(u_over_c), d, ".", ms=3)
        ax.set_xlabel("boost speed u / c")
        ax.set_ylabel("|E' x B'| / (|E'| |B'|)")
        return _save(fig, path)


def modes_figure(table, action: str, path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        tau = np.asarray(table["tau"])
        if action == "evaluate":
            for key in table:
                if key.startswith("abs2_phi_"):
                    ax.plot(tau, table[key], label=f"n = {key.rsplit('_', 1)[1]}")
            ax.set_ylabel("|phi_n|^2")
        else:
            for key in table:
                if key.startswith("im_W_"):
                    ax.plot(tau, table[key], label=f"Im W, n = {key.rsplit('_', 1)[1]}")
            ax.set_ylabel("Wronskian (imaginary part)")
        ax.set_xlabel("tau")
        ax.legend()
        return _save(fig, path)


def hermite_figure(table, path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.semilogy(table["N"], np.maximum(np.asarray(table["bump_sup_error"]), 1e-18), "o-")
        ax.set_xlabel("truncation N")
        ax.set_ylabel("sup error of completeness sum")
        return _save(fig, path)


def vev_figure(evaluations: list, path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        by_comp: dict[str, list] = {}
        for ev in evaluations:
            if ev["mechanism"] == "operator algebra":
                continue
            rel = abs(ev["value"]) / ev["scale"] if ev["scale"] else 0.0
            by_comp.setdefault(ev["component"], []).append((ev["window"]["k_cut"], max(rel, 1e-18)))
        for comp in sorted(by_comp):
            k, r = zip(*by_comp[comp])
            ax.loglog(k, r, "o-", label=comp)
        if evaluations:
            ax.axhline(evaluations[0]["tolerance"], color="k", lw=0.8, ls=":", label="tolerance")
        ax.set_xlabel("window cutoff")
        ax.set_ylabel("|value| / scale")
        ax.legend()
        return _save(fig, path)


def render(figure: dict | None, path: Path) -> Path | None:
    """Draw the figure described by a run's figure payload; None if there is nothing to draw."""
    if not figure:
        return None
    kind = figure["kind"]
    if kind == "thruster":
        return thruster_figure(figure["table"], path)
    if kind == "schwinger":
        return schwinger_figure(figure["table"], figure["Ec"], path)
    if kind == "push":
        return push_figure(figure["trajectories"], path)
    if kind == "colinear":
        return colinear_figure(figure["u_over_c"], figure["defect"], path)
    if kind in ("modes-evaluate", "modes-wronskian-scan"):
        return modes_figure(figure["table"], kind.split("-", 1)[1], path)
    if kind == "hermite":
        return hermite_figure(figure["table"], path)
    if kind == "vev":
        return vev_figure(figure["evaluations"], path)
    raise ValueError(f"unknown figure kind {kind!r}")
