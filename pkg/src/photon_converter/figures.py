"""Preset sweeps for the standard flow plots.

CRW presets use ``xi = 0.2, omega_e = 0.9, J = 0.3`` in units of ``omega = 1``;
linear presets use ``omega_e = 0.9, J = 0.3`` with ``Delta = 0`` in units of
``v_g / L = 1``. Grid resolutions are our own choice.
"""
from __future__ import annotations

from pathlib import Path

from .sweep import DEFAULTS, SweepAxis, SweepSpec, run_sweep

__all__ = ["FIGURES", "figure_spec", "run_figure"]

CRW_CAPTION = {"omega": 1.0, "xi": 0.2, "omega_e": 0.9, "J": 0.3}
LINEAR_CAPTION = {"v_g": 1.0, "L": 1.0, "omega_e": 0.9, "J": 0.3}
OMEGA_F = 0.6

# incident frequency spans the whole negative band, edges included as flagged rows
CRW_BAND = SweepAxis("omega_k", 0.6, 1.4, 2001)
LINEAR_RANGE = SweepAxis("omega_k", 0.0, 2.5, 2001)


def _params(model, **extra):
    params = dict(DEFAULTS[model])
    params.update(CRW_CAPTION if model == "crw" else LINEAR_CAPTION)
    # resonant drive unless the preset says otherwise
    params.update(omega_f=OMEGA_F, drive_frequency=OMEGA_F)
    params.update(extra)
    return params


FIGURES = {
    "fig3a": SweepSpec(
        model="crw",
        params=_params("crw", rabi=0.1),
        axis1=CRW_BAND,
        outputs=("flow_r", "flow_t", "flow_r_plus_t", "total"),
    ),
    "fig3b": SweepSpec(
        model="crw",
        params=_params("crw"),
        axis1=CRW_BAND,
        axis2=SweepAxis("rabi", values=(0.05, 0.1, 0.2)),
        outputs=("flow_tr",),
    ),
    "fig3c": SweepSpec(
        model="crw",
        params=_params("crw", rabi=0.1),
        axis1=SweepAxis("omega_k", 0.6, 1.4, 301),
        axis2=SweepAxis("drive_frequency", 0.4, 0.8, 301),
        outputs=("flow_tr",),
    ),
    "fig5a": SweepSpec(
        model="linear",
        params=_params("linear", rabi=0.2),
        axis1=LINEAR_RANGE,
        outputs=("flow_r", "flow_t", "flow_r_plus_t", "flow_tr", "total"),
    ),
    "fig5b": SweepSpec(
        model="linear",
        params=_params("linear"),
        axis1=LINEAR_RANGE,
        axis2=SweepAxis("rabi", values=(0.05, 0.2, 0.5)),
        outputs=("flow_tr",),
    ),
}


def figure_spec(target) -> SweepSpec:
    try:
        return FIGURES[target]
    except KeyError:
        raise ValueError(f"unknown figure {target!r}; choose from {sorted(FIGURES)}") from None


def run_figure(target, out_path, threads=1, fmt="csv") -> Path:
    """Run a preset and write its table to ``out_path``."""
    table = run_sweep(figure_spec(target), threads=threads)
    table.meta["figure"] = target
    return table.write(out_path, fmt=fmt)
