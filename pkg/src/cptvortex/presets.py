"""Canonical runs: the three figure-style scenarios and a paraxial estimate.

Each preset resolves to a full `ExperimentConfig`; `run_preset` executes it
and returns a serializable payload (column names, rows, scalars, and the
resolved configuration echo) that the emitters can write in any format.
Presets are deterministic end to end — rerunning one reproduces its CSV
byte for byte.
"""

from __future__ import annotations

import time

import numpy as np

from .analytic import conversion_efficiency
from .config import ExperimentConfig, build_config
from .errors import ValidationError
from .mbe import analytic_for, compare_analytic, energy_conversion, simulate
from .vortex import diffraction_check

PRESETS = {
    "fig2": (
        "constant controls at theta_c = pi/4: both channels settle at 1/4 "
        "of the input intensity",
        {"profile.kind": "constant", "profile.oc1": 1.0, "profile.oc2": 1.0,
         "mode": "compare"},
    ),
    "fig3": (
        "sigmoid control handoff (z0 = 20, z_bar = 2): adiabatic conversion "
        "of probe 1 into probe 2",
        {"profile.kind": "sigmoid", "profile.omega_c": 1.0, "profile.z0": 20.0,
         "profile.z_bar": 2.0, "mode": "compare"},
    ),
    "fig4": (
        "counter-peaked Gaussian controls (sigma = 16): conversion without a "
        "plateau region",
        {"profile.kind": "gaussian", "profile.omega_c": 1.0, "profile.sigma": 16.0,
         "mode": "compare"},
    ),
    "diffraction-estimate": (
        "paraxial figure of merit for a 20 um donut in a 100 um cloud at "
        "1 um wavelength",
        {},
    ),
}


def preset_names():
    return sorted(PRESETS)


def get_preset_config(name: str) -> ExperimentConfig:
    if name not in PRESETS:
        raise ValidationError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        )
    return build_config(PRESETS[name][1])


# ---------------------------------------------------------------------------
# payload builders
# ---------------------------------------------------------------------------

def curves_payload(cfg: ExperimentConfig, name: str = "run") -> dict:
    """Run a config in its mode and package the z-curves for emission."""
    start = time.monotonic()
    scalars = {}
    if cfg.mode == "analytic":
        z = np.linspace(0.0, cfg.medium.length, cfg.grid.nz + 1)
        ana = analytic_for(cfg.medium, cfg.profile, cfg.pulse.channel, z)
        ia = ana.intensities(normalized=True)
        columns = ["z/L_abs", "I_p1_analytic", "I_p2_analytic"]
        rows = [[z[i], ia[i, 0], ia[i, 1]] for i in range(z.size)]
        scalars["efficiency_analytic"] = conversion_efficiency(ana)
        warnings = list(ana.warnings)
    elif cfg.mode == "numeric":
        res = simulate(cfg.medium, cfg.profile, cfg.pulse, cfg.grid, store_full=False)
        from .mbe import intensity_profile
        z, i1, i2 = intensity_profile(res, cfg.reduction)
        columns = ["z/L_abs", "I_p1_numeric", "I_p2_numeric"]
        rows = [[z[i], i1[i], i2[i]] for i in range(z.size)]
        scalars["efficiency_numeric"] = energy_conversion(res) ** 0.5
        warnings = list(res.warnings)
    else:  # compare
        res = simulate(cfg.medium, cfg.profile, cfg.pulse, cfg.grid, store_full=False)
        cmp_ = compare_analytic(res)
        columns = ["z/L_abs", "I_p1_analytic", "I_p2_analytic",
                   "I_p1_numeric", "I_p2_numeric"]
        rows = [
            [cmp_.z_grid[i], cmp_.analytic[i, 0], cmp_.analytic[i, 1],
             cmp_.numeric[i, 0], cmp_.numeric[i, 1]]
            for i in range(cmp_.z_grid.size)
        ]
        scalars["efficiency_numeric"] = energy_conversion(res) ** 0.5
        scalars["max_abs_deviation"] = cmp_.max_abs_deviation
        ana = analytic_for(cfg.medium, cfg.profile, cfg.pulse.channel, cmp_.z_grid)
        scalars["efficiency_analytic"] = conversion_efficiency(ana)
        warnings = list(res.warnings) + list(cmp_.warnings)
    scalars["elapsed_seconds"] = time.monotonic() - start
    return {
        "name": name, "kind": "curves", "columns": columns, "rows": rows,
        "scalars": scalars, "config": cfg, "warnings": warnings,
    }


def diffraction_payload(cfg: ExperimentConfig, name: str = "diffraction-estimate") -> dict:
    v = cfg.vortex
    res = diffraction_check(v.length, v.w, v.wavelength)
    return {
        "name": name, "kind": "diffraction",
        "columns": ["fom", "status"], "rows": [[res.fom, res.status]],
        "scalars": {"fom": res.fom, "status": res.status},
        "config": cfg, "warnings": [],
    }


def run_preset(name: str) -> dict:
    """Execute a named preset and return its emission payload."""
    cfg = get_preset_config(name)
    if name == "diffraction-estimate":
        return diffraction_payload(cfg, name=name)
    return curves_payload(cfg, name=name)
