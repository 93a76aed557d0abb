"""Experiment configuration: a flat key-value text format with unit suffixes.

A config file is plain text, one ``key = value [unit]`` per line, ``#``
starts a comment.  Keys are dotted paths; every key has a fixed dimension
and the optional unit suffix must match it:

    medium.alpha   = 40
    medium.delta   = 0 Gamma
    profile.kind   = sigmoid
    profile.z_bar  = 2 Labs
    pulse.t0       = 25 invGamma
    grid.nz        = 400

Dimensionless-medium lengths carry ``Labs``, rates/Rabi amplitudes and
detunings carry ``Gamma``, times carry ``invGamma`` (alias ``1/Gamma``), and
the physical vortex lengths accept ``um``/``nm``/``mm`` (stored in um).
Unknown keys, unknown units, and wrong-dimension units are validation
errors; every omitted key falls back to its documented default.  The fully
resolved configuration is echoed into every output file, so a result can
always be traced back to the exact parameters that produced it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import MediumParams
from .errors import ValidationError
from .mbe import InputPulse, SimGrid
from .profiles import ControlProfile, load_tabulated

_MODES = ("analytic", "numeric", "compare")
_REDUCTIONS = ("pulse-energy", "peak-amplitude")

# key -> (dimension, type); dimension picks the admissible unit suffixes
_SCHEMA = {
    "medium.alpha": ("none", float),
    "medium.length": ("labs", float),
    "medium.gamma": ("gamma", float),
    "medium.delta": ("gamma", float),
    "profile.kind": ("str", str),
    "profile.omega_c": ("gamma", float),
    "profile.oc1": ("gamma", float),
    "profile.oc2": ("gamma", float),
    "profile.z0": ("labs", float),
    "profile.z_bar": ("labs", float),
    "profile.sigma": ("labs", float),
    "profile.table": ("str", str),
    "pulse.amplitude": ("gamma", float),
    "pulse.t0": ("invgamma", float),
    "pulse.t_bar": ("invgamma", float),
    "pulse.channel": ("str", str),
    "grid.nz": ("none", int),
    "grid.dz": ("labs", float),
    "grid.dt": ("invgamma", float),
    "grid.t_window": ("invgamma", float),
    "mode": ("str", str),
    "reduction": ("str", str),
    "vortex.l": ("none", int),
    "vortex.w": ("um", float),
    "vortex.n": ("none", int),
    "vortex.extent": ("none", float),
    "vortex.wavelength": ("um", float),
    "vortex.length": ("um", float),
}

_DEFAULTS = {
    "medium.alpha": 40.0,
    "medium.length": 40.0,
    "medium.gamma": 1.0,
    "medium.delta": 0.0,
    "profile.kind": "constant",
    "profile.omega_c": 1.0,
    "profile.oc1": 1.0,
    "profile.oc2": 1.0,
    "profile.z0": 20.0,
    "profile.z_bar": 2.0,
    "profile.sigma": 16.0,
    "profile.table": "",
    "pulse.amplitude": 0.01,
    "pulse.t0": 25.0,
    "pulse.t_bar": 10.0,
    "pulse.channel": "p1",
    "grid.nz": 400,
    "grid.dz": None,  # derived from medium.length / grid.nz unless given
    "grid.dt": 0.01,
    "grid.t_window": 100.0,
    "mode": "compare",
    "reduction": "pulse-energy",
    "vortex.l": 1,
    "vortex.w": 20.0,
    "vortex.n": 256,
    "vortex.extent": 3.0,
    "vortex.wavelength": 1.0,
    "vortex.length": 100.0,
}

# canonical unit name per dimension, plus accepted spellings -> scale factor
_UNITS = {
    "labs": {"Labs": 1.0},
    "gamma": {"Gamma": 1.0},
    "invgamma": {"invGamma": 1.0, "1/Gamma": 1.0},
    "um": {"um": 1.0, "nm": 1e-3, "mm": 1e3},
    "none": {},
}
_CANONICAL_UNIT = {"labs": "Labs", "gamma": "Gamma", "invgamma": "invGamma",
                   "um": "um", "none": "", "str": ""}


@dataclass(frozen=True)
class VortexSpec:
    """Transverse-beam parameters; physical lengths are in micrometers."""

    l: int = 1
    w: float = 20.0
    n: int = 256
    extent: float = 3.0
    wavelength: float = 1.0
    length: float = 100.0


@dataclass
class ExperimentConfig:
    """Validated experiment setup plus the resolved flat key-value map."""

    medium: MediumParams
    profile: ControlProfile
    pulse: InputPulse
    grid: SimGrid
    vortex: VortexSpec
    mode: str
    reduction: str
    resolved: dict

    def echo_lines(self) -> list:
        """Deterministic `key = value unit` lines of the full configuration."""
        out = []
        for key in sorted(self.resolved):
            dim, typ = _SCHEMA[key]
            val = self.resolved[key]
            if typ is float:
                text = f"{val:.9g}"
            else:
                text = str(val)
            unit = _CANONICAL_UNIT[dim] if typ is not str else ""
            out.append(f"{key} = {text} {unit}".rstrip())
        return out


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse config lines into {key: canonical value}; raises on any problem."""
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, rest = (part.strip() for part in line.split("=", 1))
        if key not in _SCHEMA:
            raise ValidationError(f"{source}:{lineno}: unknown key {key!r}")
        dim, typ = _SCHEMA[key]
        if typ is str:
            if not rest:
                raise ValidationError(f"{source}:{lineno}: empty value for {key}")
            overrides[key] = rest
            continue
        parts = rest.split()
        if len(parts) not in (1, 2):
            raise ValidationError(
                f"{source}:{lineno}: expected 'value [unit]' for {key}, got {rest!r}"
            )
        try:
            value = float(parts[0])
        except ValueError:
            raise ValidationError(
                f"{source}:{lineno}: {key} needs a number, got {parts[0]!r}"
            ) from None
        if len(parts) == 2:
            table = _UNITS[dim]
            if parts[1] not in table:
                allowed = ", ".join(sorted(table)) or "none"
                raise ValidationError(
                    f"{source}:{lineno}: unit {parts[1]!r} is not valid for {key} "
                    f"(allowed: {allowed})"
                )
            value *= table[parts[1]]
        if typ is int:
            if abs(value - round(value)) > 1e-9:
                raise ValidationError(f"{source}:{lineno}: {key} must be an integer")
            value = int(round(value))
        overrides[key] = value
    return overrides


def load_config(path) -> "ExperimentConfig":
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return build_config(parse_config_text(text, source=str(path)))


def build_config(overrides: Optional[dict] = None) -> ExperimentConfig:
    """Merge overrides onto the defaults and construct the validated setup."""
    flat = dict(_DEFAULTS)
    for key, val in (overrides or {}).items():
        if key not in _SCHEMA:
            raise ValidationError(f"unknown configuration key {key!r}")
        flat[key] = val

    medium = MediumParams(alpha=flat["medium.alpha"], length=flat["medium.length"],
                          gamma=flat["medium.gamma"], delta=flat["medium.delta"])

    kind = flat["profile.kind"]
    if kind == "constant":
        profile = ControlProfile.constant(flat["profile.oc1"], flat["profile.oc2"],
                                          length=medium.length)
    elif kind == "sigmoid":
        profile = ControlProfile.sigmoid(flat["profile.omega_c"], flat["profile.z0"],
                                         flat["profile.z_bar"], length=medium.length)
    elif kind == "gaussian":
        profile = ControlProfile.gaussian(flat["profile.omega_c"],
                                          flat["profile.sigma"], length=medium.length)
    elif kind == "tabulated":
        if not flat["profile.table"]:
            raise ValidationError("profile.kind = tabulated needs profile.table = <path>")
        profile = load_tabulated(flat["profile.table"],
                                 omega_c=flat["profile.omega_c"],
                                 length=medium.length)
    else:
        raise ValidationError(
            f"profile.kind must be constant|sigmoid|gaussian|tabulated, got {kind!r}"
        )

    pulse = InputPulse(amplitude=flat["pulse.amplitude"], t0=flat["pulse.t0"],
                       t_bar=flat["pulse.t_bar"], channel=flat["pulse.channel"])

    dz = flat["grid.dz"]
    if dz is None:
        dz = medium.length / flat["grid.nz"]
    grid = SimGrid(nz=flat["grid.nz"], dz=dz, dt=flat["grid.dt"],
                   t_window=flat["grid.t_window"])

    mode = flat["mode"]
    if mode not in _MODES:
        raise ValidationError(f"mode must be one of {_MODES}, got {mode!r}")
    reduction = flat["reduction"]
    if reduction not in _REDUCTIONS:
        raise ValidationError(
            f"reduction must be one of {_REDUCTIONS}, got {reduction!r}"
        )

    vortex = VortexSpec(l=flat["vortex.l"], w=flat["vortex.w"], n=flat["vortex.n"],
                        extent=flat["vortex.extent"],
                        wavelength=flat["vortex.wavelength"],
                        length=flat["vortex.length"])

    resolved = dict(flat)
    resolved["grid.dz"] = dz
    cfg = ExperimentConfig(medium=medium, profile=profile, pulse=pulse, grid=grid,
                           vortex=vortex, mode=mode, reduction=reduction,
                           resolved=resolved)
    # fail early, before any compute: the grid must suit medium and pulse
    if math.isfinite(medium.length):
        import numpy as np
        zs = np.linspace(0.0, medium.length, 257)
        oc1, oc2 = profile.evaluate(zs)
        omega_c_max = float(np.max(np.hypot(oc1, oc2)))
        grid.validate(medium, pulse, omega_c_max)
    return cfg


def key_type(key: str):
    """Python type of a configuration key's value (int, float, or str)."""
    if key not in _SCHEMA:
        raise ValidationError(f"unknown configuration key {key!r}")
    return _SCHEMA[key][1]


def set_value(overrides: dict, key: str, value) -> dict:
    """Typed assignment into an overrides dict (used by sweeps)."""
    if key not in _SCHEMA:
        raise ValidationError(f"unknown configuration key {key!r}")
    dim, typ = _SCHEMA[key]
    out = dict(overrides)
    if typ is str:
        out[key] = str(value)
    elif typ is int:
        v = float(value)
        if abs(v - round(v)) > 1e-9:
            raise ValidationError(f"{key} must be an integer, got {value}")
        out[key] = int(round(v))
    else:
        out[key] = float(value)
    return out
