"""Command-line interface.

Verbs:

* ``preset``              run a canonical scenario (fig2, fig3, fig4,
                          diffraction-estimate)
* ``simulate``            numeric space-time run from a config file
* ``analytic``            closed-form curves from a config file
* ``compare``             both, with the deviation between them
* ``sweep``               rerun while sweeping one numeric key
* ``vortex-map``          transverse intensity/phase maps after conversion
* ``check-adiabaticity``  scan 2|theta'| against |beta|
* ``check-diffraction``   paraxial figure of merit L*lambda/w^2

Exit codes: 0 success, 2 validation/configuration error, 3 numerical
divergence, 4 I/O failure.  Nothing here uses randomness; --seedless merely
asserts that (it is accepted everywhere and changes nothing).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .config import build_config, parse_config_text, set_value
from .emit import fmt, write_map_csv, write_payload
from .errors import DivergenceError, ValidationError
from .mbe import analytic_for
from .presets import curves_payload, preset_names, run_preset
from .profiles import adiabaticity_report
from .sweep import SweepSpec, run_sweep
from .vortex import (crosscheck_radial, diffraction_check, make_vortex,
                     propagate_transverse, transfer_scalars, winding_number)


def _read_overrides(path) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), source=str(path))


def _config_for(args, mode: str):
    overrides = _read_overrides(getattr(args, "config", None))
    overrides["mode"] = mode
    return build_config(overrides)


# ---------------------------------------------------------------------------
# verb handlers
# ---------------------------------------------------------------------------

def cmd_preset(args) -> int:
    payload = run_preset(args.name)
    path = write_payload(args.out, payload, args.format)
    if payload["kind"] == "diffraction":
        print(f"{payload['scalars']['fom']:.3f} {payload['scalars']['status']}")
    else:
        for key, val in sorted(payload["scalars"].items()):
            print(f"{key} = {fmt(val)}")
    for warning in payload["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"wrote {path}")
    return 0


def _run_mode(args, mode: str, name: str) -> int:
    cfg = _config_for(args, mode)
    payload = curves_payload(cfg, name=name)
    path = write_payload(args.out, payload, args.format)
    for key, val in sorted(payload["scalars"].items()):
        print(f"{key} = {fmt(val)}")
    for warning in payload["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"wrote {path}")
    return 0


def cmd_simulate(args) -> int:
    return _run_mode(args, "numeric", "simulate")


def cmd_analytic(args) -> int:
    return _run_mode(args, "analytic", "analytic")


def cmd_compare(args) -> int:
    return _run_mode(args, "compare", "compare")


def cmd_sweep(args) -> int:
    overrides = _read_overrides(args.config)
    try:
        values = tuple(float(v) for v in args.values.split(",") if v.strip())
    except ValueError:
        raise ValidationError(f"--values must be a comma list of numbers, got {args.values!r}")
    spec = SweepSpec(param=args.param, values=values, reduction=args.reduction)
    result = run_sweep(overrides, spec, jobs=args.jobs)
    rows = []
    for row in result.rows:
        err = "" if row["error"] is None else row["error"].replace(",", ";")
        metric = "" if row["metric"] is None else row["metric"]
        rows.append([row["value"], metric, err])
    payload = {
        "name": "sweep", "kind": "sweep",
        "columns": [spec.param, spec.reduction, "error"],
        "rows": rows,
        "scalars": {"n_values": len(values),
                    "n_failed": sum(1 for r in result.rows if r["error"])},
        "config": build_config(overrides), "warnings": [],
    }
    path = write_payload(args.out, payload, args.format)
    for row in rows:
        metric = fmt(row[1]) if row[1] != "" else f"FAILED ({row[2]})"
        print(f"{spec.param} = {fmt(row[0])}: {spec.reduction} = {metric}")
    print(f"wrote {path}")
    return 0


def cmd_vortex_map(args) -> int:
    overrides = _read_overrides(args.config)
    for key, flag in (("vortex.l", args.l), ("vortex.w", args.w),
                      ("vortex.n", args.n)):
        if flag is not None:
            overrides = set_value(overrides, key, flag)
    overrides.setdefault("mode", "analytic")
    cfg = build_config(overrides)
    v = cfg.vortex

    z_exit = cfg.medium.length if args.z is None else float(args.z)
    if not 0.0 <= z_exit <= cfg.medium.length:
        raise ValidationError(
            f"--z must lie inside the medium [0, {cfg.medium.length}], got {z_exit}"
        )
    field = make_vortex(l=v.l, w=v.w, amplitude=cfg.pulse.amplitude,
                        n=v.n, extent_w=v.extent)
    zg = np.array([0.0, z_exit]) if z_exit > 0 else np.array([0.0])
    ana = analytic_for(cfg.medium, cfg.profile, cfg.pulse.channel, zg)
    scalars = transfer_scalars(ana, index=-1)
    p1f, p2f = propagate_transverse(field, scalars)

    os.makedirs(args.out, exist_ok=True)
    meta_common = cfg.echo_lines() + [
        f"l = {field.l}", f"w = {fmt(field.w)} um", f"z = {fmt(z_exit)} Labs",
        f"grid_n = {v.n}", f"extent = {fmt(v.extent)} w",
        f"x_range_um = {fmt(field.x[0])} .. {fmt(field.x[-1])}",
    ]
    written = []
    for name, f in (("p1", p1f), ("p2", p2f)):
        for kind, matrix in (("intensity", f.intensity()), ("phase", f.phase())):
            path = os.path.join(args.out, f"vortex_{name}_{kind}.csv")
            write_map_csv(path, matrix, meta_common + [f"channel = {name}",
                                                       f"map = {kind}"])
            written.append(path)

    radii = np.linspace(0.0, v.extent * v.w, 201)
    i1 = np.abs(p1f.at(radii, np.zeros_like(radii))) ** 2
    i2 = np.abs(p2f.at(radii, np.zeros_like(radii))) ** 2
    peak = max(float(i1.max()), float(i2.max()), 1e-300)
    fom = diffraction_check(v.length, v.w, v.wavelength)
    payload = {
        "name": "vortex-map", "kind": "curves",
        "columns": ["r/w", "I_p1", "I_p2"],
        "rows": [[radii[i] / v.w, i1[i] / peak, i2[i] / peak]
                 for i in range(radii.size)],
        "scalars": {
            "winding_p1": winding_number(p1f) if abs(scalars[0]) > 0 else 0,
            "winding_p2": winding_number(p2f) if abs(scalars[1]) > 0 else 0,
            "transfer_p1": abs(scalars[0]), "transfer_p2": abs(scalars[1]),
            "fom": fom.fom, "fom_status": fom.status,
        },
        "config": cfg, "warnings": list(ana.warnings),
    }
    if args.crosscheck:
        report = crosscheck_radial(field, cfg.medium, cfg.profile)
        payload["scalars"]["crosscheck_spread"] = report["spread"]
    path = write_payload(args.out, payload, args.format)
    written.append(path)
    for key, val in sorted(payload["scalars"].items()):
        print(f"{key} = {fmt(val)}")
    for w_ in written:
        print(f"wrote {w_}")
    return 0


def cmd_check_adiabaticity(args) -> int:
    if args.preset is not None:
        from .presets import get_preset_config
        cfg = get_preset_config(args.preset)
    else:
        if args.config is None:
            raise ValidationError("check-adiabaticity needs --config or --preset")
        cfg = build_config(_read_overrides(args.config))
    rep = adiabaticity_report(cfg.profile, cfg.medium, n_scan=args.n_scan)
    margin = "unbounded" if math.isinf(rep.margin) else f"{rep.margin:.6g}"
    print(f"lhs_max = {rep.lhs_max:.6g}   (2|theta'| peak, at z = {rep.worst_z:.6g})")
    print(f"rhs     = {rep.rhs:.6g}   (|beta|)")
    verdict = "adiabatic" if rep.margin > 1.0 else "NOT adiabatic"
    print(f"margin  = {margin}   -> {verdict}")
    return 0


_LEN_UNITS = {"um": 1.0, "nm": 1e-3, "mm": 1e3}


def _length_um(text: str, name: str) -> float:
    s = text.strip()
    for suffix, scale in _LEN_UNITS.items():
        if s.endswith(suffix):
            s = s[: -len(suffix)].strip()
            try:
                return float(s) * scale
            except ValueError:
                break
    try:
        return float(s)  # bare numbers are micrometers
    except ValueError:
        raise ValidationError(
            f"{name} must be a length like '100um', '20', or '1mm', got {text!r}"
        ) from None


def cmd_check_diffraction(args) -> int:
    length = _length_um(args.length, "length")
    waist = _length_um(args.waist, "waist")
    wavelength = _length_um(args.wavelength, "wavelength")
    res = diffraction_check(length, waist, wavelength)
    print(f"{res.fom:.3f} {res.status}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cptvortex",
        description="Two-probe conversion in a coherently driven double-Lambda medium",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".", help="output directory (default: .)")
    common.add_argument("--format", default="csv", choices=("csv", "json", "svg"),
                        help="output format (default: csv)")
    common.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker threads (used by sweep)")
    common.add_argument("--seedless", action="store_true",
                        help="assert the run uses no randomness (always true here)")

    p = sub.add_parser("preset", parents=[common],
                       help="run a canonical scenario")
    p.add_argument("name", help=f"one of: {', '.join(preset_names())}")
    p.set_defaults(func=cmd_preset)

    for verb, func, blurb in (
        ("simulate", cmd_simulate, "numeric space-time run"),
        ("analytic", cmd_analytic, "closed-form curves"),
        ("compare", cmd_compare, "numeric vs analytic deviation"),
    ):
        p = sub.add_parser(verb, parents=[common], help=blurb)
        p.add_argument("--config", required=True, help="config file path")
        p.set_defaults(func=func)

    p = sub.add_parser("sweep", parents=[common], help="sweep one numeric key")
    p.add_argument("--config", default=None, help="base config file")
    p.add_argument("--param", required=True,
                   help="configuration key to sweep (e.g. profile.z_bar)")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--reduction", default="efficiency",
                   choices=("efficiency", "max-deviation"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("vortex-map", parents=[common],
                       help="transverse maps after conversion")
    p.add_argument("--config", default=None)
    p.add_argument("--l", type=int, default=None, help="winding number")
    p.add_argument("--w", type=float, default=None, help="waist (um)")
    p.add_argument("--n", type=int, default=None, help="grid points per axis")
    p.add_argument("--z", type=float, default=None,
                   help="propagation distance in L_abs (default: full medium)")
    p.add_argument("--crosscheck", action="store_true",
                   help="verify the scalar treatment with per-radius runs")
    p.set_defaults(func=cmd_vortex_map)

    p = sub.add_parser("check-adiabaticity", parents=[common],
                       help="scan 2|theta'| against |beta|")
    p.add_argument("--config", default=None)
    p.add_argument("--preset", default=None, choices=preset_names())
    p.add_argument("--n-scan", type=int, default=2048)
    p.set_defaults(func=cmd_check_adiabaticity)

    p = sub.add_parser("check-diffraction", parents=[common],
                       help="paraxial figure of merit")
    p.add_argument("length", help="medium length, e.g. 100um")
    p.add_argument("waist", help="beam waist, e.g. 20um")
    p.add_argument("wavelength", help="wavelength, e.g. 1um")
    p.set_defaults(func=cmd_check_diffraction)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args) or 0)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
