"""Deterministic output writers: CSV, JSON, SVG, and transverse map files.

CSV is the reference format: 9 significant digits, LF line endings, the
fully resolved configuration echoed in '#' header lines — rerunning the
same setup reproduces the file byte for byte.  SVG plots carry the echo in
their metadata and use a fixed hash salt so their internal ids stay stable.
"""

from __future__ import annotations

import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

import numpy as np  # noqa: E402

from .errors import ValidationError  # noqa: E402


def fmt(value) -> str:
    """Canonical cell formatting: %.9g for reals, plain text otherwise."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.9g}"
    return str(value)


def _echo(payload) -> list:
    cfg = payload.get("config")
    return cfg.echo_lines() if cfg is not None else []


def write_csv(path, payload) -> str:
    """Write a payload's columns/rows as a config-echoing CSV file."""
    lines = [f"# {line}" for line in _echo(payload)]
    for w in payload.get("warnings", ()):
        lines.append(f"# warning: {w}")
    lines.append(",".join(payload["columns"]))
    for row in payload["rows"]:
        lines.append(",".join(fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return str(path)


def write_json(path, payload) -> str:
    doc = {
        "name": payload.get("name"),
        "kind": payload.get("kind"),
        "config": _echo(payload),
        "columns": payload["columns"],
        "rows": [[v if isinstance(v, str) else float(v) for v in row]
                 for row in payload["rows"]],
        "scalars": {k: (v if isinstance(v, str) else float(v))
                    for k, v in payload.get("scalars", {}).items()},
        "warnings": list(payload.get("warnings", ())),
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return str(path)


def write_svg(path, payload) -> str:
    """Line plot of every non-z column against the first column."""
    columns = payload["columns"]
    rows = payload["rows"]
    plt.rcParams["svg.hashsalt"] = "cptvortex"
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if payload.get("kind") == "diffraction":
        fom = float(rows[0][0])
        ax.bar(["L*lambda/w^2"], [fom], color="#4878cf")
        ax.axhline(0.5, color="green", ls="--", lw=1, label="pass below 0.5")
        ax.axhline(np.pi, color="red", ls="--", lw=1, label="fail above pi")
        ax.set_ylabel("figure of merit")
        ax.set_title(f"diffraction estimate: {fom:.3f} ({rows[0][1]})")
        ax.legend(loc="best", fontsize=8)
    else:
        data = np.array([[float(v) for v in row] for row in rows], dtype=float)
        x = data[:, 0]
        for j in range(1, len(columns)):
            style = "--" if "analytic" in columns[j] else "-"
            ax.plot(x, data[:, j], style, label=columns[j])
        ax.set_xlabel(columns[0])
        ax.set_ylabel("normalized intensity"
                      if "I_" in "".join(columns[1:]) else columns[1])
        ax.set_title(payload.get("name", ""))
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg",
                metadata={"Date": None,
                          "Description": "; ".join(_echo(payload))})
    plt.close(fig)
    return str(path)


_WRITERS = {"csv": write_csv, "json": write_json, "svg": write_svg}


def write_payload(out_dir, payload, fmt_name: str) -> str:
    """Dispatch a payload to the requested format inside out_dir."""
    if fmt_name not in _WRITERS:
        raise ValidationError(
            f"format must be one of {sorted(_WRITERS)}, got {fmt_name!r}"
        )
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{payload['name']}.{fmt_name}")
    return _WRITERS[fmt_name](path, payload)


def write_map_csv(path, matrix, header_lines) -> str:
    """Write one transverse map (2-D real matrix) with '#' metadata lines."""
    out = [f"# {line}" for line in header_lines]
    for row in np.asarray(matrix):
        out.append(",".join(f"{float(v):.9g}" for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")
    return str(path)
