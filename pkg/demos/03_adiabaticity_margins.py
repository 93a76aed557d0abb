# How sharp can the control handoff be?  The adiabaticity margin
# |beta| / max(2|theta'|) predicts it: profiles with margin > 1 convert well,
# profiles below 1 dump the probe into the absorbing bright channel.

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import cptvortex as cv
from cptvortex.sweep import SweepSpec, run_sweep

medium = cv.MediumParams()
z_bars = (0.2, 0.5, 1.0, 2.0, 4.0)

margins = []
for zb in z_bars:
    rep = cv.adiabaticity_report(cv.ControlProfile.sigmoid(z_bar=zb), medium)
    margins.append(rep.margin)
    print(f"z_bar = {zb:>3}: lhs_max = {rep.lhs_max:.4f}, margin = {rep.margin:.3f}")

# sweep the numeric conversion over the same widths (two worker threads)
spec = SweepSpec(param="profile.z_bar", values=z_bars, reduction="efficiency")
sweep = run_sweep({"profile.kind": "sigmoid"}, spec, jobs=2)
amps = [row["metric"] for row in sweep.rows]

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(margins, [a**2 for a in amps], "o-", label="numeric intensity conversion")
ax.axvline(1.0, color="red", ls="--", lw=1, label="margin = 1")
ax.set_xscale("log")
ax.set_xlabel("adiabaticity margin |beta| / max 2|theta'|")
ax.set_ylabel("conversion |Omega_p2(L)|^2 / |Omega|^2")
ax.set_title("conversion vs adiabaticity margin (sigmoid handoff)")
for zb, m, a in zip(z_bars, margins, amps):
    ax.annotate(f"z_bar={zb}", (m, a**2), textcoords="offset points",
                xytext=(5, 5), fontsize=8)
ax.legend()
fig.tight_layout()

out = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(out, exist_ok=True)
fig.savefig(os.path.join(out, "03_adiabaticity_margins.png"), dpi=150)
print("saved", os.path.join(out, "03_adiabaticity_margins.png"))
