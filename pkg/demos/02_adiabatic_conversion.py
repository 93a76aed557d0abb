# Adiabatic conversion: a sigmoid control handoff rotates the dark direction
# from channel 1 to channel 2, dragging the probe along with it.  The plot
# shows the control envelopes, the mixing angle, and both intensity curves;
# the printed numbers expose the gap between the adiabatic closed form and
# the full space-time run (the integrated non-adiabatic leakage).

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import cptvortex as cv
from cptvortex.profiles import theta_array

medium = cv.MediumParams()
profile = cv.ControlProfile.sigmoid()  # omega_c = 1, z0 = 20, z_bar = 2

res = cv.simulate(medium, profile, cv.InputPulse(), store_full=False)
z, i1, i2 = cv.intensity_profile(res)
ana = cv.analytic_reference(res)
ia = ana.intensities(normalized=True)

oc1, oc2 = profile.evaluate(z)
theta = theta_array(profile, z)

fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)

# top: what the controls do
ax0.plot(z, oc1, label="control 1")
ax0.plot(z, oc2, label="control 2")
ax0.plot(z, theta / (np.pi / 2), "g:", label="theta / (pi/2)")
ax0.set_ylabel("control amplitude (Gamma)")
ax0.set_title("sigmoid handoff, z0 = 20, z_bar = 2")
ax0.legend(loc="center right")

# bottom: what the probes do
ax1.plot(z, i1, label="probe 1 (numeric)")
ax1.plot(z, i2, label="probe 2 (numeric)")
ax1.plot(z, ia[:, 0], "k--", lw=1, label="adiabatic closed form")
ax1.plot(z, ia[:, 1], "k--", lw=1)
ax1.set_xlabel("z (absorption lengths)")
ax1.set_ylabel("normalized intensity")
ax1.legend(loc="center right")
fig.tight_layout()

out = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(out, exist_ok=True)
fig.savefig(os.path.join(out, "02_adiabatic_conversion.png"), dpi=150)

eff_num = cv.energy_conversion(res)
eff_ana = cv.conversion_efficiency(ana)
rep = cv.adiabaticity_report(profile, medium)
print(f"numeric conversion into probe 2:  {eff_num:.4f}")
print(f"adiabatic closed-form prediction: {eff_ana:.4f}")
print(f"adiabaticity margin |beta| / max 2|theta'|: {rep.margin:.2f}")
# int theta'^2 dz = 1/(4 z_bar) = 0.125 for this profile, |beta| = 0.5
print("the shortfall is the accumulated non-adiabatic leakage"
      f" ~ exp(-2 int theta'^2 dz / |beta|) = {np.exp(-2 * 0.125 / 0.5):.4f}")
