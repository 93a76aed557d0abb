# Single-atom view: an atom starting in |g1> under constant controls relaxes
# into the coherent-population-trapping state, whose populations are set by
# the mixing angle alone (cos^2 theta in g1, sin^2 theta in g2).

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import cptvortex as cv

controls = (1.0, 1.0)  # theta = pi/4
theta = cv.mixing_angle(*controls).theta

start = cv.BlochState(g1g1=1.0 + 0j)  # everything in g1, no coherences
traj = cv.evolve(start, controls, (0.0, 0.0), duration=40.0, dt=0.02)

g1 = np.array([cv.BlochState.from_array(s).g1g1.real for s in traj.states])
g2 = np.array([cv.BlochState.from_array(s).g2g2.real for s in traj.states])
coh = np.array([abs(cv.BlochState.from_array(s).g2g1) for s in traj.states])

plt.figure(figsize=(7, 4.5))
plt.plot(traj.t, g1, label="rho_g1g1")
plt.plot(traj.t, g2, label="rho_g2g2")
plt.plot(traj.t, coh, label="|rho_g2g1|")
plt.axhline(np.cos(theta) ** 2, color="gray", ls=":", lw=1)
plt.axhline(np.sin(theta) * np.cos(theta), color="gray", ls=":", lw=1)
plt.xlabel("time (1/Gamma)")
plt.ylabel("population / coherence")
plt.title("optical pumping into the dark state, theta = pi/4")
plt.legend()
plt.tight_layout()

out = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(out, exist_ok=True)
plt.savefig(os.path.join(out, "05_bloch_relaxation.png"), dpi=150)

target = cv.BlochState.cpt(theta)
final = cv.BlochState.from_array(traj.states[-1])
dist = np.max(np.abs(final.as_array() - target.as_array()))
print(f"distance to the CPT state after 40/Gamma: {dist:.2e}")
print(f"target populations: g1 {np.cos(theta)**2:.3f}, g2 {np.sin(theta)**2:.3f}")
