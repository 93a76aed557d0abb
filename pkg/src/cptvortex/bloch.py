"""Optical Bloch equations for the four-level double-Lambda atom.

Nine density-matrix entries are evolved explicitly::

    rho_e2g1, rho_e2g2, rho_e2e1, rho_e1g1, rho_e1g2,
    rho_g2g1, rho_g1g1, rho_g2g2, rho_e2e2

rho_e1e1 follows from the unit trace and every remaining coherence from
Hermiticity, so the trace is conserved identically and the reconstruction
cannot drift.  The probe Rabi factors carry the complex conjugations needed
for the population flux to balance exactly (the equations are usually quoted
for real fields; the probes here are complex).

Default decay and detuning table (units of gamma): all four optical
coherence decays equal gamma, the excited-excited coherence decays at
2*gamma, the ground coherence does not decay; each excited state decays into
each ground state at rate gamma; both probes share the carrier detuning
delta and every other detuning vanishes.

Integration is fixed-step RK4 — no adaptive stepping, so runs are exactly
reproducible.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .core import DensityMatrix, MediumParams, cpt_state_matrix
from .errors import DivergenceError, ValidationError

_NAMES = ("e2g1", "e2g2", "e2e1", "e1g1", "e1g2", "g2g1", "g1g1", "g2g2", "e2e2")

# index pairs of each evolved entry in the 4x4 matrix over (g1, g2, e1, e2)
_MAT_POS = ((3, 0), (3, 1), (3, 2), (2, 0), (2, 1), (1, 0), (0, 0), (1, 1), (3, 3))


# ---------------------------------------------------------------------------
# containers
# ---------------------------------------------------------------------------

@dataclass
class BlochState:
    """The nine evolved density-matrix entries (all complex)."""

    e2g1: complex = 0j
    e2g2: complex = 0j
    e2e1: complex = 0j
    e1g1: complex = 0j
    e1g2: complex = 0j
    g2g1: complex = 0j
    g1g1: complex = 0j
    g2g2: complex = 0j
    e2e2: complex = 0j

    @property
    def e1e1(self) -> float:
        """Trace-closure population of e1."""
        return 1.0 - (self.g1g1.real + self.g2g2.real + self.e2e2.real)

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in _NAMES], dtype=complex)

    @classmethod
    def from_array(cls, a) -> "BlochState":
        a = np.asarray(a, dtype=complex)
        if a.shape != (9,):
            raise ValidationError(f"BlochState.from_array expects shape (9,), got {a.shape}")
        return cls(**{n: complex(v) for n, v in zip(_NAMES, a)})

    @classmethod
    def cpt(cls, theta: float) -> "BlochState":
        """Dark-state projector for mixing angle theta (the CPT state)."""
        return cls.from_density_matrix(cpt_state_matrix(theta))

    @classmethod
    def from_density_matrix(cls, dm: DensityMatrix) -> "BlochState":
        vals = [dm.rho[i, j] for (i, j) in _MAT_POS]
        return cls(**{n: complex(v) for n, v in zip(_NAMES, vals)})

    def to_density_matrix(self) -> DensityMatrix:
        """Rebuild the full 4x4 matrix (Hermiticity + trace closure)."""
        rho = np.zeros((4, 4), dtype=complex)
        for n, (i, j) in zip(_NAMES, _MAT_POS):
            rho[i, j] = getattr(self, n)
        rho[2, 2] = self.e1e1
        low = np.tril(rho, -1)
        rho = rho + low.conj().T
        return DensityMatrix(rho)


@dataclass(frozen=True)
class AtomParams:
    """Decay rates and detunings.  None means "use the default table"."""

    gamma: float = 1.0
    delta: float = 0.0
    g_e2g1: Optional[float] = None
    g_e2g2: Optional[float] = None
    g_e2e1: Optional[float] = None
    g_e1g1: Optional[float] = None
    g_e1g2: Optional[float] = None
    g_g2g1: Optional[float] = None
    gam_e1g1: Optional[float] = None
    gam_e1g2: Optional[float] = None
    gam_e2g1: Optional[float] = None
    gam_e2g2: Optional[float] = None

    def __post_init__(self):
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValidationError(f"gamma must be positive and finite, got {self.gamma}")
        if not math.isfinite(self.delta):
            raise ValidationError(f"delta must be finite, got {self.delta}")

    @classmethod
    def from_medium(cls, params: MediumParams) -> "AtomParams":
        return cls(gamma=params.gamma, delta=params.delta)

    def as_flat(self) -> np.ndarray:
        g = self.gamma

        def _or(v, default):
            return default if v is None else v

        return np.array([
            _or(self.g_e2g1, g), _or(self.g_e2g2, g), _or(self.g_e2e1, 2 * g),
            _or(self.g_e1g1, g), _or(self.g_e1g2, g), _or(self.g_g2g1, 0.0),
            self.delta, self.delta, 0.0, 0.0, 0.0, 0.0,
            _or(self.gam_e1g1, g), _or(self.gam_e1g2, g),
            _or(self.gam_e2g1, g), _or(self.gam_e2g2, g),
        ], dtype=float)


@dataclass
class BlochTrajectory:
    """Fixed-step RK4 trajectory: states[i] is the flat state at t[i]."""

    t: np.ndarray
    states: np.ndarray  # (nt, 9) complex

    @property
    def final(self) -> BlochState:
        return BlochState.from_array(self.states[-1])

    def state(self, i: int) -> BlochState:
        return BlochState.from_array(self.states[i])


# ---------------------------------------------------------------------------
# right-hand side
# ---------------------------------------------------------------------------

def bloch_rhs(state: BlochState, controls, probes,
              atom: AtomParams = AtomParams()) -> BlochState:
    """Time derivative of the Bloch state for given field amplitudes."""
    oc1, oc2 = controls
    p1, p2 = probes
    y = state.as_array()
    dy = np.empty(9, dtype=complex)
    _kernels.rhs(y, float(oc1), float(oc2), complex(p1), complex(p2),
                 atom.as_flat(), dy)
    return BlochState.from_array(dy)


def e1e1_rhs(state: BlochState, controls, atom: AtomParams = AtomParams()) -> float:
    """Independently derived d(rho_e1e1)/dt, used to audit trace closure.

    The sum of this and the three evolved population derivatives is zero
    algebraically; the test suite verifies that with random states and
    complex probes.
    """
    oc1, oc2 = controls
    flat = atom.as_flat()
    val = (1j * (oc1 * (np.conj(state.e1g1) - state.e1g1)
                 + oc2 * (np.conj(state.e1g2) - state.e1g2))
           - (flat[12] + flat[13]) * state.e1e1)
    return float(val.real)


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def max_step(atom: AtomParams, omega_c: float) -> float:
    """Largest admissible RK4 step, 0.05 / max(gamma, |delta|, Omega_c)."""
    return 0.05 / max(atom.gamma, abs(atom.delta), abs(omega_c))


def _node_count(duration: float, dt: float) -> int:
    n = duration / dt
    if abs(n - round(n)) > 1e-9:
        raise ValidationError(
            f"duration {duration} is not an integer number of steps of dt {dt}"
        )
    return int(round(n)) + 1


def evolve(state: BlochState, controls, probes, duration: float, dt: float,
           atom: AtomParams = AtomParams(),
           keep_trajectory: bool = True) -> BlochTrajectory:
    """Integrate the Bloch equations for `duration` with fixed step dt.

    ``controls`` is a constant (oc1, oc2) pair.  ``probes`` may be

    * a constant complex pair ``(p1, p2)``,
    * a pair of arrays sampled on the node grid (midpoints are then
      interpolated with a 4th-order stencil), or
    * a callable ``t -> (p1, p2)``, evaluated at the exact RK4 stage times —
      this path has clean 4th-order convergence and is the one the step-size
      property test measures.

    Raises a validation error when dt exceeds 0.05/max(gamma, |delta|,
    Omega_c), and a divergence error (naming the time) if the state ever
    turns non-finite.
    """
    oc1, oc2 = (float(c) for c in controls)
    if oc1 < 0 or oc2 < 0:
        raise ValidationError("control amplitudes must be non-negative")
    if not (dt > 0 and math.isfinite(dt)):
        raise ValidationError(f"dt must be positive and finite, got {dt}")
    if not (duration > 0 and math.isfinite(duration)):
        raise ValidationError(f"duration must be positive, got {duration}")
    cap = max_step(atom, math.hypot(oc1, oc2))
    if dt > cap * (1 + 1e-12):
        raise ValidationError(
            f"dt = {dt} exceeds the stability bound 0.05/max(gamma, |delta|, "
            f"Omega_c) = {cap:.6g}"
        )

    nt = _node_count(duration, dt)
    t = np.linspace(0.0, duration, nt)
    pars = atom.as_flat()

    if callable(probes):
        return _evolve_callable(state, oc1, oc2, probes, t, dt, pars,
                                keep_trajectory)

    p1, p2 = probes
    p1 = np.asarray(p1, dtype=complex)
    p2 = np.asarray(p2, dtype=complex)
    if p1.ndim == 0:
        p1 = np.full(nt, complex(p1))
        p2 = np.full(nt, complex(p2))
    elif p1.shape != (nt,) or p2.shape != (nt,):
        raise ValidationError(
            f"sampled probes must have one value per node ({nt}), got "
            f"{p1.shape} and {p2.shape}"
        )

    y = state.as_array()
    traj = np.empty((nt if keep_trajectory else 0, 9), dtype=complex)
    r1 = np.empty(nt, dtype=complex)
    r2 = np.empty(nt, dtype=complex)
    _kernels.integrate_sampled(y, oc1, oc2, p1, p2, dt, pars, traj, r1, r2)
    out = traj if keep_trajectory else y.reshape(1, 9)
    bad = ~np.isfinite(out)
    if bad.any():
        i = int(np.argwhere(bad.any(axis=1))[0][0])
        t_bad = float(t[i]) if keep_trajectory else duration
        raise DivergenceError(
            f"Bloch integration diverged at t = {t_bad:.6g}", t=t_bad
        )
    return BlochTrajectory(t=t if keep_trajectory else t[-1:], states=out)


def _evolve_callable(state, oc1, oc2, fn: Callable, t, dt, pars, keep):
    y = state.as_array()
    nt = t.size
    traj = np.empty((nt, 9), dtype=complex) if keep else None
    if keep:
        traj[0] = y
    k1 = np.empty(9, complex)
    k2 = np.empty(9, complex)
    k3 = np.empty(9, complex)
    k4 = np.empty(9, complex)
    for i in range(nt - 1):
        ti = t[i]
        pa = fn(ti)
        pm = fn(ti + 0.5 * dt)
        pb = fn(ti + dt)
        _kernels.rhs(y, oc1, oc2, complex(pa[0]), complex(pa[1]), pars, k1)
        _kernels.rhs(y + 0.5 * dt * k1, oc1, oc2, complex(pm[0]), complex(pm[1]), pars, k2)
        _kernels.rhs(y + 0.5 * dt * k2, oc1, oc2, complex(pm[0]), complex(pm[1]), pars, k3)
        _kernels.rhs(y + dt * k3, oc1, oc2, complex(pb[0]), complex(pb[1]), pars, k4)
        y = y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise DivergenceError(
                f"Bloch integration diverged at t = {t[i + 1]:.6g}", t=float(t[i + 1])
            )
        if keep:
            traj[i + 1] = y
    if keep:
        return BlochTrajectory(t=t, states=traj)
    return BlochTrajectory(t=t[-1:], states=y.reshape(1, 9))


# ---------------------------------------------------------------------------
# steady weak-probe response
# ---------------------------------------------------------------------------

def steady_coherences(theta: float, probes, atom: AtomParams = AtomParams()):
    """First-order steady-state probe coherences (rho_e2g1, rho_e2g2).

    With the atom pinned in the dark state the coherences respond only to
    the bright probe combination:

        (rho_e2g1, rho_e2g2) = P(theta) @ (p1, p2) / (delta - i gamma).

    Valid for weak probes; a warning is emitted above 0.1*gamma where the
    ground state starts to be reshuffled appreciably.
    """
    p1, p2 = (complex(p) for p in probes)
    amp = math.hypot(abs(p1), abs(p2))
    if amp > 0.1 * atom.gamma:
        _warnings.warn(
            f"probe amplitude {amp:.3g} exceeds 0.1*gamma; the linear steady-state "
            "expression is unreliable", UserWarning, stacklevel=2,
        )
    s, c = math.sin(theta), math.cos(theta)
    denom = atom.delta - 1j * atom.gamma
    r1 = (c * c * p1 - s * c * p2) / denom
    r2 = (-s * c * p1 + s * s * p2) / denom
    return r1, r2
