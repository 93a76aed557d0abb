"""Core quantities of the driven double-Lambda medium.

Level scheme: two ground states ``g1``, ``g2`` and two excited states ``e1``,
``e2``.  A pair of strong control fields couples ``g1 <-> e1`` (Rabi frequency
``Omega_c1``) and ``g2 <-> e1`` (``Omega_c2``); a pair of weak probes couples
``g1 <-> e2`` (``Omega_p1``) and ``g2 <-> e2`` (``Omega_p2``).

Everything here is dimensionless:

* lengths are measured in absorption lengths ``L_abs = L / alpha`` (``alpha``
  is the resonant optical depth of a medium of physical length ``L``),
* times in units of ``1 / Gamma`` (``Gamma`` is the optical coherence decay
  rate, which also sets the Rabi-frequency unit),
* detuning ``delta`` in units of ``Gamma``.

The control mixing angle is ``theta = atan2(Omega_c1, Omega_c2)``, i.e.
``sin(theta) = Omega_c1 / Omega_c`` and ``cos(theta) = Omega_c2 / Omega_c``
with ``Omega_c`` the total control amplitude.  The atomic dark state is then
``cos(theta)|g1> - sin(theta)|g2>``: it carries no excitation because the two
control pathways to ``e1`` interfere destructively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateProfileError, ValidationError

# Basis ordering used for every 4x4 density matrix in the package.
BASIS = ("g1", "g2", "e1", "e2")
_IDX = {name: i for i, name in enumerate(BASIS)}


# ---------------------------------------------------------------------------
# parameter containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MediumParams:
    """Cold-cloud parameters in dimensionless units.

    Parameters
    ----------
    alpha : float
        Resonant optical depth of the full medium (dimensionless).
    length : float
        Medium length in units of L_abs.  With the default ``alpha = 40``,
        ``length = 40`` the absorption length is exactly 1.
    gamma : float
        Optical coherence decay rate; sets the unit of time and of Rabi
        frequencies.  Kept explicit so formulas read like the physics.
    delta : float
        Two-photon-preserving carrier detuning of both probes from the
        ``e2`` resonances, in units of gamma.
    """

    alpha: float = 40.0
    length: float = 40.0
    gamma: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValidationError(f"alpha must be positive and finite, got {self.alpha}")
        if not (self.length > 0 and math.isfinite(self.length)):
            raise ValidationError(f"length must be positive and finite, got {self.length}")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValidationError(f"gamma must be positive and finite, got {self.gamma}")
        if not math.isfinite(self.delta):
            raise ValidationError(f"delta must be finite, got {self.delta}")

    @property
    def l_abs(self) -> float:
        """Absorption length in the same units as ``length``."""
        return self.length / self.alpha


@dataclass(frozen=True)
class MixingAngle:
    """Control mixing angle theta with a note about where it came from."""

    theta: float
    provenance: str = "constant"  # or "from-profile-at-z"

    @property
    def sin(self) -> float:
        return math.sin(self.theta)

    @property
    def cos(self) -> float:
        return math.cos(self.theta)


@dataclass(frozen=True)
class RabiPair:
    """Complex probe amplitudes (Omega_p1, Omega_p2), in units of Gamma."""

    p1: complex
    p2: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.p1, self.p2], dtype=complex)

    @staticmethod
    def from_array(a) -> "RabiPair":
        a = np.asarray(a, dtype=complex)
        if a.shape != (2,):
            raise ValidationError(f"RabiPair.from_array expects shape (2,), got {a.shape}")
        return RabiPair(complex(a[0]), complex(a[1]))

    @property
    def intensity(self) -> float:
        """|Omega_p1|^2 + |Omega_p2|^2."""
        return abs(self.p1) ** 2 + abs(self.p2) ** 2


@dataclass
class DensityMatrix:
    """A 4x4 density matrix over the basis (g1, g2, e1, e2)."""

    rho: np.ndarray = field(default_factory=lambda: np.zeros((4, 4), dtype=complex))

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=complex)
        if self.rho.shape != (4, 4):
            raise ValidationError(f"density matrix must be 4x4, got shape {self.rho.shape}")

    def __getitem__(self, key):
        a, b = key
        return self.rho[_IDX[a], _IDX[b]]

    def __setitem__(self, key, value):
        a, b = key
        self.rho[_IDX[a], _IDX[b]] = value

    def trace(self) -> complex:
        return complex(np.trace(self.rho))

    def hermiticity_defect(self) -> float:
        """Largest |rho_ab - conj(rho_ba)|; zero for a physical state."""
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    def copy(self) -> "DensityMatrix":
        return DensityMatrix(self.rho.copy())


# ---------------------------------------------------------------------------
# elementary constructions
# ---------------------------------------------------------------------------

def mixing_angle(omega_c1: float, omega_c2: float) -> MixingAngle:
    """Mixing angle of a control pair, theta = atan2(Omega_c1, Omega_c2).

    Both amplitudes must be real and non-negative (a global phase on each
    control can always be absorbed into the state definitions), so theta
    lands in [0, pi/2].

    Examples
    --------
    >>> mixing_angle(1.0, 1.0).theta        # doctest: +ELLIPSIS
    0.785398...
    >>> mixing_angle(3.0, 4.0).theta        # doctest: +ELLIPSIS
    0.643501...
    """
    for name, val in (("omega_c1", omega_c1), ("omega_c2", omega_c2)):
        if isinstance(val, complex):
            raise ValidationError(f"{name} must be real, got complex {val}")
        if not math.isfinite(val):
            raise ValidationError(f"{name} must be finite, got {val}")
        if val < 0:
            raise ValidationError(f"{name} must be non-negative, got {val}")
    if omega_c1 == 0.0 and omega_c2 == 0.0:
        raise DegenerateProfileError(
            "both control amplitudes are zero; the mixing angle is undefined"
        )
    return MixingAngle(math.atan2(omega_c1, omega_c2))


def dark_state(theta: float) -> np.ndarray:
    """Ground-space dark superposition (cos(theta), -sin(theta)) over (g1, g2).

    The controls drive the orthogonal combination; this one is invisible to
    them, which is what makes coherent population trapping possible.
    """
    return np.array([math.cos(theta), -math.sin(theta)], dtype=float)


def cpt_state_matrix(theta: float) -> DensityMatrix:
    """Density matrix of the pure CPT (dark) state for mixing angle theta.

    The excited manifold is empty; the ground block is the projector onto
    ``dark_state(theta)``:

        rho_g1g1 = cos^2(theta),  rho_g2g2 = sin^2(theta),
        rho_g2g1 = -sin(theta) cos(theta).

    >>> m = cpt_state_matrix(math.pi / 6)
    >>> round(m["g1", "g1"].real, 12), round(m["g2", "g2"].real, 12)
    (0.75, 0.25)
    """
    d = dark_state(theta)
    out = DensityMatrix()
    out.rho[:2, :2] = np.outer(d, d)  # real symmetric ground block
    return out


def beta(params: MediumParams) -> complex:
    """Complex propagation constant of the bright probe combination.

    beta = alpha * gamma / (2 * length * (i*gamma - delta)), in units of
    inverse length (same length unit as ``params.length``).  On resonance
    (delta = 0) this is -i/(2 L_abs): pure absorption with the textbook
    amplitude decay length 2 L_abs.  Detuning rotates a dispersive part in.

    >>> beta(MediumParams(alpha=40, length=40, delta=0.0))
    -0.5j
    >>> beta(MediumParams(alpha=40, length=40, delta=1.0))
    (-0.25-0.25j)
    """
    g = params.gamma
    return params.alpha * g / (2.0 * params.length * (1j * g - params.delta))
