"""Spatial control-field profiles Omega_c1(z), Omega_c2(z).

Four kinds are supported:

``constant``
    Fixed pair, mixing angle independent of z.
``sigmoid``
    Complementary sigmoids of total constant power,
    ``Omega_c1 = Omega_c * sqrt(1 / (1 + exp((z - z0)/z_bar)))`` and
    ``Omega_c2`` the mirror image, so ``Omega_c1^2 + Omega_c2^2 = Omega_c^2``
    exactly.  The mixing angle rotates from pi/2 at the entrance to 0 at the
    exit with ``tan(theta) = exp(-(z - z0)/(2 z_bar))``.
``gaussian``
    Counter-peaked Gaussians, ``Omega_c1 = Omega_c * exp(-z^2/sigma^2)`` and
    ``Omega_c2 = Omega_c * exp(-(z - L)^2/sigma^2)``;
    ``tan(theta) = exp((L^2 - 2 L z)/sigma^2)``.
``tabulated``
    Sampled amplitudes interpolated with a monotone cubic (PCHIP), which
    cannot overshoot and therefore keeps interpolated amplitudes
    non-negative.

All profiles are defined on z in [0, length]; evaluating outside raises a
validation error.  z is measured in the same (absorption-length) units as
everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from .core import MediumParams, MixingAngle, beta
from .errors import ValidationError

_KINDS = ("constant", "sigmoid", "gaussian", "tabulated")


@dataclass(frozen=True)
class ControlProfile:
    """A control-pair profile of one of the supported kinds.

    Use the classmethod constructors rather than filling fields by hand;
    they validate the kind-specific parameters.
    """

    kind: str
    length: float
    omega_c: float = 1.0
    # constant
    oc1: float = 0.0
    oc2: float = 0.0
    # sigmoid
    z0: float = 0.0
    z_bar: float = 0.0
    # gaussian
    sigma: float = 0.0
    # tabulated (interpolators are built once in the constructor)
    _interp: tuple = field(default=(), repr=False, compare=False)

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, oc1: float, oc2: float, length: float = 40.0) -> "ControlProfile":
        if oc1 < 0 or oc2 < 0:
            raise ValidationError("control amplitudes must be non-negative")
        if oc1 == 0.0 and oc2 == 0.0:
            raise ValidationError("constant profile needs at least one nonzero control")
        _check_length(length)
        return cls(kind="constant", length=length,
                   omega_c=math.hypot(oc1, oc2), oc1=oc1, oc2=oc2)

    @classmethod
    def sigmoid(cls, omega_c: float = 1.0, z0: float = 20.0, z_bar: float = 2.0,
                length: float = 40.0) -> "ControlProfile":
        _check_positive("omega_c", omega_c)
        _check_positive("z_bar", z_bar)
        _check_length(length)
        return cls(kind="sigmoid", length=length, omega_c=omega_c, z0=z0, z_bar=z_bar)

    @classmethod
    def gaussian(cls, omega_c: float = 1.0, sigma: float = 16.0,
                 length: float = 40.0) -> "ControlProfile":
        """Counter-peaked Gaussian pair.

        For the conversion to be adiabatic the width has to satisfy roughly
        sigma > 2 L / sqrt(alpha); the margin reported by
        ``adiabaticity_report`` makes that quantitative.
        """
        _check_positive("omega_c", omega_c)
        _check_positive("sigma", sigma)
        _check_length(length)
        return cls(kind="gaussian", length=length, omega_c=omega_c, sigma=sigma)

    @classmethod
    def tabulated(cls, z, oc1, oc2, length: Optional[float] = None) -> "ControlProfile":
        z = np.asarray(z, dtype=float)
        oc1 = np.asarray(oc1, dtype=float)
        oc2 = np.asarray(oc2, dtype=float)
        if z.ndim != 1 or z.size < 2:
            raise ValidationError("tabulated profile needs at least two samples")
        if oc1.shape != z.shape or oc2.shape != z.shape:
            raise ValidationError("tabulated columns must have matching lengths")
        if not np.all(np.isfinite(z)) or not np.all(np.isfinite(oc1)) or not np.all(np.isfinite(oc2)):
            raise ValidationError("tabulated data must be finite")
        if np.any(np.diff(z) <= 0):
            raise ValidationError("tabulated z samples must be strictly increasing")
        if np.any(oc1 < 0) or np.any(oc2 < 0):
            raise ValidationError("tabulated control amplitudes must be non-negative")
        if z[0] > 1e-9:
            raise ValidationError("tabulated profile must start at z = 0")
        if length is None:
            length = float(z[-1])
        elif length > z[-1] + 1e-9:
            raise ValidationError("tabulated data does not cover the requested length")
        interp = (PchipInterpolator(z, oc1), PchipInterpolator(z, oc2))
        return cls(kind="tabulated", length=float(length),
                   omega_c=float(np.max(np.hypot(oc1, oc2))), _interp=interp)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, z):
        """Control pair (Omega_c1, Omega_c2) at position(s) z in [0, length]."""
        z = self._check_domain(z)
        if self.kind == "constant":
            shape = np.shape(z)
            return (np.full(shape, self.oc1) if shape else self.oc1,
                    np.full(shape, self.oc2) if shape else self.oc2)
        if self.kind == "sigmoid":
            # 1/(1+e^x) written via tanh so huge |x| cannot overflow
            x = (z - self.z0) / self.z_bar
            s = 0.5 * (1.0 - np.tanh(0.5 * x))
            return self.omega_c * np.sqrt(s), self.omega_c * np.sqrt(1.0 - s)
        if self.kind == "gaussian":
            L = self.length
            return (self.omega_c * np.exp(-z**2 / self.sigma**2),
                    self.omega_c * np.exp(-((z - L) ** 2) / self.sigma**2))
        f1, f2 = self._interp
        oc1 = np.clip(f1(z), 0.0, None)
        oc2 = np.clip(f2(z), 0.0, None)
        return oc1, oc2

    def _check_domain(self, z):
        z = np.asarray(z, dtype=float)
        tol = 1e-9 * max(1.0, self.length)
        if np.any(z < -tol) or np.any(z > self.length + tol):
            raise ValidationError(
                f"z outside the profile domain [0, {self.length}]"
            )
        out = np.clip(z, 0.0, self.length)
        return out if out.shape else float(out)


def _check_positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise ValidationError(f"{name} must be positive and finite, got {value}")


def _check_length(length):
    _check_positive("length", length)


# ---------------------------------------------------------------------------
# mixing angle along the medium
# ---------------------------------------------------------------------------

def theta_of_z(profile: ControlProfile, z) -> MixingAngle:
    """Mixing angle at a single position z (see ``theta_array`` for grids)."""
    th = theta_array(profile, z)
    return MixingAngle(float(th), provenance="from-profile-at-z")


def theta_array(profile: ControlProfile, z):
    """theta(z) = atan2(Omega_c1, Omega_c2), vectorized over z.

    For the analytic profile kinds the angle is evaluated from the
    closed-form tangent, which stays accurate even where both amplitudes
    underflow.
    """
    z = profile._check_domain(z)
    with np.errstate(over="ignore"):
        if profile.kind == "sigmoid":
            # tan(theta) = exp(-(z - z0)/(2 z_bar))
            t = np.exp(-(np.asarray(z) - profile.z0) / (2.0 * profile.z_bar))
            out = np.arctan(t)
        elif profile.kind == "gaussian":
            L = profile.length
            u = (L * L - 2.0 * L * np.asarray(z)) / profile.sigma**2
            out = np.arctan(np.exp(u))
        else:
            oc1, oc2 = profile.evaluate(z)
            out = np.arctan2(oc1, oc2)
    return out if np.shape(z) else float(out)


def theta_prime(profile: ControlProfile, z):
    """Spatial derivative d(theta)/dz, vectorized over z.

    Closed forms for the analytic kinds:

    * constant: 0
    * sigmoid:  -1 / (4 z_bar cosh((z - z0)/(2 z_bar))), so the steepest
      point z = z0 gives |theta'| = 1/(4 z_bar)
    * gaussian: -(L/sigma^2) sech(L (L - 2 z)/sigma^2), peaking at z = L/2
      with |theta'| = L/sigma^2

    Tabulated profiles fall back to central finite differences of
    ``theta_array`` (one-sided at the domain ends).
    """
    z = profile._check_domain(z)
    if profile.kind == "constant":
        out = np.zeros(np.shape(z))
        return out if np.shape(z) else 0.0
    with np.errstate(over="ignore"):
        if profile.kind == "sigmoid":
            x = (np.asarray(z) - profile.z0) / (2.0 * profile.z_bar)
            out = -1.0 / (4.0 * profile.z_bar * np.cosh(x))
        elif profile.kind == "gaussian":
            L = profile.length
            u = (L * L - 2.0 * L * np.asarray(z)) / profile.sigma**2
            out = -(L / profile.sigma**2) / np.cosh(u)
        else:
            h = 1e-5 * max(1.0, profile.length)
            za = np.asarray(z, dtype=float)
            lo = np.clip(za - h, 0.0, profile.length)
            hi = np.clip(za + h, 0.0, profile.length)
            out = (theta_array(profile, hi) - theta_array(profile, lo)) / (hi - lo)
    return out if np.shape(z) else float(out)


# ---------------------------------------------------------------------------
# adiabaticity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdiabaticityReport:
    """Result of scanning the adiabaticity condition along the medium.

    ``lhs_max`` holds the maximum of 2|theta'(z)| — the conservative
    (factor-of-two) bound on the nonadiabatic coupling that the figure-eight
    conversion analysis compares against |beta|.  ``margin`` = rhs/lhs_max;
    values above 1 mean the rotation is slow enough for the dark field to
    follow, and the margin is unbounded (inf) for constant profiles.
    """

    lhs_max: float
    rhs: float
    margin: float
    worst_z: float
    z_scan: np.ndarray = field(repr=False, compare=False, default=None)
    lhs_scan: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def adiabatic(self) -> bool:
        return self.margin > 1.0


def adiabaticity_report(profile: ControlProfile, params: MediumParams,
                        n_scan: int = 2048) -> AdiabaticityReport:
    """Scan 2|theta'(z)| against |beta| over z in [0, length].

    The scan uses ``n_scan`` uniform points (default 2048) and then sharpens
    the maximum once with a parabolic-vertex evaluation through the three
    points around the scan argmax, so the reported ``lhs_max`` is accurate
    to far better than the grid spacing.  ``worst_z`` is the refined argmax.
    """
    if n_scan < 8:
        raise ValidationError(f"n_scan must be at least 8, got {n_scan}")
    z = np.linspace(0.0, profile.length, n_scan)
    lhs = 2.0 * np.abs(theta_prime(profile, z))
    rhs = abs(beta(params))

    i = int(np.argmax(lhs))
    lhs_max = float(lhs[i])
    worst_z = float(z[i])
    if 0 < i < n_scan - 1:
        # parabola through (z[i-1], z[i], z[i+1]); vertex is exact for a
        # smooth peak and deterministic
        y0, y1, y2 = lhs[i - 1], lhs[i], lhs[i + 1]
        denom = y0 - 2.0 * y1 + y2
        if denom != 0.0:
            dz = z[1] - z[0]
            zv = z[i] + 0.5 * dz * (y0 - y2) / denom
            zv = min(max(zv, 0.0), profile.length)
            lv = 2.0 * abs(theta_prime(profile, zv))
            if lv > lhs_max:
                lhs_max, worst_z = float(lv), float(zv)

    margin = math.inf if lhs_max == 0.0 else rhs / lhs_max
    return AdiabaticityReport(lhs_max=lhs_max, rhs=rhs, margin=margin,
                              worst_z=worst_z, z_scan=z, lhs_scan=lhs)


# ---------------------------------------------------------------------------
# file loading
# ---------------------------------------------------------------------------

def load_tabulated(path, omega_c: Optional[float] = None,
                   length: Optional[float] = None) -> ControlProfile:
    """Read a tabulated profile from a text file.

    The file holds two or three whitespace-separated columns ('#' starts a
    comment): ``z  Omega_c1  Omega_c2``, or just ``z  Omega_c1`` — in the
    two-column form ``omega_c`` must be given and the second control is
    completed as sqrt(omega_c^2 - Omega_c1^2), i.e. the pair is assumed to
    share a constant total power like the sigmoid profile.
    """
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.shape[1] == 3:
        z, oc1, oc2 = data.T
    elif data.shape[1] == 2:
        if omega_c is None:
            raise ValidationError(
                "two-column tabulated data needs an explicit omega_c to "
                "complete the second control"
            )
        z, oc1 = data.T
        if np.any(oc1 > omega_c * (1 + 1e-12)):
            raise ValidationError("tabulated Omega_c1 exceeds the stated omega_c")
        oc2 = np.sqrt(np.clip(omega_c**2 - oc1**2, 0.0, None))
    else:
        raise ValidationError(
            f"tabulated file must have 2 or 3 columns, got {data.shape[1]}"
        )
    return ControlProfile.tabulated(z, oc1, oc2, length=length)
