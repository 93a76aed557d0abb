"""Control profiles: shapes, derivatives, and the adiabaticity report.

The load-bearing checks:
- theta_prime agrees with central finite differences of theta to 1e-6
  relative error on every profile kind (the closed forms must be the true
  derivatives, not approximations)
- sigmoid: |theta'(z0)| = 1/(4 z_bar); Gaussian: |theta'(L/2)| = L/sigma^2
- the adiabaticity scan reproduces margin 2.0 for the standard sigmoid and
  margin < 1 for the sharp one
"""

from __future__ import annotations

import math

import numpy as np
import pytest

import cptvortex as cv
from cptvortex.errors import DegenerateProfileError, ValidationError
from cptvortex.profiles import theta_array, theta_of_z, theta_prime


def test_constant_profile_evaluate():
    prof = cv.ControlProfile.constant(0.6, 0.8)
    z = np.linspace(0, 40, 11)
    oc1, oc2 = prof.evaluate(z)
    assert np.all(oc1 == 0.6) and np.all(oc2 == 0.8)
    assert theta_of_z(prof, 17.0).theta == pytest.approx(math.atan2(0.6, 0.8))


def test_sigmoid_profile_shape():
    """tan(theta(z)) = exp(-(z - z0)/(2 z_bar)) and |Omega_c| is conserved."""
    prof = cv.ControlProfile.sigmoid(omega_c=1.0, z0=20.0, z_bar=2.0)
    z = np.linspace(0, 40, 401)
    oc1, oc2 = prof.evaluate(z)
    # total control amplitude constant along the medium
    np.testing.assert_allclose(np.hypot(oc1, oc2), 1.0, rtol=1e-12)
    th = theta_array(prof, z)
    np.testing.assert_allclose(np.tan(th), np.exp(-(z - 20.0) / 4.0), rtol=1e-9)
    # handoff midpoint
    assert theta_of_z(prof, 20.0).theta == pytest.approx(math.pi / 4, abs=1e-12)
    # entrance nearly all on control 1 (theta -> pi/2)
    assert theta_of_z(prof, 0.0).theta > 1.56


def test_gaussian_profile_shape():
    prof = cv.ControlProfile.gaussian(omega_c=1.0, sigma=16.0, length=40.0)
    z = np.linspace(0, 40, 401)
    oc1, oc2 = prof.evaluate(z)
    # counter-peaked pair: one Gaussian centered at each end of the medium
    np.testing.assert_allclose(oc1, np.exp(-(z / 16.0) ** 2), rtol=1e-12)
    np.testing.assert_allclose(oc2, np.exp(-((z - 40.0) / 16.0) ** 2), rtol=1e-12)
    th = theta_array(prof, z)
    np.testing.assert_allclose(np.tan(th), np.exp((40.0**2 - 80.0 * z) / 256.0),
                               rtol=1e-9)
    assert theta_of_z(prof, 20.0).theta == pytest.approx(math.pi / 4, abs=1e-12)
    # boundary residual: theta(0) = arctan(e^{L^2/sigma^2}) = arctan(e^6.25)
    assert theta_of_z(prof, 0.0).theta == pytest.approx(
        math.atan(math.exp(6.25)), abs=1e-12)


def test_theta_prime_matches_finite_differences():
    """The documented invariant: closed-form derivative vs central FD, 1e-6."""
    profiles = [
        cv.ControlProfile.sigmoid(),
        cv.ControlProfile.gaussian(),
        cv.ControlProfile.sigmoid(omega_c=2.0, z0=15.0, z_bar=0.7),
    ]
    z = np.linspace(1.0, 39.0, 97)
    h = 1e-5
    for prof in profiles:
        exact = theta_prime(prof, z)
        fd = (theta_array(prof, z + h) - theta_array(prof, z - h)) / (2 * h)
        np.testing.assert_allclose(exact, fd, rtol=1e-6, atol=1e-12)


def test_theta_prime_reference_points():
    prof = cv.ControlProfile.sigmoid(z_bar=2.0, z0=20.0)
    assert abs(theta_prime(prof, 20.0)) == pytest.approx(1.0 / 8.0, rel=1e-12)
    prof = cv.ControlProfile.gaussian(sigma=16.0, length=40.0)
    assert abs(theta_prime(prof, 20.0)) == pytest.approx(40.0 / 256.0, rel=1e-12)
    # constant profile: no rotation anywhere
    prof = cv.ControlProfile.constant(1.0, 1.0)
    assert theta_prime(prof, 13.0) == 0.0


def test_adiabaticity_report_standard_sigmoid():
    rep = cv.adiabaticity_report(cv.ControlProfile.sigmoid(), cv.MediumParams())
    assert rep.lhs_max == pytest.approx(0.25, abs=1e-6)
    assert rep.rhs == pytest.approx(0.5, abs=1e-12)
    assert rep.margin == pytest.approx(2.0, abs=1e-3)
    assert rep.worst_z == pytest.approx(20.0, abs=0.05)
    assert rep.adiabatic


def test_adiabaticity_report_sharp_sigmoid():
    rep = cv.adiabaticity_report(cv.ControlProfile.sigmoid(z_bar=0.2),
                                 cv.MediumParams())
    assert rep.margin == pytest.approx(0.2, abs=1e-3)
    assert not rep.adiabatic


def test_adiabaticity_report_constant_profile():
    rep = cv.adiabaticity_report(cv.ControlProfile.constant(1.0, 2.0),
                                 cv.MediumParams())
    assert rep.lhs_max == 0.0
    assert math.isinf(rep.margin)
    assert rep.adiabatic


def test_adiabaticity_scan_arrays_are_consistent():
    rep = cv.adiabaticity_report(cv.ControlProfile.sigmoid(), cv.MediumParams())
    assert rep.z_scan.shape == rep.lhs_scan.shape
    assert rep.lhs_max >= rep.lhs_scan.max() - 1e-12  # refinement only raises it


def test_tabulated_profile_round_trip():
    """A tabulated copy of the sigmoid must reproduce it closely."""
    src = cv.ControlProfile.sigmoid()
    z = np.linspace(0, 40, 801)
    oc1, oc2 = src.evaluate(z)
    tab = cv.ControlProfile.tabulated(z, oc1, oc2)
    zq = np.linspace(0, 40, 257)
    o1a, o2a = src.evaluate(zq)
    o1b, o2b = tab.evaluate(zq)
    np.testing.assert_allclose(o1b, o1a, atol=1e-5)
    np.testing.assert_allclose(o2b, o2a, atol=1e-5)
    # derivative comes from finite differences but must still track
    zmid = np.linspace(2, 38, 65)
    np.testing.assert_allclose(theta_prime(tab, zmid), theta_prime(src, zmid),
                               atol=5e-5)


def test_tabulated_validation():
    z = np.array([0.0, 1.0, 2.0])
    good = np.array([0.1, 0.2, 0.3])
    with pytest.raises(ValidationError):
        cv.ControlProfile.tabulated(z[::-1], good, good)      # decreasing z
    with pytest.raises(ValidationError):
        cv.ControlProfile.tabulated(z + 1.0, good, good)      # doesn't start at 0
    with pytest.raises(ValidationError):
        cv.ControlProfile.tabulated(z, -good, good)           # negative amplitude
    with pytest.raises(ValidationError):
        cv.ControlProfile.tabulated(z[:1], good[:1], good[:1])  # single sample


def test_load_tabulated_two_column_completion(tmp_path):
    """Two-column files give oc1; oc2 is completed from the total amplitude."""
    z = np.linspace(0.0, 10.0, 41)
    oc1 = np.sqrt(1.0 / (1.0 + np.exp((z - 5.0) / 1.0)))
    path = tmp_path / "profile.dat"
    np.savetxt(path, np.column_stack([z, oc1]))
    prof = cv.load_tabulated(path, omega_c=1.0)
    o1, o2 = prof.evaluate(z)
    np.testing.assert_allclose(o1, oc1, atol=1e-9)
    np.testing.assert_allclose(np.hypot(o1, o2), 1.0, atol=1e-9)

    with pytest.raises(ValidationError):
        cv.load_tabulated(path)  # two columns but no total amplitude given

    # oc1 exceeding the stated total is impossible to complete
    np.savetxt(path, np.column_stack([z, oc1 * 3.0]))
    with pytest.raises(ValidationError):
        cv.load_tabulated(path, omega_c=1.0)


def test_load_tabulated_three_column(tmp_path):
    z = np.linspace(0.0, 8.0, 33)
    oc1 = 0.3 + 0.1 * z / 8.0
    oc2 = 0.9 - 0.2 * z / 8.0
    path = tmp_path / "profile3.dat"
    np.savetxt(path, np.column_stack([z, oc1, oc2]))
    prof = cv.load_tabulated(path)
    o1, o2 = prof.evaluate(z)
    np.testing.assert_allclose(o1, oc1, atol=1e-9)
    np.testing.assert_allclose(o2, oc2, atol=1e-9)


def test_profile_domain_checks():
    prof = cv.ControlProfile.sigmoid()
    with pytest.raises(ValidationError):
        prof.evaluate(40.5)
    with pytest.raises(ValidationError):
        prof.evaluate(-0.5)
    # round-off just outside the ends is tolerated
    prof.evaluate(-1e-12)
    prof.evaluate(40.0 + 1e-12)


def test_degenerate_and_invalid_profiles():
    with pytest.raises(ValidationError):
        cv.ControlProfile.constant(0.0, 0.0)
    # the degenerate case proper (both controls zero at a point) is flagged
    # by the angle itself, with a ValidationError subclass
    with pytest.raises(DegenerateProfileError):
        cv.mixing_angle(0.0, 0.0)
    with pytest.raises(ValidationError):
        cv.ControlProfile.sigmoid(z_bar=0.0)
    with pytest.raises(ValidationError):
        cv.ControlProfile.gaussian(sigma=-1.0)
    with pytest.raises(ValidationError):
        cv.ControlProfile.sigmoid(omega_c=0.0)
