"""Shared fixtures: the expensive Maxwell-Bloch runs are computed once per
session and reused by both the unit tests and the acceptance gate."""

from __future__ import annotations

import numpy as np
import pytest

import cptvortex as cv


@pytest.fixture(scope="session")
def jit_warm():
    """Compile the numba kernels once so timed tests measure physics, not JIT."""
    cv.warmup()
    return True


@pytest.fixture(scope="session")
def fig2_run(jit_warm):
    """Constant controls at theta_c = pi/4; also the delta = 0 reference."""
    return cv.simulate(cv.MediumParams(), cv.ControlProfile.constant(1.0, 1.0),
                       cv.InputPulse(), store_full=True)


@pytest.fixture(scope="session")
def fig3_run(jit_warm):
    """Sigmoid control handoff, z0 = 20, z_bar = 2."""
    return cv.simulate(cv.MediumParams(), cv.ControlProfile.sigmoid(),
                       cv.InputPulse(), store_full=True)


@pytest.fixture(scope="session")
def fig4_run(jit_warm):
    """Counter-peaked Gaussian controls, sigma = 16."""
    return cv.simulate(cv.MediumParams(), cv.ControlProfile.gaussian(),
                       cv.InputPulse(), store_full=True)


@pytest.fixture(scope="session")
def sharp_sigmoid_run(jit_warm):
    """Non-adiabatic negative control: sigmoid with z_bar = 0.2."""
    return cv.simulate(cv.MediumParams(), cv.ControlProfile.sigmoid(z_bar=0.2),
                       cv.InputPulse(), store_full=False)


@pytest.fixture(scope="session")
def detuned_run(jit_warm):
    """Constant controls at delta = gamma: the oscillating-decay regime."""
    return cv.simulate(cv.MediumParams(delta=1.0),
                       cv.ControlProfile.constant(1.0, 1.0),
                       cv.InputPulse(), store_full=True)


@pytest.fixture(scope="session")
def dark_run(jit_warm):
    """A pulse injected in the dark combination of a constant profile."""
    return cv.simulate(cv.MediumParams(), cv.ControlProfile.constant(1.0, 1.0),
                       cv.InputPulse(channel="dark"), store_full=True)


@pytest.fixture(scope="session")
def rk4_ratio(jit_warm):
    """Error ratio of the Bloch integrator under dt halving (expect ~16).

    A smooth complex-valued probe drive is integrated at dt and dt/2; both
    are compared against a dt/8 reference, so the reference error is ~4000x
    below the coarse error and does not distort the ratio.
    """
    def drive(t):
        env = 0.02 * np.exp(-((t - 1.0) ** 2) / 0.5)
        return env, 0.3j * env

    state = cv.BlochState.cpt(np.pi / 4)
    atom = cv.AtomParams()

    def final(dt):
        return cv.evolve(state, (1.0, 1.0), drive, duration=2.0, dt=dt,
                         atom=atom, keep_trajectory=False).states[-1]

    ref = final(0.0025)
    err_coarse = np.max(np.abs(final(0.02) - ref))
    err_fine = np.max(np.abs(final(0.01) - ref))
    return err_coarse / err_fine


@pytest.fixture(scope="session")
def trace_drift(jit_warm):
    """Worst trace-closure drift per 1/Gamma of an audited 10-variable run.

    The nine evolved quantities close the trace algebraically, so the test
    integrates the independently derived rho_e1e1 equation alongside them
    and reports how far the audited population drifts from the closure
    value, normalized per unit time.
    """
    atom = cv.AtomParams()
    controls = (0.8, 1.3)

    def probes(t):
        return 0.01 * np.exp(1j * 0.3 * t), 0.008 * np.exp(-((t - 4.0) ** 2) / 4.0)

    dt, duration = 0.01, 10.0
    nt = int(round(duration / dt))
    state = cv.BlochState.cpt(cv.mixing_angle(*controls).theta)
    audited = state.e1e1
    worst = 0.0
    for i in range(nt):
        t = i * dt

        def ext_rhs(s, time):
            ds = cv.bloch_rhs(s, controls, probes(time), atom)
            return ds, cv.e1e1_rhs(s, controls, atom)

        # RK4 on the joint (state, audited e1e1) system
        k1, a1 = ext_rhs(state, t)
        s2 = cv.BlochState.from_array(state.as_array() + 0.5 * dt * k1.as_array())
        k2, a2 = ext_rhs(s2, t + 0.5 * dt)
        s3 = cv.BlochState.from_array(state.as_array() + 0.5 * dt * k2.as_array())
        k3, a3 = ext_rhs(s3, t + 0.5 * dt)
        s4 = cv.BlochState.from_array(state.as_array() + dt * k3.as_array())
        k4, a4 = ext_rhs(s4, t + dt)
        state = cv.BlochState.from_array(
            state.as_array() + (dt / 6.0) * (k1.as_array() + 2 * k2.as_array()
                                             + 2 * k3.as_array() + k4.as_array()))
        audited += (dt / 6.0) * (a1 + 2 * a2 + 2 * a3 + a4)
        worst = max(worst, abs(state.e1e1 - audited))
    return worst / duration
