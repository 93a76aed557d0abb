"""Numba kernels for the optical Bloch equations and the z-marching loop.

Everything here works on flat complex arrays; the friendly wrappers live in
``bloch.py`` and ``mbe.py``.  State layout (complex128[9]):

    0: rho_e2g1   1: rho_e2g2   2: rho_e2e1
    3: rho_e1g1   4: rho_e1g2   5: rho_g2g1
    6: rho_g1g1   7: rho_g2g2   8: rho_e2e2

rho_e1e1 is reconstructed from the trace; the remaining coherences follow by
Hermiticity.  Parameter layout (float64[16]):

    0..5:  coherence decays  G_e2g1, G_e2g2, G_e2e1, G_e1g1, G_e1g2, G_g2g1
    6..11: detunings         D_e2g1, D_e2g2, D_e2e1, D_e1g1, D_e1g2, D_g2g1
    12..15: population decays gam_e1g1, gam_e1g2, gam_e2g1, gam_e2g2

Controls are real and non-negative; probes are complex, and the probe Rabi
factors carry the conjugations required for the four population derivatives
to sum to zero exactly (trace conservation).
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def rhs(y, oc1, oc2, p1, p2, pars, dy):
    """Time derivative of the flat Bloch state, written into dy."""
    e1e1 = 1.0 - (y[6].real + y[7].real + y[8].real)

    cy0 = np.conj(y[0])
    cy1 = np.conj(y[1])
    cy2 = np.conj(y[2])
    cy3 = np.conj(y[3])
    cy4 = np.conj(y[4])
    cy5 = np.conj(y[5])
    cp1 = np.conj(p1)
    cp2 = np.conj(p2)

    dy[0] = 1j * (p1 * y[6] + p2 * y[5] - oc1 * y[2] - p1 * y[8]) \
        - (pars[0] + 1j * pars[6]) * y[0]
    dy[1] = 1j * (p2 * y[7] + p1 * cy5 - oc2 * y[2] - p2 * y[8]) \
        - (pars[1] + 1j * pars[7]) * y[1]
    dy[2] = 1j * (p1 * cy3 + p2 * cy4 - oc1 * y[0] - oc2 * y[1]) \
        - (pars[2] + 1j * pars[8]) * y[2]
    dy[3] = 1j * (oc1 * y[6] + oc2 * y[5] - oc1 * e1e1 - p1 * cy2) \
        - (pars[3] + 1j * pars[9]) * y[3]
    dy[4] = 1j * (oc2 * y[7] + oc1 * cy5 - oc2 * e1e1 - p2 * cy2) \
        - (pars[4] + 1j * pars[10]) * y[4]
    dy[5] = 1j * (oc2 * y[3] + cp2 * y[0] - oc1 * cy4 - p1 * cy1) \
        - (pars[5] + 1j * pars[11]) * y[5]
    dy[6] = 1j * (oc1 * (y[3] - cy3) + cp1 * y[0] - p1 * cy0) \
        + pars[12] * e1e1 + pars[14] * y[8]
    dy[7] = 1j * (oc2 * (y[4] - cy4) + cp2 * y[1] - p2 * cy1) \
        + pars[13] * e1e1 + pars[15] * y[8]
    dy[8] = 1j * (p1 * cy0 - cp1 * y[0] + p2 * cy1 - cp2 * y[1]) \
        - (pars[14] + pars[15]) * y[8]


@njit(cache=True, nogil=True)
def _midpoints(p, m):
    """Fourth-order midpoint interpolation of node samples p into m."""
    n = p.shape[0]
    if n == 2:
        m[0] = 0.5 * (p[0] + p[1])
        return
    m[0] = 0.375 * p[0] + 0.75 * p[1] - 0.125 * p[2]
    for i in range(1, n - 2):
        m[i] = (-p[i - 1] + 9.0 * p[i] + 9.0 * p[i + 1] - p[i + 2]) / 16.0
    m[n - 2] = -0.125 * p[n - 3] + 0.75 * p[n - 2] + 0.375 * p[n - 1]


@njit(cache=True, nogil=True)
def integrate_sampled(y, oc1, oc2, p1, p2, dt, pars, traj, r1, r2):
    """RK4 across the node grid with probe samples p1, p2 at the nodes.

    Midpoint probe values are interpolated with a 4th-order stencil.  The
    full state is stored in traj (nt, 9) when traj is non-empty; the two
    probe coherences are always written to r1, r2 (nt,).
    """
    nt = p1.shape[0]
    m1 = np.empty(nt - 1, np.complex128)
    m2 = np.empty(nt - 1, np.complex128)
    _midpoints(p1, m1)
    _midpoints(p2, m2)

    k1 = np.empty(9, np.complex128)
    k2 = np.empty(9, np.complex128)
    k3 = np.empty(9, np.complex128)
    k4 = np.empty(9, np.complex128)
    yt = np.empty(9, np.complex128)

    keep = traj.shape[0] == nt
    if keep:
        for q in range(9):
            traj[0, q] = y[q]
    r1[0] = y[0]
    r2[0] = y[1]

    for i in range(nt - 1):
        rhs(y, oc1, oc2, p1[i], p2[i], pars, k1)
        for q in range(9):
            yt[q] = y[q] + 0.5 * dt * k1[q]
        rhs(yt, oc1, oc2, m1[i], m2[i], pars, k2)
        for q in range(9):
            yt[q] = y[q] + 0.5 * dt * k2[q]
        rhs(yt, oc1, oc2, m1[i], m2[i], pars, k3)
        for q in range(9):
            yt[q] = y[q] + dt * k3[q]
        rhs(yt, oc1, oc2, p1[i + 1], p2[i + 1], pars, k4)
        for q in range(9):
            y[q] = y[q] + (dt / 6.0) * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q])
        if keep:
            for q in range(9):
                traj[i + 1, q] = y[q]
        r1[i + 1] = y[0]
        r2[i + 1] = y[1]


@njit(cache=True, nogil=True)
def march(op1, op2, theta_z, oc1_z, oc2_z, dz, dt, pars, coup):
    """Heun (predictor-corrector) z-march of the two probe records.

    op1, op2 have shape (nz+1, nt); row 0 holds the entrance pulse, the
    remaining rows are filled in place.  At every slab the atomic response
    is obtained by integrating the Bloch equations over the whole time
    window starting from the local dark state.  Returns (-1, -1) on
    success, or the (z-index, t-index) of the first non-finite value.
    """
    nz1, nt = op1.shape
    empty = np.empty((0, 9), np.complex128)
    y = np.empty(9, np.complex128)
    r1a = np.empty(nt, np.complex128)
    r2a = np.empty(nt, np.complex128)
    r1b = np.empty(nt, np.complex128)
    r2b = np.empty(nt, np.complex128)
    p1s = np.empty(nt, np.complex128)
    p2s = np.empty(nt, np.complex128)

    for k in range(nz1 - 1):
        _cpt_init(theta_z[k], y)
        integrate_sampled(y, oc1_z[k], oc2_z[k], op1[k], op2[k], dt, pars,
                          empty, r1a, r2a)
        for j in range(nt):
            p1s[j] = op1[k, j] + dz * coup * r1a[j]
            p2s[j] = op2[k, j] + dz * coup * r2a[j]
        _cpt_init(theta_z[k + 1], y)
        integrate_sampled(y, oc1_z[k + 1], oc2_z[k + 1], p1s, p2s, dt, pars,
                          empty, r1b, r2b)
        half = 0.5 * dz
        for j in range(nt):
            op1[k + 1, j] = op1[k, j] + half * coup * (r1a[j] + r1b[j])
            op2[k + 1, j] = op2[k, j] + half * coup * (r2a[j] + r2b[j])
        for j in range(nt):
            v1 = op1[k + 1, j]
            v2 = op2[k + 1, j]
            if not (np.isfinite(v1.real) and np.isfinite(v1.imag)
                    and np.isfinite(v2.real) and np.isfinite(v2.imag)):
                return k + 1, j
    return -1, -1


@njit(cache=True, nogil=True)
def _cpt_init(theta, y):
    """Write the dark-state projector for mixing angle theta into y."""
    s = np.sin(theta)
    c = np.cos(theta)
    for q in range(9):
        y[q] = 0.0 + 0.0j
    y[5] = -s * c + 0.0j   # rho_g2g1
    y[6] = c * c + 0.0j    # rho_g1g1
    y[7] = s * s + 0.0j    # rho_g2g2
