"""Fused numba kernels for the 3D stepper and its per-step diagnostics.

Index conventions (C-order arrays, x3 contiguous):

* cells         rho[i, j, k],          i < n1, j < n2, k < n3
* x1 faces      u1[i, j, k],           i = 0..n1; 0 and n1 are walls
* x2 faces      u2[i, j, k],           j = 0..n2; walls at 0 and n2
* x3 faces      u3[i, j, k],           k = 0..n3-1, periodic; face k sits
                                       between cells (k-1) % n3 and k

Work is decomposed into x3 slabs; every pass writes each output element from
one slab only, so fields are bitwise independent of the slab count, and
reductions accumulate per slab and combine in slab order.

The x3-direction arithmetic deliberately mirrors solver1d expression by
expression, so a run started from cross-section-constant data reproduces the
1D scheme exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


def slab_bounds(n3: int, slab_count: int) -> np.ndarray:
    """Start/end k-indices of each slab, shape (slab_count + 1,)."""
    slab_count = max(1, min(slab_count, n3))
    return np.linspace(0, n3, slab_count + 1).astype(np.int64)


@njit(cache=True, inline="always")
def _pressure_scalar(r, a, gamma):
    if gamma == 2.0:
        return a * (r * r)
    return a * r**gamma


@njit(parallel=True, cache=True)
def stage_rhs(rho, u1, u2, u3, a, gamma, two_mu, inv_c_ref,
              inv1, inv2, inv3, bounds,
              F1, F2, F3, p, C1, C2, C3, S11, S22, S33,
              C12e, C21e, S12, C13e, C31e, S13, C23e, C32e, S23,
              drho, dm1, dm2, dm3):
    """One right-hand-side evaluation; fills drho/dm* from the state arrays.

    Scratch arrays are caller-owned so repeated stages allocate nothing.
    """
    n1, n2, n3 = rho.shape
    nslab = bounds.shape[0] - 1

    # ---- pass A: mass fluxes and pressure
    for s in prange(nslab):
        for i in range(n1):
            for j in range(n2):
                for k in range(bounds[s], bounds[s + 1]):
                    km = k - 1 if k > 0 else n3 - 1
                    p[i, j, k] = _pressure_scalar(rho[i, j, k], a, gamma)
                    F3[i, j, k] = 0.5 * (rho[i, j, km] + rho[i, j, k]) * u3[i, j, k]
                    if i > 0:
                        F1[i, j, k] = 0.5 * (rho[i - 1, j, k] + rho[i, j, k]) * u1[i, j, k]
                    else:
                        F1[0, j, k] = 0.0
                        F1[n1, j, k] = 0.0
                    if j > 0:
                        F2[i, j, k] = 0.5 * (rho[i, j - 1, k] + rho[i, j, k]) * u2[i, j, k]
                    else:
                        F2[i, 0, k] = 0.0
                        F2[i, n2, k] = 0.0

    # ---- pass B: center fluxes, stresses, edge fluxes
    for s in prange(nslab):
        for i in range(n1):
            for j in range(n2):
                for k in range(bounds[s], bounds[s + 1]):
                    km = k - 1 if k > 0 else n3 - 1
                    kp = k + 1 if k < n3 - 1 else 0
                    kpp = kp + 1 if kp < n3 - 1 else 0
                    r = rho[i, j, k]

                    # cell-centered self-advection fluxes and normal stresses
                    C1[i, j, k] = (0.5 * (F1[i, j, k] + F1[i + 1, j, k])
                                   * (0.5 * (u1[i, j, k] + u1[i + 1, j, k])))
                    C2[i, j, k] = (0.5 * (F2[i, j, k] + F2[i, j + 1, k])
                                   * (0.5 * (u2[i, j, k] + u2[i, j + 1, k])))
                    # axial self-advection mirrors the 1D flux, bias included
                    q = u3[i, j, k]
                    q_p = u3[i, j, kp]
                    mean = 0.5 * (q + q_p)
                    slope = 0.5 * (q_p - u3[i, j, km])
                    slope_p = 0.5 * (u3[i, j, kpp] - q)
                    jump = (q_p - 0.5 * slope_p) - (q + 0.5 * slope)
                    bias = min(max(mean * inv_c_ref, -1.0), 1.0)
                    C3[i, j, k] = (0.5 * (F3[i, j, k] + F3[i, j, kp])
                                   * (mean - 0.5 * bias * jump))

                    S11[i, j, k] = two_mu * r * (u1[i + 1, j, k] - u1[i, j, k]) * inv1
                    S22[i, j, k] = two_mu * r * (u2[i, j + 1, k] - u2[i, j, k]) * inv2
                    S33[i, j, k] = two_mu * r * (u3[i, j, kp] - u3[i, j, k]) * inv3

                    # (x1 face, x2 face) edges: advection of u1 along x2, of
                    # u2 along x1, and the shared shear stress; full slip
                    # zeroes all three on wall edges.
                    if i > 0 and j > 0:
                        re = 0.25 * (rho[i - 1, j - 1, k] + rho[i, j - 1, k]
                                     + rho[i - 1, j, k] + rho[i, j, k])
                        d12 = 0.5 * ((u1[i, j, k] - u1[i, j - 1, k]) * inv2
                                     + (u2[i, j, k] - u2[i - 1, j, k]) * inv1)
                        S12[i, j, k] = two_mu * re * d12
                        C12e[i, j, k] = (0.5 * (F2[i - 1, j, k] + F2[i, j, k])
                                         * (0.5 * (u1[i, j - 1, k] + u1[i, j, k])))
                        C21e[i, j, k] = (0.5 * (F1[i, j - 1, k] + F1[i, j, k])
                                         * (0.5 * (u2[i - 1, j, k] + u2[i, j, k])))
                    if i == 0:
                        for jj in range(n2 + 1):
                            S12[0, jj, k] = 0.0
                            S12[n1, jj, k] = 0.0
                            C12e[0, jj, k] = 0.0
                            C12e[n1, jj, k] = 0.0
                            C21e[0, jj, k] = 0.0
                            C21e[n1, jj, k] = 0.0
                    if j == 0:
                        for ii in range(n1 + 1):
                            S12[ii, 0, k] = 0.0
                            S12[ii, n2, k] = 0.0
                            C12e[ii, 0, k] = 0.0
                            C12e[ii, n2, k] = 0.0
                            C21e[ii, 0, k] = 0.0
                            C21e[ii, n2, k] = 0.0

                    # (x1 face, x3 face) edges
                    if i > 0:
                        re = 0.25 * (rho[i - 1, j, km] + rho[i, j, km]
                                     + rho[i - 1, j, k] + rho[i, j, k])
                        d13 = 0.5 * ((u1[i, j, k] - u1[i, j, km]) * inv3
                                     + (u3[i, j, k] - u3[i - 1, j, k]) * inv1)
                        S13[i, j, k] = two_mu * re * d13
                        C13e[i, j, k] = (0.5 * (F3[i - 1, j, k] + F3[i, j, k])
                                         * (0.5 * (u1[i, j, km] + u1[i, j, k])))
                        C31e[i, j, k] = (0.5 * (F1[i, j, km] + F1[i, j, k])
                                         * (0.5 * (u3[i - 1, j, k] + u3[i, j, k])))
                    else:
                        S13[0, j, k] = 0.0
                        S13[n1, j, k] = 0.0
                        C13e[0, j, k] = 0.0
                        C13e[n1, j, k] = 0.0
                        C31e[0, j, k] = 0.0
                        C31e[n1, j, k] = 0.0

                    # (x2 face, x3 face) edges
                    if j > 0:
                        re = 0.25 * (rho[i, j - 1, km] + rho[i, j, km]
                                     + rho[i, j - 1, k] + rho[i, j, k])
                        d23 = 0.5 * ((u2[i, j, k] - u2[i, j, km]) * inv3
                                     + (u3[i, j, k] - u3[i, j - 1, k]) * inv2)
                        S23[i, j, k] = two_mu * re * d23
                        C23e[i, j, k] = (0.5 * (F3[i, j - 1, k] + F3[i, j, k])
                                         * (0.5 * (u2[i, j, km] + u2[i, j, k])))
                        C32e[i, j, k] = (0.5 * (F2[i, j, km] + F2[i, j, k])
                                         * (0.5 * (u3[i, j - 1, k] + u3[i, j, k])))
                    else:
                        S23[i, 0, k] = 0.0
                        S23[i, n2, k] = 0.0
                        C23e[i, 0, k] = 0.0
                        C23e[i, n2, k] = 0.0
                        C32e[i, 0, k] = 0.0
                        C32e[i, n2, k] = 0.0

    # ---- pass C: assemble divergences
    for s in prange(nslab):
        for i in range(n1):
            for j in range(n2):
                for k in range(bounds[s], bounds[s + 1]):
                    km = k - 1 if k > 0 else n3 - 1
                    kp = k + 1 if k < n3 - 1 else 0
                    drho[i, j, k] = -((F1[i + 1, j, k] - F1[i, j, k]) * inv1
                                      + (F2[i, j + 1, k] - F2[i, j, k]) * inv2
                                      + (F3[i, j, kp] - F3[i, j, k]) * inv3)
                    if i > 0:
                        conv = ((C1[i, j, k] - C1[i - 1, j, k]) * inv1
                                + (C12e[i, j + 1, k] - C12e[i, j, k]) * inv2
                                + (C13e[i, j, kp] - C13e[i, j, k]) * inv3)
                        press = (p[i, j, k] - p[i - 1, j, k]) * inv1
                        visc = ((S11[i, j, k] - S11[i - 1, j, k]) * inv1
                                + (S12[i, j + 1, k] - S12[i, j, k]) * inv2
                                + (S13[i, j, kp] - S13[i, j, k]) * inv3)
                        dm1[i, j, k] = -conv - press + visc
                    else:
                        dm1[0, j, k] = 0.0
                        dm1[n1, j, k] = 0.0
                    if j > 0:
                        conv = ((C21e[i + 1, j, k] - C21e[i, j, k]) * inv1
                                + (C2[i, j, k] - C2[i, j - 1, k]) * inv2
                                + (C23e[i, j, kp] - C23e[i, j, k]) * inv3)
                        press = (p[i, j, k] - p[i, j - 1, k]) * inv2
                        visc = ((S12[i + 1, j, k] - S12[i, j, k]) * inv1
                                + (S22[i, j, k] - S22[i, j - 1, k]) * inv2
                                + (S23[i, j, kp] - S23[i, j, k]) * inv3)
                        dm2[i, j, k] = -conv - press + visc
                    else:
                        dm2[i, 0, k] = 0.0
                        dm2[i, n2, k] = 0.0
                    conv = ((C31e[i + 1, j, k] - C31e[i, j, k]) * inv1
                            + (C32e[i, j + 1, k] - C32e[i, j, k]) * inv2
                            + (C3[i, j, k] - C3[i, j, km]) * inv3)
                    press = (p[i, j, k] - p[i, j, km]) * inv3
                    visc = ((S13[i + 1, j, k] - S13[i, j, k]) * inv1
                            + (S23[i, j + 1, k] - S23[i, j, k]) * inv2
                            + (S33[i, j, k] - S33[i, j, km]) * inv3)
                    dm3[i, j, k] = -conv - press + visc


@njit(parallel=True, cache=True)
def add_forcing(drho, dm1, dm2, dm3, g_rho, g_m1, g_m2, g_m3, bounds):
    n1, n2, n3 = drho.shape
    nslab = bounds.shape[0] - 1
    for s in prange(nslab):
        for i in range(n1):
            for j in range(n2):
                for k in range(bounds[s], bounds[s + 1]):
                    drho[i, j, k] = drho[i, j, k] + g_rho[i, j, k]
                    dm3[i, j, k] = dm3[i, j, k] + g_m3[i, j, k]
                    if i > 0:
                        dm1[i, j, k] = dm1[i, j, k] + g_m1[i, j, k]
                    if j > 0:
                        dm2[i, j, k] = dm2[i, j, k] + g_m2[i, j, k]


@njit(parallel=True, cache=True)
def momenta(rho, u1, u2, u3, bounds, m1, m2, m3):
    """Face momenta from (rho, u); wall entries stay zero."""
    n1, n2, n3 = rho.shape
    nslab = bounds.shape[0] - 1
    for s in prange(nslab):
        for i in range(n1):
            for j in range(n2):
                for k in range(bounds[s], bounds[s + 1]):
                    km = k - 1 if k > 0 else n3 - 1
                    m3[i, j, k] = 0.5 * (rho[i, j, km] + rho[i, j, k]) * u3[i, j, k]
                    if i > 0:
                        m1[i, j, k] = 0.5 * (rho[i - 1, j, k] + rho[i, j, k]) * u1[i, j, k]
                    else:
                        m1[0, j, k] = 0.0
                        m1[n1, j, k] = 0.0
                    if j > 0:
                        m2[i, j, k] = 0.5 * (rho[i, j - 1, k] + rho[i, j, k]) * u2[i, j, k]
                    else:
                        m2[i, 0, k] = 0.0
                        m2[i, n2, k] = 0.0


@njit(parallel=True, cache=True)
def apply_update(rho0, m1, m2, m3, drho, dm1, dm2, dm3, dtf, bounds,
                 rho_out, u1_out, u2_out, u3_out):
    """rho_out = rho0 + dtf*drho and velocities from the updated momenta."""
    n1, n2, n3 = rho0.shape
    nslab = bounds.shape[0] - 1
    for s in prange(nslab):
        for i in range(n1):
            for j in range(n2):
                for k in range(bounds[s], bounds[s + 1]):
                    rho_out[i, j, k] = rho0[i, j, k] + dtf * drho[i, j, k]
    for s in prange(nslab):
        for i in range(n1):
            for j in range(n2):
                for k in range(bounds[s], bounds[s + 1]):
                    km = k - 1 if k > 0 else n3 - 1
                    u3_out[i, j, k] = ((m3[i, j, k] + dtf * dm3[i, j, k])
                                       / (0.5 * (rho_out[i, j, km] + rho_out[i, j, k])))
                    if i > 0:
                        u1_out[i, j, k] = ((m1[i, j, k] + dtf * dm1[i, j, k])
                                           / (0.5 * (rho_out[i - 1, j, k] + rho_out[i, j, k])))
                    else:
                        u1_out[0, j, k] = 0.0
                        u1_out[n1, j, k] = 0.0
                    if j > 0:
                        u2_out[i, j, k] = ((m2[i, j, k] + dtf * dm2[i, j, k])
                                           / (0.5 * (rho_out[i, j - 1, k] + rho_out[i, j, k])))
                    else:
                        u2_out[i, 0, k] = 0.0
                        u2_out[i, n2, k] = 0.0


@njit(parallel=True, cache=True)
def state_scalars(rho, u1, u2, u3, a, gamma, mu, kappa, v_coeff, w_coeff,
                  inv1, inv2, inv3, cell_vol, bounds, out):
    """Per-slab diagnostics, combined in slab order.

    out[0] mass, out[1] x3-momentum, out[2] min rho, out[3] max |u|+c,
    out[4] kappa-entropy, out[5] |A|^2 rate, out[6] density-gradient rate,
    out[7] |D|^2 rate, out[8] divergence-term rate (identically zero for the
    linear viscosity law), out[9] max second difference of log rho along x3.

    The entropy quadrature puts each velocity-pair component on its own face
    set with half weights on wall faces (where the pair vanishes anyway).
    """
    n1, n2, n3 = rho.shape
    nslab = bounds.shape[0] - 1
    gm1 = gamma - 1.0
    part = np.zeros((nslab, 10))
    for s in prange(nslab):
        mass = 0.0
        mom3 = 0.0
        rmin = 1e300
        smax = 0.0
        ek = 0.0
        rate_a = 0.0
        rate_g = 0.0
        rate_d = 0.0
        rate_z = 0.0
        d2max = 0.0
        for i in range(n1):
            im = i - 1 if i > 0 else 0          # mirrored neighbors at walls
            ip = i + 1 if i < n1 - 1 else n1 - 1
            for j in range(n2):
                jm = j - 1 if j > 0 else 0
                jp = j + 1 if j < n2 - 1 else n2 - 1
                for k in range(bounds[s], bounds[s + 1]):
                    km = k - 1 if k > 0 else n3 - 1
                    kp = k + 1 if k < n3 - 1 else 0
                    r = rho[i, j, k]
                    if r < rmin:
                        rmin = r
                    mass += r
                    rf3 = 0.5 * (rho[i, j, km] + r)
                    mom3 += rf3 * u3[i, j, k]

                    if gamma == 2.0:
                        c = np.sqrt(a * gamma * rf3)
                        pprime = a * gamma * r
                        eint = a * (r - 1.0)
                    else:
                        c = np.sqrt(a * gamma * rf3**gm1)
                        pprime = a * gamma * r**gm1
                        eint = a * (r**gm1 - 1.0) / gm1
                    sp = abs(u3[i, j, k]) + c
                    if sp > smax:
                        smax = sp

                    # kinetic part of the entropy on the x3 faces + internal
                    g3 = (np.log(r) - np.log(rho[i, j, km])) * inv3
                    v3 = u3[i, j, k] + v_coeff * g3
                    w3 = w_coeff * g3
                    ek += rf3 * (v3 * v3 + w3 * w3) * 0.5 + r * eint

                    d2 = abs((np.log(rho[i, j, kp]) - 2.0 * np.log(r)
                              + np.log(rho[i, j, km])) * inv3 * inv3)
                    if d2 > d2max:
                        d2max = d2

                    # x1/x2 faces: interior only (the pair vanishes on walls)
                    if i > 0:
                        rf1 = 0.5 * (rho[i - 1, j, k] + r)
                        g1 = (np.log(r) - np.log(rho[i - 1, j, k])) * inv1
                        v1 = u1[i, j, k] + v_coeff * g1
                        w1 = w_coeff * g1
                        ek += rf1 * (v1 * v1 + w1 * w1) * 0.5
                        cs = np.sqrt(a * gamma * rf1) if gamma == 2.0 else np.sqrt(a * gamma * rf1**gm1)
                        sp = (abs(u1[i, j, k]) + cs) * (inv1 / inv3)
                        if sp > smax:
                            smax = sp
                    if j > 0:
                        rf2 = 0.5 * (rho[i, j - 1, k] + r)
                        g2 = (np.log(r) - np.log(rho[i, j - 1, k])) * inv2
                        v2 = u2[i, j, k] + v_coeff * g2
                        w2 = w_coeff * g2
                        ek += rf2 * (v2 * v2 + w2 * w2) * 0.5
                        cs = np.sqrt(a * gamma * rf2) if gamma == 2.0 else np.sqrt(a * gamma * rf2**gm1)
                        sp = (abs(u2[i, j, k]) + cs) * (inv2 / inv3)
                        if sp > smax:
                            smax = sp

                    # velocity gradient at the cell center
                    u1c = 0.5 * (u1[i, j, k] + u1[i + 1, j, k])
                    u2c = 0.5 * (u2[i, j, k] + u2[i, j + 1, k])
                    u3c = 0.5 * (u3[i, j, k] + u3[i, j, kp])
                    u1c_im = 0.5 * (u1[im, j, k] + u1[im + 1, j, k])
                    u1c_ip = 0.5 * (u1[ip, j, k] + u1[ip + 1, j, k])
                    u1c_jm = 0.5 * (u1[i, jm, k] + u1[i + 1, jm, k])
                    u1c_jp = 0.5 * (u1[i, jp, k] + u1[i + 1, jp, k])
                    u1c_km = 0.5 * (u1[i, j, km] + u1[i + 1, j, km])
                    u1c_kp = 0.5 * (u1[i, j, kp] + u1[i + 1, j, kp])
                    u2c_im = 0.5 * (u2[im, j, k] + u2[im, j + 1, k])
                    u2c_ip = 0.5 * (u2[ip, j, k] + u2[ip, j + 1, k])
                    u2c_jm = 0.5 * (u2[i, jm, k] + u2[i, jm + 1, k])
                    u2c_jp = 0.5 * (u2[i, jp, k] + u2[i, jp + 1, k])
                    u2c_km = 0.5 * (u2[i, j, km] + u2[i, j + 1, km])
                    u2c_kp = 0.5 * (u2[i, j, kp] + u2[i, j + 1, kp])
                    kpp = kp + 1 if kp < n3 - 1 else 0
                    u3c_im = 0.5 * (u3[im, j, k] + u3[im, j, kp])
                    u3c_ip = 0.5 * (u3[ip, j, k] + u3[ip, j, kp])
                    u3c_jm = 0.5 * (u3[i, jm, k] + u3[i, jm, kp])
                    u3c_jp = 0.5 * (u3[i, jp, k] + u3[i, jp, kp])
                    u3c_km = 0.5 * (u3[i, j, km] + u3[i, j, k])
                    u3c_kp = 0.5 * (u3[i, j, kp] + u3[i, j, kpp])

                    g11 = (u1[i + 1, j, k] - u1[i, j, k]) * inv1
                    g22 = (u2[i, j + 1, k] - u2[i, j, k]) * inv2
                    g33 = (u3[i, j, kp] - u3[i, j, k]) * inv3
                    g12 = (u1c_jp - u1c_jm) * (0.5 * inv2)
                    g13 = (u1c_kp - u1c_km) * (0.5 * inv3)
                    g21 = (u2c_ip - u2c_im) * (0.5 * inv1)
                    g23 = (u2c_kp - u2c_km) * (0.5 * inv3)
                    g31 = (u3c_ip - u3c_im) * (0.5 * inv1)
                    g32 = (u3c_jp - u3c_jm) * (0.5 * inv2)
                    if i == 0 or i == n1 - 1:
                        g21 = (u2c_ip - u2c_im) * inv1 if n1 > 1 else 0.0
                        g31 = (u3c_ip - u3c_im) * inv1
                    if j == 0 or j == n2 - 1:
                        g12 = (u1c_jp - u1c_jm) * inv2
                        g32 = (u3c_jp - u3c_jm) * inv2

                    d12 = 0.5 * (g12 + g21)
                    d13 = 0.5 * (g13 + g31)
                    d23 = 0.5 * (g23 + g32)
                    a12 = 0.5 * (g12 - g21)
                    a13 = 0.5 * (g13 - g31)
                    a23 = 0.5 * (g23 - g32)
                    d_sq = (g11 * g11 + g22 * g22 + g33 * g33
                            + 2.0 * (d12 * d12 + d13 * d13 + d23 * d23))
                    a_sq = 2.0 * (a12 * a12 + a13 * a13 + a23 * a23)
                    divu = g11 + g22 + g33

                    gr1 = ((rho[ip, j, k] - rho[im, j, k]) * (0.5 * inv1)
                           if 0 < i < n1 - 1 else (rho[ip, j, k] - rho[im, j, k]) * inv1)
                    gr2 = ((rho[i, jp, k] - rho[i, jm, k]) * (0.5 * inv2)
                           if 0 < j < n2 - 1 else (rho[i, jp, k] - rho[i, jm, k]) * inv2)
                    gr3 = (rho[i, j, kp] - rho[i, j, km]) * (0.5 * inv3)
                    grad_rho_sq = gr1 * gr1 + gr2 * gr2 + gr3 * gr3

                    rate_a += mu * r * a_sq
                    rate_g += (mu * pprime / r) * grad_rho_sq
                    rate_d += mu * r * d_sq
                    rate_z += (mu * r - mu * r) * (divu * divu)
        part[s, 0] = mass
        part[s, 1] = mom3
        part[s, 2] = rmin
        part[s, 3] = smax
        part[s, 4] = ek
        part[s, 5] = rate_a
        part[s, 6] = rate_g
        part[s, 7] = rate_d
        part[s, 8] = rate_z
        part[s, 9] = d2max
    for q in (0, 1, 4, 5, 6, 7, 8):
        tot = 0.0
        for s in range(nslab):
            tot += part[s, q]
        out[q] = tot * cell_vol
    rmin = part[0, 2]
    smax = part[0, 3]
    d2max = part[0, 9]
    for s in range(1, nslab):
        if part[s, 2] < rmin:
            rmin = part[s, 2]
        if part[s, 3] > smax:
            smax = part[s, 3]
        if part[s, 9] > d2max:
            d2max = part[s, 9]
    out[2] = rmin
    out[3] = smax
    out[9] = d2max
    out[5] *= 2.0 * kappa
    out[6] *= 2.0 * kappa
    out[7] *= 2.0 * (1.0 - kappa)
    out[8] *= 2.0 * (1.0 - kappa)
