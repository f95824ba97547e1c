"""Discrete differential operators on the staggered grids.

Conventions: second-order centered stencils throughout; periodic directions
wrap, wall-bounded directions use even mirroring (ghost equals first interior
value) so tangential fields have zero discrete wall-normal derivative and
cell-centered scalars satisfy a discrete homogeneous Neumann condition.

These routines favor clarity over speed; the time-stepping kernels carry
their own fused versions and are tested against the ones here.
"""

from __future__ import annotations

import numpy as np

from .grids import Grid1D, Grid3D
from .states import State1D, State3D

# ---------------------------------------------------------------- 1D


def grad_to_faces_1d(q: np.ndarray, grid: Grid1D) -> np.ndarray:
    """d q / dy at faces from cell values, periodic."""
    return (q - np.roll(q, 1)) / grid.dy


def div_to_cells_1d(f: np.ndarray, grid: Grid1D) -> np.ndarray:
    """d f / dy at cells from face values, periodic."""
    return (np.roll(f, -1) - f) / grid.dy


def interp_cells_to_faces_1d(q: np.ndarray) -> np.ndarray:
    return 0.5 * (np.roll(q, 1) + q)


def interp_faces_to_cells_1d(f: np.ndarray) -> np.ndarray:
    return 0.5 * (f + np.roll(f, -1))


def second_diff_log_1d(rho: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Centered second difference of log(rho) at cell centers, periodic."""
    lr = np.log(rho)
    return (np.roll(lr, -1) - 2.0 * lr + np.roll(lr, 1)) / grid.dy**2


# ---------------------------------------------------------------- 3D ghost fills


def pad_cells(q: np.ndarray, grid: Grid3D) -> np.ndarray:
    """Cell scalar with one ghost layer: mirrored at walls, wrapped in x3."""
    out = np.empty((grid.n1 + 2, grid.n2 + 2, grid.n3 + 2))
    out[1:-1, 1:-1, 1:-1] = q
    out[0, 1:-1, 1:-1] = q[0]
    out[-1, 1:-1, 1:-1] = q[-1]
    out[:, 0, :] = out[:, 1, :]
    out[:, -1, :] = out[:, -2, :]
    out[:, :, 0] = out[:, :, -2]
    out[:, :, -1] = out[:, :, 1]
    return out


def grad_to_faces_3d(q: np.ndarray, grid: Grid3D):
    """Gradient of a cell scalar on the three face sets.

    Wall faces carry zero (mirror symmetry); the x3 component wraps.
    """
    g1 = np.zeros(grid.shape_u1())
    g1[1:-1] = (q[1:] - q[:-1]) / grid.dx1
    g2 = np.zeros(grid.shape_u2())
    g2[:, 1:-1] = (q[:, 1:] - q[:, :-1]) / grid.dx2
    g3 = (q - np.roll(q, 1, axis=2)) / grid.dx3
    return g1, g2, g3


def div_to_cells_3d(f1: np.ndarray, f2: np.ndarray, f3: np.ndarray, grid: Grid3D) -> np.ndarray:
    """Divergence at cells of a face field (f1, f2, f3)."""
    return ((f1[1:] - f1[:-1]) / grid.dx1
            + (f2[:, 1:] - f2[:, :-1]) / grid.dx2
            + (np.roll(f3, -1, axis=2) - f3) / grid.dx3)


def face_density_3d(rho: np.ndarray, grid: Grid3D):
    """Density interpolated to the three face sets (mirror walls, wrap x3)."""
    r1 = np.empty(grid.shape_u1())
    r1[1:-1] = 0.5 * (rho[:-1] + rho[1:])
    r1[0] = rho[0]
    r1[-1] = rho[-1]
    r2 = np.empty(grid.shape_u2())
    r2[:, 1:-1] = 0.5 * (rho[:, :-1] + rho[:, 1:])
    r2[:, 0] = rho[:, 0]
    r2[:, -1] = rho[:, -1]
    r3 = 0.5 * (np.roll(rho, 1, axis=2) + rho)
    return r1, r2, r3


def face_weights_x1(grid: Grid3D) -> np.ndarray:
    """Quadrature weights along the x1 face axis (half cells at the walls)."""
    w = np.full(grid.n1 + 1, grid.dx1)
    w[0] = 0.5 * grid.dx1
    w[-1] = 0.5 * grid.dx1
    return w


# ---------------------------------------------------------------- velocity gradient


def _center_grad_component(qc: np.ndarray, axis: int, grid: Grid3D) -> np.ndarray:
    """Centered derivative of a cell-centered field along one axis."""
    d = (grid.dx1, grid.dx2, grid.dx3)[axis]
    if axis == 2:
        return (np.roll(qc, -1, axis=2) - np.roll(qc, 1, axis=2)) / (2.0 * d)
    lo = [slice(None)] * 3
    hi = [slice(None)] * 3
    out = np.empty_like(qc)
    n = qc.shape[axis]
    hi[axis] = slice(2, None)
    lo[axis] = slice(0, -2)
    mid = [slice(None)] * 3
    mid[axis] = slice(1, -1)
    out[tuple(mid)] = (qc[tuple(hi)] - qc[tuple(lo)]) / (2.0 * d)
    # even mirror at the walls: ghost center equals the first interior center
    first = [slice(None)] * 3
    first[axis] = 0
    second = [slice(None)] * 3
    second[axis] = 1
    out[tuple(first)] = (qc[tuple(second)] - qc[tuple(first)]) / (2.0 * d)
    last = [slice(None)] * 3
    last[axis] = -1
    prev = [slice(None)] * 3
    prev[axis] = -2
    out[tuple(last)] = (qc[tuple(last)] - qc[tuple(prev)]) / (2.0 * d)
    return out


def velocity_gradient_at_centers(state: State3D) -> np.ndarray:
    """G[a, b] = d u_a / d x_b at cell centers, shape (3, 3, n1, n2, n3)."""
    g = state.grid
    uc = (
        0.5 * (state.u1[:-1] + state.u1[1:]),
        0.5 * (state.u2[:, :-1] + state.u2[:, 1:]),
        0.5 * (state.u3 + np.roll(state.u3, -1, axis=2)),
    )
    G = np.empty((3, 3) + g.shape_cells())
    G[0, 0] = (state.u1[1:] - state.u1[:-1]) / g.dx1
    G[1, 1] = (state.u2[:, 1:] - state.u2[:, :-1]) / g.dx2
    G[2, 2] = (np.roll(state.u3, -1, axis=2) - state.u3) / g.dx3
    for a in range(3):
        for b in range(3):
            if a != b:
                G[a, b] = _center_grad_component(uc[a], b, g)
    return G


def strain_and_spin(state: State3D):
    """Symmetric and antisymmetric parts of the velocity gradient at centers."""
    G = velocity_gradient_at_centers(state)
    Gt = np.swapaxes(G, 0, 1)
    D = 0.5 * (G + Gt)
    A = 0.5 * (G - Gt)
    return D, A


def strain_1d(state: State1D) -> np.ndarray:
    """du/dy at cell centers; the spin of a 1D profile is identically zero."""
    return (np.roll(state.u, -1) - state.u) / state.grid.dy


def grad_rho_at_centers(state: State3D) -> np.ndarray:
    """|grad rho|-ready centered gradient components at cells, shape (3, ...)."""
    g = state.grid
    out = np.empty((3,) + g.shape_cells())
    for b in range(3):
        out[b] = _center_grad_component(state.rho, b, g)
    return out
