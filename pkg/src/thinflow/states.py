"""Field containers for the 1D and 3D systems.

States are lightweight records around numpy arrays.  Constructors validate
shapes and wall values; they do not copy unless asked, so solver code can
hand arrays over without churn.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import GridMismatchError
from .grids import Grid1D, Grid3D


def _as_f64(arr, shape, name):
    out = np.asarray(arr, dtype=np.float64)
    if out.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {out.shape}")
    return out


@dataclass
class State1D:
    """Density at cell centers, velocity at faces, on a periodic Grid1D."""

    grid: Grid1D
    rho: np.ndarray
    u: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        n = self.grid.n
        self.rho = _as_f64(self.rho, (n,), "rho")
        self.u = _as_f64(self.u, (n,), "u")

    def mass(self) -> float:
        return float(self.rho.sum() * self.grid.dy)

    def copy(self) -> "State1D":
        return State1D(self.grid, self.rho.copy(), self.u.copy(), self.t)


@dataclass
class AugmentedState1D:
    """Density plus the shifted velocity v and gradient velocity w.

    v = u + 2*kappa*mu * d/dy log rho and w = 2*sqrt(kappa*(1-kappa))*mu *
    d/dy log rho when built from a primitive state; as an evolved unknown the
    pair is free and u is recovered via v - sqrt(kappa/(1-kappa)) * w.
    """

    grid: Grid1D
    rho: np.ndarray
    v: np.ndarray
    w: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        n = self.grid.n
        self.rho = _as_f64(self.rho, (n,), "rho")
        self.v = _as_f64(self.v, (n,), "v")
        self.w = _as_f64(self.w, (n,), "w")

    def mass(self) -> float:
        return float(self.rho.sum() * self.grid.dy)

    def copy(self) -> "AugmentedState1D":
        return AugmentedState1D(self.grid, self.rho.copy(), self.v.copy(), self.w.copy(), self.t)


@dataclass
class State3D:
    """MAC-staggered fields on the thin box.

    rho lives at cell centers (n1, n2, n3).  u1 and u2 include their wall
    faces (shapes (n1+1, n2, n3) and (n1, n2+1, n3)) and must vanish there;
    u3 stores one value per periodic face, (n1, n2, n3).
    """

    grid: Grid3D
    rho: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    u3: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        g = self.grid
        self.rho = _as_f64(self.rho, g.shape_cells(), "rho")
        self.u1 = _as_f64(self.u1, g.shape_u1(), "u1")
        self.u2 = _as_f64(self.u2, g.shape_u2(), "u2")
        self.u3 = _as_f64(self.u3, g.shape_u3(), "u3")
        if np.any(self.u1[0] != 0.0) or np.any(self.u1[-1] != 0.0):
            raise ValueError("u1 must vanish on the x1 walls")
        if np.any(self.u2[:, 0] != 0.0) or np.any(self.u2[:, -1] != 0.0):
            raise ValueError("u2 must vanish on the x2 walls")

    def mass(self) -> float:
        return float(self.rho.sum() * self.grid.cell_volume)

    def momentum_x3(self) -> float:
        rho_f3 = 0.5 * (np.roll(self.rho, 1, axis=2) + self.rho)
        return float((rho_f3 * self.u3).sum() * self.grid.cell_volume)

    def copy(self) -> "State3D":
        return State3D(self.grid, self.rho.copy(), self.u1.copy(),
                       self.u2.copy(), self.u3.copy(), self.t)

    def cross_section_variance(self) -> float:
        """Largest variance over (x1, x2) of any field, for invariance checks."""
        out = 0.0
        for f in (self.rho, self.u3):
            out = max(out, float(f.var(axis=(0, 1)).max()))
        out = max(out, float(np.abs(self.u1).max()) ** 2)
        out = max(out, float(np.abs(self.u2).max()) ** 2)
        return out


@dataclass
class AugmentedFields3D:
    """The (v, w) companion fields of a 3D state, on the velocity faces."""

    grid: Grid3D
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    w3: np.ndarray


@dataclass
class ExtendedState:
    """A 1D augmented state viewed as 3D fields constant over the cross-section.

    Arrays are broadcast views; values are independent of (x1, x2) exactly.
    The cross components of the velocity pair are identically zero.
    """

    grid: Grid3D
    rho_profile: np.ndarray
    v_profile: np.ndarray
    w_profile: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        n3 = self.grid.n3
        self.rho_profile = _as_f64(self.rho_profile, (n3,), "rho_profile")
        self.v_profile = _as_f64(self.v_profile, (n3,), "v_profile")
        self.w_profile = _as_f64(self.w_profile, (n3,), "w_profile")

    @property
    def r(self) -> np.ndarray:
        return np.broadcast_to(self.rho_profile, self.grid.shape_cells())

    @property
    def V3(self) -> np.ndarray:
        return np.broadcast_to(self.v_profile, self.grid.shape_u3())

    @property
    def W3(self) -> np.ndarray:
        return np.broadcast_to(self.w_profile, self.grid.shape_u3())


def extend_1d(aug: AugmentedState1D, grid3d: Grid3D) -> ExtendedState:
    """Lift a 1D augmented state onto a 3D grid along the axis.

    The axial resolutions must match exactly; no resampling is done.
    """
    if grid3d.n3 != aug.grid.n:
        raise GridMismatchError(
            f"3D grid has n3={grid3d.n3} but the 1D state has n={aug.grid.n}")
    return ExtendedState(grid3d, aug.rho, aug.v, aug.w, t=aug.t)


def extend_primitive(state: State1D, grid3d: Grid3D) -> State3D:
    """Lift a primitive 1D state to exactly cross-section-constant 3D data."""
    if grid3d.n3 != state.grid.n:
        raise GridMismatchError(
            f"3D grid has n3={grid3d.n3} but the 1D state has n={state.grid.n}")
    g = grid3d
    rho = np.broadcast_to(state.rho, g.shape_cells()).copy()
    u1 = np.zeros(g.shape_u1())
    u2 = np.zeros(g.shape_u2())
    u3 = np.broadcast_to(state.u, g.shape_u3()).copy()
    return State3D(g, rho, u1, u2, u3, t=state.t)


def replace_time(state, t):
    return replace(state, t=t)
