"""Structured grids: the periodic unit interval and the thin periodic box.

Both use a staggered arrangement: densities at cell centers, velocity
components on the faces they are normal to.  Face index f sits between cells
f-1 and f, so face 0 of a wall-bounded direction is the lower wall and face n
the upper wall; in periodic directions face 0 is shared and face n is not
stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid1D:
    """Periodic cells on (0, 1)."""

    n: int

    def __post_init__(self):
        if self.n < 8:
            raise ValueError(f"Grid1D needs n >= 8, got {self.n}")

    @property
    def dy(self) -> float:
        return 1.0 / self.n

    def cell_centers(self) -> np.ndarray:
        return (np.arange(self.n) + 0.5) * self.dy

    def faces(self) -> np.ndarray:
        return np.arange(self.n) * self.dy


@dataclass(frozen=True)
class Grid3D:
    """Cells on the box (0, eps) x (0, eps) x (0, 1).

    Wall-bounded in x1 and x2, periodic in x3.  The two cross directions are
    forced to match (n1 == n2) while the cross/axial spacings may differ.
    """

    eps: float
    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"Grid3D needs eps > 0, got {self.eps}")
        if self.n1 != self.n2:
            raise ValueError(f"Grid3D needs n1 == n2, got {self.n1} x {self.n2}")
        if self.n1 < 2:
            raise ValueError(f"Grid3D needs n1 >= 2, got {self.n1}")
        if self.n3 < 8:
            raise ValueError(f"Grid3D needs n3 >= 8, got {self.n3}")

    @property
    def dx1(self) -> float:
        return self.eps / self.n1

    @property
    def dx2(self) -> float:
        return self.eps / self.n2

    @property
    def dx3(self) -> float:
        return 1.0 / self.n3

    @property
    def volume(self) -> float:
        """|Omega_eps| = eps**2."""
        return self.eps * self.eps

    @property
    def cell_volume(self) -> float:
        return self.dx1 * self.dx2 * self.dx3

    def shape_cells(self):
        return (self.n1, self.n2, self.n3)

    def shape_u1(self):
        return (self.n1 + 1, self.n2, self.n3)

    def shape_u2(self):
        return (self.n1, self.n2 + 1, self.n3)

    def shape_u3(self):
        return (self.n1, self.n2, self.n3)

    def axial_grid(self) -> Grid1D:
        """The 1D grid sharing this box's axial resolution."""
        return Grid1D(self.n3)

    def cell_coords(self):
        """Meshgrid-ready center coordinates (three 1D arrays)."""
        x1 = (np.arange(self.n1) + 0.5) * self.dx1
        x2 = (np.arange(self.n2) + 0.5) * self.dx2
        x3 = (np.arange(self.n3) + 0.5) * self.dx3
        return x1, x2, x3

    def face_coords(self, axis: int):
        """Coordinates with the chosen axis replaced by its face positions."""
        x1, x2, x3 = self.cell_coords()
        if axis == 0:
            x1 = np.arange(self.n1 + 1) * self.dx1
        elif axis == 1:
            x2 = np.arange(self.n2 + 1) * self.dx2
        elif axis == 2:
            x3 = np.arange(self.n3) * self.dx3
        else:
            raise ValueError(f"axis must be 0, 1 or 2, got {axis}")
        return x1, x2, x3
