"""Transforms between the primitive velocity and the augmented pair (v, w).

v = u + 2*kappa*mu * grad(log rho)
w = 2*sqrt(kappa*(1-kappa))*mu * grad(log rho)
u = v - sqrt(kappa/(1-kappa)) * w

log rho is taken at cell centers and then differenced, so w is exactly the
discrete gradient of a potential (its discrete curl vanishes by construction).
"""

from __future__ import annotations

import numpy as np

from .eos import FluidParams, check_admissible
from .grids import Grid1D
from .states import AugmentedFields3D, AugmentedState1D, State1D, State3D


def log_density_gradient_1d(rho: np.ndarray, grid: Grid1D) -> np.ndarray:
    lr = np.log(rho)
    return (lr - np.roll(lr, 1)) / grid.dy


def augment(state, params: FluidParams):
    """Attach the (v, w) fields to a primitive state.

    1D states map to :class:`AugmentedState1D`; 3D states map to
    :class:`AugmentedFields3D` with each component on its own face set (the
    cross components vanish on the walls because the mirrored density has
    zero wall-normal gradient there).
    """
    check_admissible(state.rho, params, "augment")
    if isinstance(state, State1D):
        grad = log_density_gradient_1d(state.rho, state.grid)
        v = state.u + params.v_coeff * grad
        w = params.w_coeff * grad
        return AugmentedState1D(state.grid, state.rho, v, w, t=state.t)
    if isinstance(state, State3D):
        g = state.grid
        lr = np.log(state.rho)
        g1 = np.zeros(g.shape_u1())
        g1[1:-1] = (lr[1:] - lr[:-1]) / g.dx1
        g2 = np.zeros(g.shape_u2())
        g2[:, 1:-1] = (lr[:, 1:] - lr[:, :-1]) / g.dx2
        g3 = (lr - np.roll(lr, 1, axis=2)) / g.dx3
        return AugmentedFields3D(
            g,
            v1=state.u1 + params.v_coeff * g1,
            v2=state.u2 + params.v_coeff * g2,
            v3=state.u3 + params.v_coeff * g3,
            w1=params.w_coeff * g1,
            w2=params.w_coeff * g2,
            w3=params.w_coeff * g3,
        )
    raise TypeError(f"augment expects State1D or State3D, got {type(state)!r}")


def recover_velocity(v: np.ndarray, w: np.ndarray, params: FluidParams) -> np.ndarray:
    """u = v - sqrt(kappa/(1-kappa)) * w, componentwise."""
    return v - params.kappa_ratio * w


def recover_state(aug: AugmentedState1D, params: FluidParams) -> State1D:
    """Primitive view of an augmented 1D state."""
    return State1D(aug.grid, aug.rho, recover_velocity(aug.v, aug.w, params), t=aug.t)
