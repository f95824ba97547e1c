"""Barotropic equation of state and the potentials built on it.

The pressure law is p(rho) = a * rho**gamma with a > 0, gamma > 1.  The
dynamic viscosity is linear in density, mu(rho) = mu * rho, and the second
(bulk) viscosity is identically zero; both solvers and all diagnostics share
these closures through :class:`FluidParams`.

Everything here is a pure function of its arguments and accepts scalars or
numpy arrays for the density inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import VacuumError


@dataclass(frozen=True)
class FluidParams:
    """Physical constants plus the numerical density floor.

    mu        slope of the dynamic viscosity mu(rho) = mu * rho, > 0
    kappa     entropy interpolation parameter, strictly inside (0, 1)
    gamma     adiabatic exponent, > 1 (the isothermal case is rejected)
    a         pressure constant, > 0
    rho_floor minimum admissible density; going below raises VacuumError
    """

    mu: float = 1.0
    kappa: float = 0.5
    gamma: float = 2.0
    a: float = 1.0
    rho_floor: float = 1e-8

    # derived coefficients, filled in __post_init__
    w_coeff: float = field(init=False, repr=False)
    v_coeff: float = field(init=False, repr=False)
    kappa_ratio: float = field(init=False, repr=False)

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")
        if not 0 < self.kappa < 1:
            raise ValueError(f"kappa must lie in the open interval (0, 1), got {self.kappa}")
        if not self.gamma > 1:
            raise ValueError(f"gamma must be > 1, got {self.gamma}")
        if not self.a > 0:
            raise ValueError(f"a must be > 0, got {self.a}")
        if not self.rho_floor > 0:
            raise ValueError(f"rho_floor must be > 0, got {self.rho_floor}")
        object.__setattr__(self, "w_coeff", 2.0 * math.sqrt(self.kappa * (1.0 - self.kappa)) * self.mu)
        object.__setattr__(self, "v_coeff", 2.0 * self.kappa * self.mu)
        object.__setattr__(self, "kappa_ratio", math.sqrt(self.kappa / (1.0 - self.kappa)))

    def mu_of_rho(self, rho):
        return self.mu * np.asarray(rho)

    def lambda_of_rho(self, rho):
        return np.zeros_like(np.asarray(rho, dtype=float))


def check_admissible(rho, params: FluidParams, context: str = ""):
    """Raise VacuumError if any density is below the floor (or not finite)."""
    rho = np.asarray(rho)
    lo = rho.min() if rho.size else np.inf
    if not np.isfinite(lo) or lo < params.rho_floor:
        where = f" in {context}" if context else ""
        raise VacuumError(f"density {lo!r} below floor {params.rho_floor}{where}")


def _pow_gamma(rho, gamma):
    # gamma = 2 is the common configuration; keep its arithmetic to a single
    # multiply so solver kernels can reproduce it bitwise.
    if gamma == 2.0:
        return rho * rho
    return rho**gamma


def pressure(rho, params: FluidParams):
    """p(rho) = a * rho**gamma."""
    check_admissible(rho, params, "pressure")
    rho = np.asarray(rho, dtype=float)
    return params.a * _pow_gamma(rho, params.gamma)


def dpressure(rho, params: FluidParams):
    """p'(rho) = a * gamma * rho**(gamma-1)."""
    check_admissible(rho, params, "dpressure")
    rho = np.asarray(rho, dtype=float)
    return params.a * params.gamma * _pow_gamma(rho, params.gamma - 1.0)


def sound_speed(rho, params: FluidParams):
    """c(rho) = sqrt(p'(rho))."""
    return np.sqrt(dpressure(rho, params))


def pressure_potential(rho, params: FluidParams):
    """P(rho) = rho * integral_1^rho p(s)/s**2 ds, in closed form.

    For the power law this is a * rho * (rho**(gamma-1) - 1) / (gamma - 1).
    """
    check_admissible(rho, params, "pressure_potential")
    rho = np.asarray(rho, dtype=float)
    g = params.gamma
    return params.a * rho * (_pow_gamma(rho, g - 1.0) - 1.0) / (g - 1.0)


def dpotential(rho, params: FluidParams):
    """P'(rho) = a * (gamma * rho**(gamma-1) - 1) / (gamma - 1)."""
    check_admissible(rho, params, "dpotential")
    rho = np.asarray(rho, dtype=float)
    g = params.gamma
    return params.a * (g * _pow_gamma(rho, g - 1.0) - 1.0) / (g - 1.0)


def internal_energy(rho, params: FluidParams):
    """Specific internal energy e(rho) with the normalization e(1) = 0.

    Defined by rho**2 * de/drho = p(rho); the additive constant is fixed so
    that rho * e(rho) == pressure_potential(rho) identically, which lets the
    energy and the relative-entropy diagnostics share one potential.
    """
    check_admissible(rho, params, "internal_energy")
    rho = np.asarray(rho, dtype=float)
    g = params.gamma
    return params.a * (_pow_gamma(rho, g - 1.0) - 1.0) / (g - 1.0)


def convexity_gap(rho, r, params: FluidParams):
    """Bregman gap of the pressure potential: P(rho) - P(r) - P'(r)(rho - r).

    Nonnegative for gamma > 1 by convexity of P; zero iff rho == r.
    """
    rho = np.asarray(rho, dtype=float)
    r = np.asarray(r, dtype=float)
    return pressure_potential(rho, params) - pressure_potential(r, params) - dpotential(r, params) * (rho - r)


def pressure_gap(rho, r, params: FluidParams):
    """Bregman gap of the pressure itself: p(rho) - p(r) - p'(r)(rho - r).

    Comparable to :func:`convexity_gap` within constants that depend only on
    gamma and the band r ranges over; :func:`pressure_gap_ratio_bounds`
    samples that equivalence.
    """
    rho = np.asarray(rho, dtype=float)
    r = np.asarray(r, dtype=float)
    return pressure(rho, params) - pressure(r, params) - dpressure(r, params) * (rho - r)


def pressure_gap_ratio_bounds(params: FluidParams, r_min: float, r_max: float,
                              n_rho: int = 400, n_r: int = 40):
    """Sample pressure_gap / convexity_gap over a density band.

    rho ranges over [0.5 * r_min, 2 * r_max] and r over [r_min, r_max]; the
    returned (lo, hi) bracket the sampled ratio away from the removable
    rho == r singularity.  Both bounds are positive for gamma > 1.
    """
    if not params.rho_floor <= r_min <= r_max:
        raise ValueError("need rho_floor <= r_min <= r_max")
    rho = np.geomspace(0.5 * r_min, 2.0 * r_max, n_rho)
    r = np.linspace(r_min, r_max, n_r)
    rr, rhorho = np.meshgrid(r, rho)
    num = pressure_gap(rhorho, rr, params)
    den = convexity_gap(rhorho, rr, params)
    mask = np.abs(rhorho - rr) > 1e-3 * rr
    ratio = num[mask] / den[mask]
    return float(ratio.min()), float(ratio.max())
