"""Physical inputs and the derived parameters of the radial problem.

Geometry/units: natural units hbar = c = 1 throughout.  The magnetic field
vanishes inside the defect core r < r0 and equals B0 z-hat outside; the core
is a forbidden (hard-wall) region.  The screw dislocation enters through the
single parameter beta = b_burgers / (2 pi), and together with the missing
flux it only ever appears in the effective angular momentum

    gamma = l - beta k + q sigma / (2 pi),      sigma = B0 pi r0^2.

Charge convention: the spectrum machinery requires omega = q B0 / m > 0.
A hole (q < 0) maps onto the particle problem by the exact symmetry
(q, l, beta*k) -> (-q, -l, -beta*k), which flips gamma -> -gamma and leaves
the radial operator invariant; apply that map at ingestion instead of feeding
omega <= 0 here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dislocflux.errors import DomainError, InvalidParams

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalParams:
    """Primitive inputs; l is the integer angular quantum number."""

    m: float
    q: float
    B0: float
    r0: float
    beta: float
    k: float
    l: int

    def __post_init__(self):
        if not (isinstance(self.l, int) and not isinstance(self.l, bool)):
            raise InvalidParams(f"l must be an integer, got {self.l!r}")
        for name in ("m", "B0", "r0"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise InvalidParams(f"{name} must be > 0, got {v!r}")
        for name in ("q", "beta", "k"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(float(v))):
                raise InvalidParams(f"{name} must be a finite real, got {v!r}")


@dataclass(frozen=True)
class TauEnergyMap:
    """Exact affine map between energy E and the spectral parameter tau,
    tau = 2 m E + m omega gamma - k^2."""

    m: float
    omega: float
    gamma: float
    k: float

    def tau_of_energy(self, energy: float) -> float:
        return 2.0 * self.m * energy + self.m * self.omega * self.gamma - self.k ** 2

    def energy_of_tau(self, tau: float) -> float:
        return (tau - self.m * self.omega * self.gamma + self.k ** 2) / (2.0 * self.m)


@dataclass(frozen=True)
class DerivedParams:
    """omega, missing flux, effective angular momentum and dimensionless cutoff."""

    omega: float
    sigma_flux: float
    gamma: float
    y0: float
    tau_map: TauEnergyMap


def derive(p: PhysicalParams) -> DerivedParams:
    """Derived parameters; rejects omega <= 0 (see module docstring)."""
    omega = p.q * p.B0 / p.m
    if omega <= 0:
        raise InvalidParams(
            f"omega = q*B0/m = {omega} must be > 0; map (q,l,beta*k) -> "
            "(-q,-l,-beta*k) to reduce the hole problem to this one"
        )
    sigma = p.B0 * math.pi * p.r0 ** 2
    gamma = p.l - p.beta * p.k + p.q * sigma / TWO_PI
    y0 = p.m * omega * p.r0 ** 2 / 2.0
    if not y0 > 0:
        raise InvalidParams(f"y0 = m*omega*r0^2/2 = {y0} must be > 0")
    return DerivedParams(
        omega=omega,
        sigma_flux=sigma,
        gamma=gamma,
        y0=y0,
        tau_map=TauEnergyMap(m=p.m, omega=omega, gamma=gamma, k=p.k),
    )


def vector_potential(p: PhysicalParams, r: float) -> float:
    """Azimuthal component: 0 inside the core, B0 (r^2 - r0^2)/(2r) outside."""
    if not r > 0:
        raise DomainError(f"vector_potential requires r > 0, got {r}")
    if r <= p.r0:
        return 0.0
    return p.B0 * (r ** 2 - p.r0 ** 2) / (2.0 * r)


def radial_coefficients(d: DerivedParams, p: PhysicalParams):
    """Effective radial coefficient V_eff(r) = gamma^2/r^2 + m^2 omega^2 r^2/4,
    so the radial equation reads u'' + u'/r + (tau - V_eff) u = 0.

    Accepts scalars or numpy arrays."""
    g2 = d.gamma ** 2
    mw2 = (p.m * d.omega) ** 2 / 4.0

    def v_eff(r):
        r = np.asarray(r, dtype=float) if not np.isscalar(r) else r
        return g2 / r ** 2 + mw2 * r ** 2

    return v_eff
