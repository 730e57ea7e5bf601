"""Independent finite-difference eigensolver for the radial equation.

Ground truth for everything the analytic route produces.  The substitution
u = f / sqrt(r) turns

    u'' + u'/r + (tau - gamma^2/r^2 - m^2 omega^2 r^2 / 4) u = 0

into the symmetric Sturm-Liouville form

    -f'' + [(gamma^2 - 1/4)/r^2 + m^2 omega^2 r^2/4] f = tau f

on [r0, R_max] with Dirichlet ends, discretized by second-order central
differences on a uniform grid.  The tridiagonal eigenproblem is solved by
Sturm-sequence bisection (no external eigensolver), optionally sharpened by
Richardson extrapolation in the grid spacing h.  The hard wall at r0 > 0
keeps the 1/r^2 terms bounded, so a uniform grid converges at order h^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from dislocflux import kernels
from dislocflux.errors import (
    DomainNotConverged,
    GridTooCoarse,
    InvalidParams,
    OrderOutOfRange,
)
from dislocflux.model import DerivedParams, PhysicalParams

GRID_TOL = 1e-5      # GridTooCoarse when the h^2 estimate exceeds this * omega
DOMAIN_TOL = 1e-8    # DomainNotConverged when doubling R_max moves tau by this * omega


@dataclass(frozen=True)
class OracleConfig:
    grid_points: int = 20000
    r_max_factor: float = 6.0
    richardson: bool = True
    check_domain: bool = False

    def __post_init__(self):
        if self.grid_points < 1000:
            raise InvalidParams(f"grid_points must be >= 1000, got {self.grid_points}")
        if self.r_max_factor < 3:
            raise InvalidParams(f"r_max_factor must be >= 3, got {self.r_max_factor}")


@dataclass(frozen=True)
class OracleLevel:
    n: int
    tau: float
    energy: float
    error_estimate: float  # h^2 Richardson estimate; nan when richardson is off


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple  # (h, E0(h)) pairs, coarsest last
    fitted_order: float
    extrapolated_energy: float


def classical_turning_radius(d: DerivedParams, p: PhysicalParams, tau: float) -> float:
    """Outer solution of V_eff(r) = tau (V_eff = gamma^2/r^2 + m^2 w^2 r^2/4)."""
    a4 = (p.m * d.omega) ** 2 / 4.0
    disc = max(tau * tau - 4.0 * a4 * d.gamma ** 2, 0.0)
    s = (tau + math.sqrt(disc)) / (2.0 * a4)
    return math.sqrt(max(s, p.r0 ** 2))


def _tau_budget(d: DerivedParams, p: PhysicalParams, n_levels: int) -> float:
    """Upper estimate for the highest requested tau: harmonic ladder plus the
    hard-wall push (wall can sit above the centrifugal-harmonic minimum)."""
    mw = p.m * d.omega
    wall = d.gamma ** 2 / (2.0 * d.y0) + d.y0 / 2.0
    return mw * (max(abs(d.gamma), wall) + 2.0 * n_levels + 6.0)


def _grid_taus(d, p, r_max, n_interior, n_levels):
    h = (r_max - p.r0) / (n_interior + 1)
    r = p.r0 + h * np.arange(1, n_interior + 1)
    v = (d.gamma ** 2 - 0.25) / (r * r) + (p.m * d.omega) ** 2 * (r * r) / 4.0
    diag = 2.0 / (h * h) + v
    off = np.full(n_interior - 1, -1.0 / (h * h))
    taus = kernels.sturm_lowest(diag, off, n_levels)
    return np.asarray(taus, dtype=float), h


def _solve_taus(d, p, r_max, cfg, n_levels):
    """(tau array, h^2 error estimates) at the configured resolution."""
    n_f = cfg.grid_points
    tau_f, h_f = _grid_taus(d, p, r_max, n_f, n_levels)
    if not cfg.richardson:
        return tau_f, np.full(n_levels, math.nan)
    tau_c, h_c = _grid_taus(d, p, r_max, n_f // 2, n_levels)
    w = h_f * h_f / (h_c * h_c - h_f * h_f)
    tau_star = tau_f + (tau_f - tau_c) * w
    est = np.abs(tau_f - tau_c) * w
    return tau_star, est


def solve_radial_eigenproblem(
    d: DerivedParams,
    p: PhysicalParams,
    n_levels: int,
    cfg: OracleConfig | None = None,
) -> list[OracleLevel]:
    """Lowest n_levels eigenpairs (n, tau_n, E_n) of the radial problem."""
    if n_levels < 1:
        raise InvalidParams(f"n_levels must be >= 1, got {n_levels}")
    cfg = cfg or OracleConfig()
    r_turn = classical_turning_radius(d, p, _tau_budget(d, p, n_levels))
    r_max = p.r0 + cfg.r_max_factor * r_turn
    taus, est = _solve_taus(d, p, r_max, cfg, n_levels)
    if cfg.richardson and np.max(est) > GRID_TOL * d.omega:
        raise GridTooCoarse(
            f"h^2 estimate {np.max(est):.3e} exceeds {GRID_TOL:g}*omega "
            f"({GRID_TOL * d.omega:.3e}); raise grid_points"
        )
    if cfg.check_domain:
        r_max2 = p.r0 + 2.0 * cfg.r_max_factor * r_turn
        # same h: scale the interior point count with the box
        n2 = int(round(cfg.grid_points * (r_max2 - p.r0) / (r_max - p.r0)))
        cfg2 = OracleConfig(n2, cfg.r_max_factor, cfg.richardson, False)
        taus2, _ = _solve_taus(d, p, r_max2, cfg2, n_levels)
        moved = float(np.max(np.abs(taus2 - taus))) / (2.0 * p.m)
        if moved > DOMAIN_TOL * d.omega:
            raise DomainNotConverged(
                f"doubling r_max_factor moved an energy by {moved:.3e} "
                f"(> {DOMAIN_TOL:g}*omega)"
            )
    return [
        OracleLevel(
            n=i,
            tau=float(taus[i]),
            energy=d.tau_map.energy_of_tau(float(taus[i])),
            error_estimate=float(est[i]) / (2.0 * p.m),
        )
        for i in range(n_levels)
    ]


def eigenfunction(
    d: DerivedParams,
    p: PhysicalParams,
    level_index: int,
    cfg: OracleConfig | None = None,
):
    """(r, f) samples of the level_index-th symmetrized eigenfunction, by
    inverse iteration at the single-grid Sturm eigenvalue."""
    cfg = cfg or OracleConfig()
    r_turn = classical_turning_radius(d, p, _tau_budget(d, p, level_index + 1))
    r_max = p.r0 + cfg.r_max_factor * r_turn
    n = cfg.grid_points
    taus, h = _grid_taus(d, p, r_max, n, level_index + 1)
    tau = float(taus[level_index])
    r = p.r0 + h * np.arange(1, n + 1)
    v = (d.gamma ** 2 - 0.25) / (r * r) + (p.m * d.omega) ** 2 * (r * r) / 4.0
    diag = 2.0 / (h * h) + v
    off = np.full(n - 1, -1.0 / (h * h))
    rng = np.random.default_rng(12345)
    f = rng.standard_normal(n)
    f /= np.linalg.norm(f)
    for _ in range(3):
        f = kernels.tridiag_shifted_solve(diag, off, tau, f)
        f /= np.linalg.norm(f)
    # fix overall sign: positive near the inner wall
    lead = f[: max(8, n // 200)]
    if lead[np.argmax(np.abs(lead))] < 0:
        f = -f
    return r, f


def interior_node_count(f: np.ndarray) -> int:
    """Sign changes of an eigenfunction, noise-floored."""
    big = np.max(np.abs(f))
    kept = f[np.abs(f) > 1e-10 * big]
    return int(np.sum(np.signbit(kept[1:]) != np.signbit(kept[:-1])))


def convergence_report(
    d: DerivedParams,
    p: PhysicalParams,
    cfg: OracleConfig | None = None,
    level_index: int = 0,
) -> ConvergenceReport:
    """Solve at 4 resolutions, fit the log-error slope against the Richardson
    limit of the two finest grids; raises OrderOutOfRange outside [1.8, 2.2]."""
    cfg = cfg or OracleConfig()
    r_turn = classical_turning_radius(d, p, _tau_budget(d, p, level_index + 1))
    r_max = p.r0 + cfg.r_max_factor * r_turn
    sizes = [cfg.grid_points // (2 ** i) for i in range(4)]
    taus = []
    hs = []
    for n in sizes:
        t, h = _grid_taus(d, p, r_max, n, level_index + 1)
        taus.append(t[level_index])
        hs.append(h)
    w = hs[0] ** 2 / (hs[1] ** 2 - hs[0] ** 2)
    tau_lim = taus[0] + (taus[0] - taus[1]) * w
    errs = [abs(t - tau_lim) for t in taus]
    # the finest point is dominated by the extrapolation itself; fit the rest
    log_h = np.log([hs[i] for i in range(1, 4)])
    log_e = np.log([max(errs[i], 1e-300) for i in range(1, 4)])
    order = float(np.polyfit(log_h, log_e, 1)[0])
    energy_rows = tuple((hs[i], d.tau_map.energy_of_tau(float(taus[i]))) for i in range(4))
    report = ConvergenceReport(
        rows=energy_rows,
        fitted_order=order,
        extrapolated_energy=d.tau_map.energy_of_tau(float(tau_lim)),
    )
    if not (1.8 <= order <= 2.2):
        raise OrderOutOfRange(f"fitted convergence order {order:.3f} outside [1.8, 2.2]")
    return report


def sturm_count_reference(diag, off, x) -> int:
    """Characteristic-polynomial sign-variation count (self-test oracle).

    Leading principal minors p_k of (T - xI) satisfy
    p_k = (d_k - x) p_{k-1} - e_{k-1}^2 p_{k-2}; the eigenvalues below x equal
    the sign changes along (p_0, ..., p_n).  Only safe for small matrices:
    the minors overflow quickly."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    p_prev = 1.0
    p_cur = diag[0] - x
    changes = 1 if p_cur < 0 else 0
    for i in range(1, len(diag)):
        p_next = (diag[i] - x) * p_cur - off[i - 1] ** 2 * p_prev
        ref = p_cur if p_cur != 0.0 else p_prev
        if p_next != 0.0 and (p_next < 0) != (ref < 0):
            changes += 1
        p_prev, p_cur = p_cur, p_next
    return changes
