"""Strong-stability-preserving Runge-Kutta stepping and CFL control."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, SolverError
from .fluxes import FluxConfig
from .limiting import mapped_neighbor_averages
from .mesh import BoundarySpec, Mesh
from .models.base import SystemModel
from .state import DGState


@dataclass(frozen=True)
class RKScheme:
    """Shu-Osher tableau: stage i forms sum_l alpha[i][l]*u(l) + dt*beta[i][l]*L(u(l))."""

    order: int
    alpha: tuple[tuple[float, ...], ...]
    beta: tuple[tuple[float, ...], ...]
    # time offset (in units of dt) at which iterate l lives, l = 0..order
    iterate_times: tuple[float, ...]
    # net weight of L(u(l)) in the completed step; used for flux bookkeeping
    net_flux_weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.alpha) != self.order or len(self.beta) != self.order:
            raise ConfigError("tableau row count must equal the stage count")
        for i, row in enumerate(self.alpha, start=1):
            if len(row) != i or any(a < 0 for a in row):
                raise ConfigError("alpha rows must be nonnegative lower-triangular")
            if not math.isclose(sum(row), 1.0, rel_tol=0, abs_tol=1e-14):
                raise ConfigError("each alpha row must sum to 1 (convex combination)")

    @classmethod
    def for_degree(cls, degree: int) -> "RKScheme":
        if degree == 0:
            return cls(1, ((1.0,),), ((1.0,),), (0.0, 1.0), (1.0,))
        if degree == 1:
            return cls(
                2,
                ((1.0,), (0.5, 0.5)),
                ((1.0,), (0.0, 0.5)),
                (0.0, 1.0, 1.0),
                (0.5, 0.5),
            )
        if degree == 2:
            return cls(
                3,
                ((1.0,), (0.75, 0.25), (1.0 / 3.0, 0.0, 2.0 / 3.0)),
                ((1.0,), (0.0, 0.25), (0.0, 0.0, 2.0 / 3.0)),
                (0.0, 1.0, 0.5, 1.0),
                (1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0),
            )
        raise ConfigError(f"no RK scheme for polynomial degree {degree}")


@dataclass(frozen=True)
class CourantConfig:
    courant: float
    dt_max: float = math.inf

    def __post_init__(self):
        if self.courant <= 0:
            raise ConfigError(f"Courant number must be positive, got {self.courant}")
        if self.dt_max <= 0:
            raise ConfigError("dt_max must be positive")


def compute_dt(
    state: DGState,
    mesh: Mesh,
    model: SystemModel,
    courant: CourantConfig,
    flux_cfg: FluxConfig,
    bc: BoundarySpec,
) -> float:
    """CFL step: courant * dx / alpha with alpha the worst wave speed.

    The speed bound is taken over every cell average and over the neighbor
    averages mapped onto the cell's parameters, mirroring the stencil the
    limiter looks at. A static field (alpha = 0) returns dt_max.
    """
    cap = 1.0 / (2 * state.degree + 1)
    if courant.courant > cap + 1e-12:
        raise ConfigError(
            f"Courant number {courant.courant} exceeds the degree-{state.degree} "
            f"stability cap {cap:.6g}"
        )
    avgs = state.cell_averages
    prev_mapped, next_mapped = mapped_neighbor_averages(
        avgs, mesh.theta, model, flux_cfg, bc, state.t
    )
    alpha = max(
        float(np.max(model.max_wave_speed(avgs, mesh.theta))),
        float(np.max(model.max_wave_speed(prev_mapped, mesh.theta))),
        float(np.max(model.max_wave_speed(next_mapped, mesh.theta))),
    )
    if not math.isfinite(alpha):
        raise SolverError("wave-speed bound is not finite; state left the admissible set")
    if alpha <= 0.0:
        return courant.dt_max
    return min(courant.courant * mesh.dx / alpha, courant.dt_max)


def ssp_rk_step(state: DGState, dt: float, rhs_operator, limit_operator):
    """Advance one step; the limiter runs after every stage.

    rhs_operator(state) must return (coefficient derivatives, (f_left, f_right))
    where the pair holds the numerical fluxes through the domain boundaries.
    Returns (new state, net boundary inflow of conserved totals over the step),
    the inflow being dt * sum of stage fluxes with the scheme's net weights.
    """
    scheme = RKScheme.for_degree(state.degree)
    iterates = [state.coeffs]
    evaluated = []
    for stage, (alpha_row, beta_row) in enumerate(zip(scheme.alpha, scheme.beta), start=1):
        while len(evaluated) < stage:
            l = len(evaluated)
            stage_state = DGState(
                state.degree, iterates[l], state.t + scheme.iterate_times[l] * dt
            )
            evaluated.append(rhs_operator(stage_state))
        new = np.zeros_like(state.coeffs)
        for l in range(stage):
            if alpha_row[l] != 0.0:
                new += alpha_row[l] * iterates[l]
            if beta_row[l] != 0.0:
                new += (dt * beta_row[l]) * evaluated[l][0]
        if not np.all(np.isfinite(new)):
            raise SolverError(
                f"non-finite solution after RK stage {stage} at t = {state.t:.6g}"
            )
        stage_t = state.t + scheme.iterate_times[stage] * dt
        limited = limit_operator(DGState(state.degree, new, stage_t))
        iterates.append(limited.coeffs)

    inflow = dt * sum(
        w * (f_left - f_right)
        for w, (_, (f_left, f_right)) in zip(scheme.net_flux_weights, evaluated)
    )
    return DGState(state.degree, iterates[-1], state.t + dt), inflow
