"""Slope limiting with parameter-jump-aware neighbor comparison.

The minmod limiter compares a cell's slope against the jumps to its neighbor
averages. Across a parameter jump the raw neighbor average is the wrong
reference (a steady profile is not flat in u there), so each neighbor average
is first mapped onto the cell's own parameters. With that change the limiter
leaves exact steady interface states alone.
"""

from __future__ import annotations

import numpy as np

from .fluxes import FluxConfig
from .mesh import BoundarySpec, Mesh
from .models.base import DEMAND, SUPPLY, SystemModel
from .state import DGState, all_traces


def minmod(a1, a2, a3):
    """Componentwise minmod: common-sign minimum magnitude, else zero."""
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    a3 = np.asarray(a3, dtype=float)
    sign = np.sign(a1)
    agree = (np.sign(a2) == sign) & (np.sign(a3) == sign)
    magnitude = np.minimum(np.abs(a1), np.minimum(np.abs(a2), np.abs(a3)))
    return np.where(agree, sign * magnitude, 0.0)


def _neighbor_averages(avgs: np.ndarray, theta: np.ndarray, periodic: bool):
    """Per-cell neighbor averages and parameters; edge cells replicate outward."""
    if periodic:
        prev_avg = np.roll(avgs, 1, axis=0)
        next_avg = np.roll(avgs, -1, axis=0)
        prev_theta = np.roll(theta, 1, axis=0)
        next_theta = np.roll(theta, -1, axis=0)
    else:
        prev_avg = np.concatenate([avgs[:1], avgs[:-1]], axis=0)
        next_avg = np.concatenate([avgs[1:], avgs[-1:]], axis=0)
        prev_theta = np.concatenate([theta[:1], theta[:-1]], axis=0)
        next_theta = np.concatenate([theta[1:], theta[-1:]], axis=0)
    return prev_avg, prev_theta, next_avg, next_theta


def mapped_neighbor_averages(
    avgs: np.ndarray,
    theta: np.ndarray,
    model: SystemModel,
    flux_cfg: FluxConfig,
    bc: BoundarySpec,
    t: float,
):
    """Neighbor cell averages expressed at each cell's own parameters.

    The upstream neighbor is mapped as the demand side, the downstream one as
    the supply side. With mapping disabled the raw averages come back.
    """
    prev_avg, prev_theta, next_avg, next_theta = _neighbor_averages(
        avgs, theta, bc.is_periodic(t)
    )
    if not flux_cfg.delta_mapping_enabled:
        return prev_avg, next_avg
    prev_mapped, _ = model.delta_map(prev_avg, prev_theta, theta, DEMAND)
    next_mapped, _ = model.delta_map(next_avg, next_theta, theta, SUPPLY)
    return prev_mapped, next_mapped


def limit(
    state: DGState,
    mesh: Mesh,
    model: SystemModel,
    flux_cfg: FluxConfig,
    bc: BoundarySpec,
) -> DGState:
    """Minmod-limit the slope of each cell; averages are untouched.

    For quadratic elements the linear part is limited first and the quadratic
    coefficient is dropped in any cell whose slope got clipped.
    """
    if state.degree == 0:
        return state
    coeffs = state.coeffs.copy()
    avgs = coeffs[:, 0, :]
    prev_mapped, next_mapped = mapped_neighbor_averages(
        avgs, mesh.theta, model, flux_cfg, bc, state.t
    )
    forward = next_mapped - avgs
    backward = avgs - prev_mapped
    slopes = coeffs[:, 1, :]
    limited = minmod(slopes, forward, backward)
    if state.degree >= 2:
        coeffs[:, 2, :] = np.where(limited != slopes, 0.0, coeffs[:, 2, :])
    coeffs[:, 1, :] = limited
    return DGState(state.degree, coeffs, state.t)


def boundary_traces_limited(
    state: DGState,
    mesh: Mesh,
    model: SystemModel,
    flux_cfg: FluxConfig,
    bc: BoundarySpec,
):
    """Limited interface traces of every cell: (right-edge, left-edge) arrays.

    For linear elements these coincide with the traces of the slope-limited
    polynomial, so the scheme can limit once per stage and read plain traces.
    """
    avgs = state.cell_averages
    prev_mapped, next_mapped = mapped_neighbor_averages(
        avgs, mesh.theta, model, flux_cfg, bc, state.t
    )
    forward = next_mapped - avgs
    backward = avgs - prev_mapped
    left_raw, right_raw = all_traces(state)
    right_limited = avgs + minmod(right_raw - avgs, forward, backward)
    left_limited = avgs - minmod(avgs - left_raw, forward, backward)
    return right_limited, left_limited
