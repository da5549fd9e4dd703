"""Semidiscrete spatial operator: volume quadrature plus interface fluxes."""

from __future__ import annotations

import numpy as np

from .basis import basis_tables, edge_values
from .fluxes import FluxConfig, interface_flux
from .mesh import BoundarySpec, Mesh
from .models.base import SystemModel
from .state import DGState, all_traces, evaluate_at_nodes


def semidiscrete_rhs(
    state: DGState,
    mesh: Mesh,
    model: SystemModel,
    flux_cfg: FluxConfig,
    bc: BoundarySpec,
):
    """Time derivative of every modal coefficient, plus the boundary fluxes.

    Expects the limiter to have run already; interface traces are read straight
    off the current polynomials. Returns (derivatives shaped like state.coeffs,
    (flux through left boundary, flux through right boundary)).
    """
    n = mesh.n_cells
    m = state.n_components
    theta = mesh.theta
    rule, _, deriv_table = basis_tables(state.degree)
    left_trace, right_trace = all_traces(state)
    t = state.t

    # interface arrays, index i = 0..n (i sits between cells i-1 and i)
    u_minus = np.empty((n + 1, m))
    u_plus = np.empty((n + 1, m))
    theta_left = np.empty((n + 1, theta.shape[1]))
    theta_right = np.empty((n + 1, theta.shape[1]))
    u_minus[1:] = right_trace
    theta_left[1:] = theta
    u_plus[:n] = left_trace
    theta_right[:n] = theta

    if bc.is_periodic(t):
        u_minus[0] = right_trace[-1]
        theta_left[0] = theta[-1]
        u_plus[n] = left_trace[0]
        theta_right[n] = theta[0]
    else:
        theta_left[0] = theta[0]
        theta_right[n] = theta[-1]
        if bc.left == "prescribed":
            u_minus[0] = np.asarray(bc.left_state(t, left_trace[0]), dtype=float)
        else:  # outflow: exterior trace copies the interior one
            u_minus[0] = left_trace[0]
        if bc.right == "prescribed":
            u_plus[n] = np.asarray(bc.right_state(t, right_trace[-1]), dtype=float)
        else:
            u_plus[n] = right_trace[-1]

    f_hat = interface_flux(model, u_minus, theta_left, u_plus, theta_right, flux_cfg)
    if bc.is_periodic(t):
        # same inputs at both ends; copy so the telescoping sum cancels exactly
        f_hat[n] = f_hat[0]

    node_states = evaluate_at_nodes(state)  # (n, G, m)
    node_flux = model.flux(node_states, theta[:, None, :])
    volume = np.einsum("g,lg,jgi->jli", rule.weights, deriv_table, node_flux)

    edge_left, edge_right = edge_values(state.degree)  # L_l(-1), L_l(+1)
    surface = (
        f_hat[:-1][:, None, :] * edge_left[None, :, None]
        - f_hat[1:][:, None, :] * edge_right[None, :, None]
    )
    scale = (2.0 * np.arange(state.degree + 1) + 1.0) / mesh.dx
    derivatives = scale[None, :, None] * (volume + surface)
    return derivatives, (f_hat[0].copy(), f_hat[n].copy())
