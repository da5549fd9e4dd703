"""Modal DG solution state, L2 projection of initial data, trace evaluation."""

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .basis import MAX_DEGREE, basis_tables, edge_values
from .errors import SolverError
from .mesh import Mesh


@dataclass
class DGState:
    """Per-cell modal coefficients of a vector-valued polynomial solution.

    coeffs[j, l, i] is the coefficient of Legendre mode l, component i, in
    cell j.  Mode 0 is the cell average.
    """

    degree: int
    coeffs: np.ndarray  # shape (n_cells, degree+1, n_components)
    t: float = 0.0

    def __post_init__(self):
        if not 0 <= self.degree <= MAX_DEGREE:
            raise ValueError(f"degree {self.degree} outside supported range 0..{MAX_DEGREE}")
        coeffs = np.asarray(self.coeffs, dtype=float)
        if coeffs.ndim != 3 or coeffs.shape[1] != self.degree + 1:
            raise ValueError(
                f"coeffs must have shape (n_cells, {self.degree + 1}, n_components)"
            )
        self.coeffs = coeffs

    @property
    def n_cells(self) -> int:
        return self.coeffs.shape[0]

    @property
    def n_components(self) -> int:
        return self.coeffs.shape[2]

    @property
    def cell_averages(self) -> np.ndarray:
        return self.coeffs[:, 0, :]

    def copy(self) -> "DGState":
        return replace(self, coeffs=self.coeffs.copy())


def project_initial(u0: Callable[[np.ndarray], np.ndarray], mesh: Mesh, degree: int) -> DGState:
    """L2-project initial data onto the modal basis, cell by cell.

    u0 maps an array of positions (n,) to states (n, n_components).  The
    modal coefficients are (2l+1)/2 times the Gauss sum of u0 against L_l on
    the reference cell, which reproduces polynomials of degree <= k exactly.
    """
    rule, values, _ = basis_tables(degree)
    centers = mesh.cell_centers
    # points[j, g]: quadrature node g mapped into cell j
    points = centers[:, None] + 0.5 * mesh.dx * rule.nodes[None, :]
    samples = np.asarray(u0(points.ravel()), dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    if not np.all(np.isfinite(samples)):
        bad = np.flatnonzero(~np.all(np.isfinite(samples), axis=-1))[0]
        raise SolverError(f"initial data is non-finite near x={points.ravel()[bad]:.6g}")
    samples = samples.reshape(mesh.n_cells, rule.nodes.size, -1)
    scale = (2.0 * np.arange(degree + 1) + 1.0) / 2.0
    # coeffs[j, l, i] = scale_l * sum_g w_g L_l(s_g) u0[j, g, i]
    coeffs = scale[None, :, None] * np.einsum(
        "g,lg,jgi->jli", rule.weights, values, samples
    )
    return DGState(degree=degree, coeffs=coeffs, t=0.0)


def evaluate_trace(state: DGState, j: int, side: str) -> np.ndarray:
    """Solution value at the requested edge of cell j (side "left" or "right")."""
    left, right = edge_values(state.degree)
    basis = right if side == "right" else left
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return np.einsum("l,li->i", basis, state.coeffs[j])


def all_traces(state: DGState) -> tuple[np.ndarray, np.ndarray]:
    """Left and right edge values of every cell, shapes (n_cells, n_components)."""
    left, right = edge_values(state.degree)
    left_traces = np.einsum("l,jli->ji", left, state.coeffs)
    right_traces = np.einsum("l,jli->ji", right, state.coeffs)
    return left_traces, right_traces


def evaluate_at_nodes(state: DGState) -> np.ndarray:
    """Solution sampled at the volume quadrature nodes, shape (n_cells, n_nodes, n_comp)."""
    _, values, _ = basis_tables(state.degree)
    return np.einsum("lg,jli->jgi", values, state.coeffs)
