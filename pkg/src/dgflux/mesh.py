"""Uniform cell partition of [0, L] with a piecewise-constant parameter field.

The model parameter vector theta is stored per cell, so a spatial jump in the
flux always falls on a cell boundary.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConfigError

BoundaryKind = str  # "periodic" | "outflow" | "prescribed"

VALID_BOUNDARY_KINDS = ("periodic", "outflow", "prescribed")


@dataclass(frozen=True)
class Mesh:
    """Uniform mesh: N cells of width L/N, theta constant per cell."""

    length: float
    n_cells: int
    theta: np.ndarray  # shape (n_cells, theta_dim)

    def __post_init__(self):
        if self.length <= 0 or self.n_cells <= 0:
            raise ConfigError("mesh needs positive length and cell count")
        theta = np.atleast_2d(np.asarray(self.theta, dtype=float))
        if theta.shape[0] != self.n_cells:
            raise ConfigError(
                f"theta has {theta.shape[0]} rows, expected one per cell ({self.n_cells})"
            )
        if not np.all(np.isfinite(theta)):
            raise ConfigError("theta contains non-finite entries")
        object.__setattr__(self, "theta", theta)

    @property
    def dx(self) -> float:
        return self.length / self.n_cells

    @property
    def cell_centers(self) -> np.ndarray:
        return (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass
class BoundarySpec:
    """Boundary treatment per side.

    kinds: "periodic" (both sides), "outflow" (exterior trace copies the
    interior trace), "prescribed" (exterior state supplied by a function of
    time and the interior trace).  ``periodic_after`` optionally switches the
    whole domain to periodic once t reaches that time, which is how a driven
    boundary can be released after the forcing window.
    """

    left: BoundaryKind = "periodic"
    right: BoundaryKind = "periodic"
    left_state: Optional[Callable[[float, np.ndarray], np.ndarray]] = None
    right_state: Optional[Callable[[float, np.ndarray], np.ndarray]] = None
    periodic_after: Optional[float] = None

    def __post_init__(self):
        for side, kind in (("left", self.left), ("right", self.right)):
            if kind not in VALID_BOUNDARY_KINDS:
                raise ConfigError(f"unknown boundary kind {kind!r} on {side} side")
        if (self.left == "periodic") != (self.right == "periodic"):
            raise ConfigError("periodic boundaries must be declared on both sides")
        if self.left == "prescribed" and self.left_state is None:
            raise ConfigError("prescribed left boundary needs a state function")
        if self.right == "prescribed" and self.right_state is None:
            raise ConfigError("prescribed right boundary needs a state function")

    def is_periodic(self, t: float) -> bool:
        if self.periodic_after is not None and t >= self.periodic_after:
            return True
        return self.left == "periodic"

    @classmethod
    def periodic(cls) -> "BoundarySpec":
        return cls(left="periodic", right="periodic")

    @classmethod
    def outflow(cls) -> "BoundarySpec":
        return cls(left="outflow", right="outflow")
