"""Common contract for conservation-law models with piecewise parameters."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

# Side of an interface a trace is mapped from. The demand side feeds flow into
# the interface (left for rightward flow), the supply side absorbs it. The
# distinction only matters for sign ties in the mapping.
DEMAND = "demand"
SUPPLY = "supply"


class SystemModel(ABC):
    """A hyperbolic system u_t + f(u, theta)_x = 0 with parameter field theta.

    All array arguments broadcast: ``u`` has trailing axis of length
    ``n_components``, ``theta`` of length ``theta_dim``, and leading axes are
    shared elementwise.
    """

    n_components: int
    theta_dim: int
    observable_names: tuple[str, ...]

    @abstractmethod
    def flux(self, u: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """Physical flux f(u, theta), same shape as ``u``."""

    @abstractmethod
    def max_wave_speed(self, u: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """Spectral radius bound of df/du at (u, theta); shape of ``u`` minus last axis."""

    @abstractmethod
    def delta_map(
        self,
        u: np.ndarray,
        theta_from: np.ndarray,
        theta_to: np.ndarray,
        side: str,
    ) -> tuple[np.ndarray, np.ndarray]:
        """Map ``u`` from parameters ``theta_from`` onto ``theta_to``.

        Returns ``(mapped, gamma)`` where ``gamma`` is the largest flow
        fraction in (-inf, 1] such that ``flux(mapped, theta_to) ==
        gamma * flux(u, theta_from)`` with eigenvalue signs preserved.
        ``side`` is DEMAND or SUPPLY and resolves sign ties.
        """

    @abstractmethod
    def check_theta(self, theta: np.ndarray) -> None:
        """Raise ConfigError if any parameter vector is out of range."""

    @abstractmethod
    def check_states(self, u: np.ndarray, theta: np.ndarray) -> None:
        """Raise InadmissibleStateError if any state leaves the admissible set."""

    @abstractmethod
    def observables(self, u: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """Derived output fields, trailing axis matching ``observable_names``."""
