"""Nonlinear elastic waves in a heterogeneous medium.

State u = (strain, momentum), parameters theta = (density, modulus).
The constitutive law is quadratic in strain, sigma = K*eps + beta*K^2*eps^2,
which makes the interface mapping solvable in closed form with the full
flow transmitted (gamma = 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, InadmissibleStateError
from .base import SystemModel


def stress(strain, modulus, beta):
    """sigma = K*eps + beta*K^2*eps^2."""
    return modulus * strain + beta * modulus**2 * strain**2


def stress_strain_slope(strain, modulus, beta):
    """d sigma / d eps = K + 2*beta*K^2*eps; positive on the hyperbolic set."""
    return modulus + 2.0 * beta * modulus**2 * strain


@dataclass(frozen=True)
class ElasticModel(SystemModel):
    """u = (eps, q) with q = rho*v, flux f = (-q/rho, -sigma(eps, K))."""

    beta: float = 0.3

    n_components = 2
    theta_dim = 2
    observable_names = ("strain", "stress")

    def __post_init__(self):
        if self.beta < 0:
            raise ConfigError(f"stress nonlinearity beta must be >= 0, got {self.beta}")

    def flux(self, u, theta):
        u = np.asarray(u, dtype=float)
        rho = np.asarray(theta, dtype=float)[..., 0]
        modulus = np.asarray(theta, dtype=float)[..., 1]
        out = np.empty_like(u)
        out[..., 0] = -u[..., 1] / rho
        out[..., 1] = -stress(u[..., 0], modulus, self.beta)
        return out

    def sound_speed(self, u, theta):
        """c = sqrt(sigma_eps / rho); NaN where hyperbolicity is lost."""
        theta = np.asarray(theta, dtype=float)
        slope = stress_strain_slope(np.asarray(u, dtype=float)[..., 0], theta[..., 1], self.beta)
        with np.errstate(invalid="ignore"):
            return np.sqrt(slope / theta[..., 0])

    def eigenvalues(self, u, theta):
        """(-c, c). Raises if the stress-strain slope is not positive."""
        theta = np.asarray(theta, dtype=float)
        slope = stress_strain_slope(np.asarray(u, dtype=float)[..., 0], theta[..., 1], self.beta)
        if np.any(slope <= 0):
            raise InadmissibleStateError(
                f"hyperbolicity lost: min stress-strain slope {np.min(slope):.6g} <= 0"
            )
        c = np.sqrt(slope / theta[..., 0])
        return -c, c

    def max_wave_speed(self, u, theta):
        return self.sound_speed(u, theta)

    def delta_map(self, u, theta_from, theta_to, side):
        # side is irrelevant here: lambda1 < 0 < lambda2 always, so the sign
        # constraints never bind and gamma = 1 is achievable.
        u = np.asarray(u, dtype=float)
        theta_from = np.asarray(theta_from, dtype=float)
        theta_to = np.asarray(theta_to, dtype=float)

        rho_from, k_from = theta_from[..., 0], theta_from[..., 1]
        rho_to, k_to = theta_to[..., 0], theta_to[..., 1]

        sigma = stress(u[..., 0], k_from, self.beta)
        if self.beta == 0.0:
            eps_mapped = sigma / k_to
        else:
            disc = 1.0 + 4.0 * self.beta * sigma
            if np.any(disc < 0):
                raise InadmissibleStateError(
                    f"mapping discriminant negative (min {np.min(disc):.6g}); "
                    "state outside the admissible stress range"
                )
            # the + root keeps sigma_eps > 0 at the target parameters
            eps_mapped = (np.sqrt(disc) - 1.0) / (2.0 * self.beta * k_to)

        mapped = np.empty_like(u)
        mapped[..., 0] = eps_mapped
        mapped[..., 1] = rho_to * u[..., 1] / rho_from

        same = np.all(theta_from == theta_to, axis=-1)
        if np.any(same):
            mapped = np.where(same[..., None], u, mapped)
        gamma = np.ones(u.shape[:-1])
        return mapped, gamma

    def check_theta(self, theta):
        theta = np.asarray(theta, dtype=float)
        if theta.shape[-1] != self.theta_dim:
            raise ConfigError(f"elastic theta needs (rho, K), got shape {theta.shape}")
        if not np.all(np.isfinite(theta)):
            raise ConfigError("elastic theta contains non-finite entries")
        if np.any(theta[..., 0] <= 0) or np.any(theta[..., 1] <= 0):
            raise ConfigError("elastic theta requires rho > 0 and K > 0")

    def check_states(self, u, theta):
        u = np.asarray(u, dtype=float)
        if not np.all(np.isfinite(u)):
            raise InadmissibleStateError("elastic state contains non-finite entries")
        theta = np.asarray(theta, dtype=float)
        slope = stress_strain_slope(u[..., 0], theta[..., 1], self.beta)
        if np.any(slope <= 0):
            raise InadmissibleStateError(
                f"strain outside hyperbolic range: min stress-strain slope {np.min(slope):.6g}"
            )

    def observables(self, u, theta):
        u = np.asarray(u, dtype=float)
        modulus = np.asarray(theta, dtype=float)[..., 1]
        out = np.empty_like(u)
        out[..., 0] = u[..., 0]
        out[..., 1] = stress(u[..., 0], modulus, self.beta)
        return out


# Layered-medium scenario ingredients. The domain [0, 300] alternates unit
# layers of material A and B; a velocity pulse is driven through the left
# boundary and the boundary closes to periodic once the forcing ends.

LAYER_A = (1.0, 1.0)  # (rho, K)
LAYER_B = (3.0, 3.0)
FORCING_END = 60.0
PERIODIC_SWITCH = 70.0


def layered_theta(n_layers: int, cells_per_layer: int) -> np.ndarray:
    """Per-cell (rho, K), layer 2k of material A, layer 2k+1 of material B."""
    pattern = np.array([LAYER_A, LAYER_B])
    layer_of_cell = (np.arange(n_layers * cells_per_layer) // cells_per_layer) % 2
    return pattern[layer_of_cell]


def boundary_velocity(t: float) -> float:
    """Driven velocity at x = 0: a single smooth push, then quiet."""
    if t <= FORCING_END:
        return -0.2 * (1.0 + np.cos(np.pi * (t - 30.0) / 30.0))
    return 0.0


def forcing_state(t: float, interior_trace: np.ndarray) -> np.ndarray:
    """Ghost state for the prescribed left boundary.

    Strain is copied from the interior trace (only the velocity is driven);
    momentum is rho_A * v(t) since the ghost sits in material A.
    """
    return np.array([interior_trace[0], LAYER_A[0] * boundary_velocity(t)])
