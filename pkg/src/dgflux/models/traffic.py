"""Multi-class kinematic-wave traffic on a road with varying lane count.

Components u_l = a * rho_l aggregate the per-lane class densities over the
a(x) lanes; theta = (a, b_1..b_m) with b_l the scaled free-flow speed of
class l. All classes share one speed-density law v(rho) = v_f (1 - rho/rho_jam)
driven by the total per-lane density rho = sum_l rho_l.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, InadmissibleStateError
from .base import DEMAND, SUPPLY, SystemModel


@dataclass(frozen=True)
class TrafficModel(SystemModel):
    n_classes: int = 3
    free_flow_speed: float = 40.0
    rho_jam: float = 1.0

    def __post_init__(self):
        if self.n_classes < 1:
            raise ConfigError(f"need at least one vehicle class, got {self.n_classes}")
        if self.free_flow_speed <= 0 or self.rho_jam <= 0:
            raise ConfigError("free_flow_speed and rho_jam must be positive")

    @property
    def n_components(self):
        return self.n_classes

    @property
    def theta_dim(self):
        return 1 + self.n_classes

    @property
    def observable_names(self):
        return tuple(f"rho_{l}" for l in range(1, self.n_classes + 1))

    @property
    def rho_crit(self):
        """Per-lane density maximizing the flow q(rho) = rho*v(rho)."""
        return 0.5 * self.rho_jam

    @property
    def q_max(self):
        """Flow capacity q(rho_crit) = v_f * rho_jam / 4."""
        return 0.25 * self.free_flow_speed * self.rho_jam

    def velocity(self, rho_total):
        """v(rho) = v_f (1 - rho/rho_jam), common to all classes."""
        return self.free_flow_speed * (1.0 - np.asarray(rho_total, dtype=float) / self.rho_jam)

    def _split(self, theta):
        theta = np.asarray(theta, dtype=float)
        return theta[..., 0], theta[..., 1:]

    def lane_densities(self, u, theta):
        lanes, _ = self._split(theta)
        return np.asarray(u, dtype=float) / lanes[..., None]

    def flux(self, u, theta):
        _, b = self._split(theta)
        rho = self.lane_densities(u, theta).sum(axis=-1)
        return b * np.asarray(u, dtype=float) * self.velocity(rho)[..., None]

    def eigen_bounds(self, u, theta):
        """(lower, upper) bracket of the flux Jacobian spectrum.

        lower = b_1 v(rho) - (v_f/rho_jam) sum_l rho_l b_l, upper = b_m v(rho).
        """
        _, b = self._split(theta)
        rho_l = self.lane_densities(u, theta)
        v = self.velocity(rho_l.sum(axis=-1))
        drag = (self.free_flow_speed / self.rho_jam) * (rho_l * b).sum(axis=-1)
        return b[..., 0] * v - drag, b[..., -1] * v

    def max_wave_speed(self, u, theta):
        lower, upper = self.eigen_bounds(u, theta)
        return np.maximum(np.abs(lower), np.abs(upper))

    def lambda1_sign(self, u, theta):
        """Sign of the slowest characteristic: +1 below rho_crit, -1 above."""
        rho = self.lane_densities(u, theta).sum(axis=-1)
        return np.sign(self.rho_crit - rho)

    def delta_map(self, u, theta_from, theta_to, side):
        if side not in (DEMAND, SUPPLY):
            raise ValueError(f"side must be {DEMAND!r} or {SUPPLY!r}, got {side!r}")
        u = np.asarray(u, dtype=float)
        theta_from = np.asarray(theta_from, dtype=float)
        theta_to = np.asarray(theta_to, dtype=float)
        a_from, b_from = self._split(theta_from)
        a_to, b_to = self._split(theta_to)

        rho_l = u / a_from[..., None]
        rho = rho_l.sum(axis=-1)
        v_from = self.velocity(rho)
        # per-class rescaling of flow when lanes and speed factors change
        alpha = (b_from * a_from[..., None]) / (b_to * a_to[..., None])
        weighted = (alpha * rho_l).sum(axis=-1)
        inflow = v_from * weighted

        empty = rho <= 0.0
        jammed = ~empty & (v_from <= 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            gamma = np.minimum(1.0, self.q_max / inflow)
        gamma = np.where(empty | jammed, 1.0, gamma)

        # total mapped density: root of q(dr) = gamma*inflow, picked so the
        # slowest eigenvalue keeps its sign (zero goes free-flow on the demand
        # side, congested on the supply side)
        spread = np.sqrt(np.clip(1.0 - gamma * inflow / self.q_max, 0.0, None))
        sign = self.lambda1_sign(u, theta_from)
        take_lower = (sign > 0) | ((sign == 0) & (side == DEMAND))
        rho_mid = self.rho_crit * np.where(take_lower, 1.0 - spread, 1.0 + spread)

        with np.errstate(divide="ignore", invalid="ignore"):
            mapped_rho_l = (
                gamma[..., None] * alpha * rho_l * (v_from / self.velocity(rho_mid))[..., None]
            )
        if np.any(jammed):
            # stationary jam: zero flow at full density, class shares from the
            # same alpha weighting the regular formula tends to
            share = alpha * rho_l / weighted[..., None]
            mapped_rho_l = np.where(jammed[..., None], self.rho_jam * share, mapped_rho_l)
        mapped_rho_l = np.where(empty[..., None], 0.0, mapped_rho_l)
        mapped = a_to[..., None] * mapped_rho_l

        same = np.all(theta_from == theta_to, axis=-1)
        if np.any(same):
            mapped = np.where(same[..., None], u, mapped)
            gamma = np.where(same, 1.0, gamma)
        return mapped, gamma

    def check_theta(self, theta):
        theta = np.asarray(theta, dtype=float)
        if theta.shape[-1] != self.theta_dim:
            raise ConfigError(
                f"traffic theta needs (a, b_1..b_{self.n_classes}), got shape {theta.shape}"
            )
        if not np.all(np.isfinite(theta)):
            raise ConfigError("traffic theta contains non-finite entries")
        lanes, b = theta[..., 0], theta[..., 1:]
        if np.any(lanes <= 0):
            raise ConfigError("lane count a must be positive")
        if np.any(b <= 0) or np.any(b > 1):
            raise ConfigError("speed factors b_l must lie in (0, 1]")
        if self.n_classes > 1 and np.any(np.diff(b, axis=-1) <= 0):
            raise ConfigError("speed factors must be strictly increasing across classes")

    def check_states(self, u, theta, atol=1e-12):
        u = np.asarray(u, dtype=float)
        if not np.all(np.isfinite(u)):
            raise InadmissibleStateError("traffic state contains non-finite entries")
        rho_l = self.lane_densities(u, theta)
        if np.any(rho_l < -atol):
            raise InadmissibleStateError(
                f"negative class density: min rho_l = {np.min(rho_l):.6g}"
            )
        rho = rho_l.sum(axis=-1)
        if np.any(rho > self.rho_jam + atol):
            raise InadmissibleStateError(
                f"total density above jam: max rho = {np.max(rho):.6g} > {self.rho_jam}"
            )

    def observables(self, u, theta):
        return self.lane_densities(u, theta)


# Riemann scenarios on a two-segment road. Density vectors are per-lane
# (u_l / a); lane counts are normalized so the right segment has a = 1 and
# the left a = lane_ratio (only the ratio affects the per-lane dynamics).


@dataclass(frozen=True)
class RiemannCase:
    x0_fraction: float
    lane_ratio: float
    rho_left: tuple[float, ...]
    rho_right: tuple[float, ...]
    theta_bar_rule: str


RIEMANN_CASES = {
    "4a": RiemannCase(0.3, 2.0, (0.02, 0.03, 0.01), (0.2, 0.08, 0.15), "right"),
    "4b": RiemannCase(0.5, 3.0, (0.15, 0.05, 0.02), (0.2, 0.15, 0.35), "left"),
    "5a": RiemannCase(0.4, 3.0, (0.1, 0.15, 0.05), (0.15, 0.1, 0.2), "left"),
    "5b": RiemannCase(0.45, 0.4, (0.1, 0.2, 0.3), (0.1, 0.25, 0.2), "left"),
}

B_LEFT = (0.5, 0.75, 1.0)
B_RIGHT = (0.25, 0.375, 0.5)
ROAD_LENGTH = 10000.0
ROAD_CELLS = 800
ROAD_T_END = 400.0
ROAD_COURANT = 0.3
ROAD_FREE_FLOW_SPEED = 40.0
