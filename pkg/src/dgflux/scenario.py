"""Declarative run configuration: model, mesh, fields, numerics, schedule.

A Scenario is fully serializable to YAML so runs can be scripted and
reproduced; every sub-spec is a small tagged dict with strict key checking.
The built-in scenarios cover the two bundled physical setups: the layered
elastic medium with a driven left boundary, and four two-segment road
Riemann problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import yaml

from .errors import ConfigError
from .fluxes import FluxConfig
from .mesh import BoundarySpec, Mesh
from .models import ElasticModel, TrafficModel
from .models import elastic as elastic_mod
from .models import traffic as traffic_mod
from .stepping import CourantConfig

THETA_KINDS = ("uniform", "two-piece", "alternating", "per-cell")
INITIAL_KINDS = ("zero", "riemann", "gaussian", "sine")

# prescribed-boundary forcing functions referable from config files
FORCINGS: dict[str, Callable] = {
    "elastic-drive": elastic_mod.forcing_state,
}


def _reject_unknown(mapping: dict, allowed: tuple[str, ...], context: str) -> None:
    unknown = sorted(str(key) for key in set(mapping) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown keys in {context}: {', '.join(unknown)}")


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise ConfigError(f"missing key {key!r} in {context}")
    return mapping[key]


def _as_float(value, label: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{label} wants a single number, got {value!r}") from exc


def _as_int(value, label: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{label} wants an integer, got {value!r}") from exc


def _as_array(value, label: str) -> np.ndarray:
    try:
        return np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{label} wants a list of numbers, got {value!r}") from exc


def _as_mapping(value, label: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{label} must be a mapping, got {value!r}")
    return dict(value)


@dataclass(frozen=True)
class Scenario:
    name: str
    model_id: str
    model_params: dict
    length: float
    n_cells: int
    theta_spec: dict
    initial_spec: dict
    boundary_spec: dict
    degree: int
    flux: FluxConfig
    courant: CourantConfig
    t_end: float
    snapshot_times: tuple[float, ...]

    def __post_init__(self):
        if self.model_id not in ("elastic", "traffic"):
            raise ConfigError(f"unknown model id {self.model_id!r}")
        if not 0 <= self.degree <= 2:
            raise ConfigError(f"polynomial degree must be 0..2, got {self.degree}")
        if self.t_end < 0:
            raise ConfigError("t_end must be nonnegative")
        try:
            times = tuple(_as_float(t, "snapshot time") for t in self.snapshot_times)
        except TypeError as exc:
            raise ConfigError("snapshots wants a list of times") from exc
        if any(t < 0 or t > self.t_end for t in times):
            raise ConfigError("snapshot times must lie in [0, t_end]")
        object.__setattr__(self, "snapshot_times", tuple(sorted(set(times))))
        object.__setattr__(self, "model_params", dict(self.model_params))

    # construction of the concrete run objects

    def build_model(self):
        params = dict(self.model_params)
        if self.model_id == "elastic":
            _reject_unknown(params, ("beta",), "model params")
            return ElasticModel(beta=_as_float(params.get("beta", 0.3), "model beta"))
        _reject_unknown(params, ("n_classes", "free_flow_speed", "rho_jam"), "model params")
        return TrafficModel(
            n_classes=_as_int(params.get("n_classes", 3), "model n_classes"),
            free_flow_speed=_as_float(
                params.get("free_flow_speed", 40.0), "model free_flow_speed"
            ),
            rho_jam=_as_float(params.get("rho_jam", 1.0), "model rho_jam"),
        )

    def build_mesh(self, model) -> Mesh:
        theta = self._theta_values(model)
        model.check_theta(theta)
        return Mesh(
            length=_as_float(self.length, "mesh length"),
            n_cells=_as_int(self.n_cells, "mesh n_cells"),
            theta=theta,
        )

    def _aligned_cell_count(self, x: float, what: str) -> int:
        dx = _as_float(self.length, "mesh length") / _as_int(self.n_cells, "mesh n_cells")
        ratio = x / dx
        if abs(ratio - round(ratio)) > 1e-9:
            raise ConfigError(f"{what} = {x} does not fall on a cell boundary (dx = {dx})")
        return int(round(ratio))

    def _theta_values(self, model) -> np.ndarray:
        spec = dict(self.theta_spec)
        kind = _require(spec, "kind", "theta spec")
        n = _as_int(self.n_cells, "mesh n_cells")
        if kind == "uniform":
            _reject_unknown(spec, ("kind", "value"), "theta spec")
            value = _as_array(_require(spec, "value", "theta spec"), "theta value")
            return np.tile(value, (n, 1))
        if kind == "two-piece":
            _reject_unknown(spec, ("kind", "x_split", "left", "right"), "theta spec")
            split = self._aligned_cell_count(
                _as_float(_require(spec, "x_split", "theta spec"), "theta x_split"),
                "theta x_split",
            )
            left = _as_array(_require(spec, "left", "theta spec"), "theta left")
            right = _as_array(_require(spec, "right", "theta spec"), "theta right")
            out = np.empty((n, left.size))
            out[:split] = left
            out[split:] = right
            return out
        if kind == "alternating":
            _reject_unknown(spec, ("kind", "period", "values"), "theta spec")
            period = _as_float(_require(spec, "period", "theta spec"), "theta period")
            per_layer = self._aligned_cell_count(period, "theta layer period")
            if per_layer < 1:
                raise ConfigError("theta layer period must cover at least one cell")
            values = _as_array(_require(spec, "values", "theta spec"), "theta values")
            layer = (np.arange(n) // per_layer) % values.shape[0]
            return values[layer]
        if kind == "per-cell":
            _reject_unknown(spec, ("kind", "values"), "theta spec")
            values = _as_array(_require(spec, "values", "theta spec"), "theta values")
            if values.shape[0] != n:
                raise ConfigError(
                    f"per-cell theta has {values.shape[0]} rows for {n} cells"
                )
            return values
        raise ConfigError(f"unknown theta kind {kind!r}; choose from {THETA_KINDS}")

    def initial_function(self, model) -> Callable[[np.ndarray], np.ndarray]:
        spec = dict(self.initial_spec)
        kind = _require(spec, "kind", "initial spec")
        m = model.n_components
        if kind == "zero":
            _reject_unknown(spec, ("kind",), "initial spec")
            return lambda x: np.zeros(x.shape + (m,))
        if kind == "riemann":
            _reject_unknown(spec, ("kind", "x_split", "left", "right"), "initial spec")
            split = _as_float(_require(spec, "x_split", "initial spec"), "initial x_split")
            self._aligned_cell_count(split, "initial x_split")
            left = _as_array(_require(spec, "left", "initial spec"), "initial left")
            right = _as_array(_require(spec, "right", "initial spec"), "initial right")
            if left.size != m or right.size != m:
                raise ConfigError(f"riemann states must have {m} components")
            return lambda x: np.where(x[..., None] < split, left, right)
        if kind == "gaussian":
            _reject_unknown(
                spec, ("kind", "component", "base", "amplitude", "center", "width"),
                "initial spec",
            )
            comp = _as_int(spec.get("component", 0), "initial component")
            base = _as_array(spec.get("base", np.zeros(m)), "initial base")
            amp = _as_float(_require(spec, "amplitude", "initial spec"), "initial amplitude")
            center = _as_float(_require(spec, "center", "initial spec"), "initial center")
            width = _as_float(_require(spec, "width", "initial spec"), "initial width")

            def gaussian(x):
                out = np.broadcast_to(base, x.shape + (m,)).copy()
                out[..., comp] += amp * np.exp(-(((x - center) / width) ** 2))
                return out

            return gaussian
        if kind == "sine":
            _reject_unknown(
                spec, ("kind", "component", "base", "amplitude", "wavelength", "phase"),
                "initial spec",
            )
            comp = _as_int(spec.get("component", 0), "initial component")
            base = _as_array(spec.get("base", np.zeros(m)), "initial base")
            amp = _as_float(_require(spec, "amplitude", "initial spec"), "initial amplitude")
            wavelength = _as_float(
                _require(spec, "wavelength", "initial spec"), "initial wavelength"
            )
            phase = _as_float(spec.get("phase", 0.0), "initial phase")

            def sine(x):
                out = np.broadcast_to(base, x.shape + (m,)).copy()
                out[..., comp] += amp * np.sin(2.0 * np.pi * x / wavelength + phase)
                return out

            return sine
        raise ConfigError(f"unknown initial kind {kind!r}; choose from {INITIAL_KINDS}")

    def build_boundary(self) -> BoundarySpec:
        spec = dict(self.boundary_spec)
        _reject_unknown(
            spec,
            ("left", "right", "left_forcing", "right_forcing", "periodic_after"),
            "boundary spec",
        )

        def forcing(key):
            name = spec.get(key)
            if name is None:
                return None
            if name not in FORCINGS:
                raise ConfigError(
                    f"unknown boundary forcing {name!r}; choose from {sorted(FORCINGS)}"
                )
            return FORCINGS[name]

        return BoundarySpec(
            left=spec.get("left", "periodic"),
            right=spec.get("right", "periodic"),
            left_state=forcing("left_forcing"),
            right_state=forcing("right_forcing"),
            periodic_after=spec.get("periodic_after"),
        )

    def build(self):
        """(model, mesh, boundary, initial-data function) ready to integrate."""
        model = self.build_model()
        self.flux.validate_for(model)
        mesh = self.build_mesh(model)
        return model, mesh, self.build_boundary(), self.initial_function(model)

    # serialization

    def to_dict(self) -> dict:
        courant = {"courant": self.courant.courant}
        if np.isfinite(self.courant.dt_max):
            courant["dt_max"] = self.courant.dt_max
        return {
            "name": self.name,
            "model": {"id": self.model_id, **self.model_params},
            "mesh": {"length": self.length, "n_cells": self.n_cells},
            "theta": dict(self.theta_spec),
            "initial": dict(self.initial_spec),
            "boundary": dict(self.boundary_spec),
            "degree": self.degree,
            "flux": {
                "classical_solver": self.flux.classical_solver,
                "theta_bar_rule": self.flux.theta_bar_rule,
                "delta_mapping_enabled": self.flux.delta_mapping_enabled,
            },
            "courant": courant,
            "t_end": self.t_end,
            "snapshots": list(self.snapshot_times),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        if not isinstance(data, dict):
            raise ConfigError("scenario config must be a mapping")
        _reject_unknown(
            data,
            ("name", "model", "mesh", "theta", "initial", "boundary", "degree",
             "flux", "courant", "t_end", "snapshots"),
            "scenario",
        )
        model = _as_mapping(_require(data, "model", "scenario"), "model spec")
        model_id = _require(model, "id", "model spec")
        model.pop("id")
        mesh = _as_mapping(_require(data, "mesh", "scenario"), "mesh spec")
        _reject_unknown(mesh, ("length", "n_cells"), "mesh spec")
        flux_spec = _as_mapping(data.get("flux", {}), "flux spec")
        _reject_unknown(
            flux_spec,
            ("classical_solver", "theta_bar_rule", "delta_mapping_enabled"),
            "flux spec",
        )
        courant_spec = _as_mapping(data.get("courant", {}), "courant spec")
        _reject_unknown(courant_spec, ("courant", "dt_max"), "courant spec")
        snapshots = data.get("snapshots", [])
        if not isinstance(snapshots, (list, tuple)):
            raise ConfigError("snapshots wants a list of times")
        return cls(
            name=str(data.get("name", "unnamed")),
            model_id=model_id,
            model_params=model,
            length=_as_float(_require(mesh, "length", "mesh spec"), "mesh length"),
            n_cells=_as_int(_require(mesh, "n_cells", "mesh spec"), "mesh n_cells"),
            theta_spec=_as_mapping(_require(data, "theta", "scenario"), "theta spec"),
            initial_spec=_as_mapping(_require(data, "initial", "scenario"), "initial spec"),
            boundary_spec=_as_mapping(data.get("boundary", {}), "boundary spec"),
            degree=_as_int(data.get("degree", 1), "degree"),
            flux=FluxConfig(**flux_spec),
            courant=CourantConfig(
                courant=_as_float(courant_spec.get("courant", 1.0 / 3.0), "courant"),
                dt_max=_as_float(courant_spec.get("dt_max", np.inf), "courant dt_max"),
            ),
            t_end=_as_float(_require(data, "t_end", "scenario"), "t_end"),
            snapshot_times=tuple(snapshots),
        )

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)

    @classmethod
    def from_yaml(cls, text: str) -> "Scenario":
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"config is not valid YAML: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "Scenario":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_yaml(fh.read())

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_yaml())


# built-in scenarios


def layered_scenario(cells_per_unit: int = 8) -> Scenario:
    """Alternating two-material bar, driven from the left, released to periodic.

    The domain [0, 300] holds 300 unit layers; resolution is cells per unit
    layer (>= 2 so each layer owns at least two cells).
    """
    if cells_per_unit < 2:
        raise ConfigError("need at least 2 cells per unit layer")
    return Scenario(
        name="elastic-layered",
        model_id="elastic",
        model_params={"beta": 0.3},
        length=300.0,
        n_cells=300 * cells_per_unit,
        theta_spec={
            "kind": "alternating",
            "period": 1.0,
            "values": [list(elastic_mod.LAYER_A), list(elastic_mod.LAYER_B)],
        },
        initial_spec={"kind": "zero"},
        boundary_spec={
            "left": "prescribed",
            "right": "outflow",
            "left_forcing": "elastic-drive",
            "periodic_after": elastic_mod.PERIODIC_SWITCH,
        },
        degree=1,
        flux=FluxConfig(theta_bar_rule="right"),
        courant=CourantConfig(courant=1.0 / 3.0),
        t_end=2850.0,
        snapshot_times=(120.0, 240.0, 840.0, 1500.0, 2850.0),
    )


def riemann_scenario(case: str) -> Scenario:
    """Two-segment road Riemann problem; case is one of 4a, 4b, 5a, 5b."""
    if case not in traffic_mod.RIEMANN_CASES:
        raise ConfigError(
            f"unknown Riemann case {case!r}; choose from {sorted(traffic_mod.RIEMANN_CASES)}"
        )
    spec = traffic_mod.RIEMANN_CASES[case]
    length = traffic_mod.ROAD_LENGTH
    n_cells = traffic_mod.ROAD_CELLS
    dx = length / n_cells
    x_split = round(spec.x0_fraction * length / dx) * dx
    lanes_left = spec.lane_ratio  # right segment normalized to one lane
    u_left = [lanes_left * r for r in spec.rho_left]
    u_right = list(spec.rho_right)
    return Scenario(
        name=case,
        model_id="traffic",
        model_params={
            "n_classes": len(spec.rho_left),
            "free_flow_speed": traffic_mod.ROAD_FREE_FLOW_SPEED,
            "rho_jam": 1.0,
        },
        length=length,
        n_cells=n_cells,
        theta_spec={
            "kind": "two-piece",
            "x_split": x_split,
            "left": [lanes_left, *traffic_mod.B_LEFT],
            "right": [1.0, *traffic_mod.B_RIGHT],
        },
        initial_spec={
            "kind": "riemann",
            "x_split": x_split,
            "left": u_left,
            "right": u_right,
        },
        boundary_spec={"left": "outflow", "right": "outflow"},
        degree=1,
        flux=FluxConfig(theta_bar_rule=spec.theta_bar_rule),
        courant=CourantConfig(courant=traffic_mod.ROAD_COURANT),
        t_end=traffic_mod.ROAD_T_END,
        snapshot_times=(traffic_mod.ROAD_T_END,),
    )


def builtin_names() -> tuple[str, ...]:
    return ("4a", "4b", "5a", "5b", "elastic-layered")


def builtin_scenario(name: str) -> Scenario:
    if name == "elastic-layered":
        return layered_scenario()
    if name in traffic_mod.RIEMANN_CASES:
        return riemann_scenario(name)
    raise ConfigError(f"unknown built-in scenario {name!r}; try one of {builtin_names()}")
