"""Run orchestration: time loop, snapshot CSVs, manifest, convergence studies."""

from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError, SolverError
from .limiting import limit
from .rhs import semidiscrete_rhs
from .scenario import Scenario
from .state import DGState, project_initial
from .stepping import compute_dt, ssp_rk_step

CSV_PRECISION_ENV = "DGFLUX_CSV_PRECISION"
_TIME_SNAP = 1e-12


@dataclass(frozen=True)
class ProfileSnapshot:
    """Cell-average observables on the mesh at one instant."""

    time: float
    x: np.ndarray
    columns: tuple[str, ...]
    values: np.ndarray  # shape (n_cells, len(columns))

    def filename(self) -> str:
        return f"snapshot_t{self.time:g}.csv"

    def total_of(self, column_prefix: str | None = None) -> np.ndarray:
        """Row-wise sum over the value columns (all of them by default)."""
        if column_prefix is None:
            return self.values.sum(axis=1)
        picked = [i for i, c in enumerate(self.columns) if c.startswith(column_prefix)]
        return self.values[:, picked].sum(axis=1)


def csv_precision() -> int:
    raw = os.environ.get(CSV_PRECISION_ENV)
    if raw is None:
        return 17
    try:
        digits = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{CSV_PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if not 1 <= digits <= 17:
        raise ConfigError(f"{CSV_PRECISION_ENV} must be in 1..17, got {digits}")
    return digits


def write_snapshot_csv(path, snapshot: ProfileSnapshot) -> None:
    digits = csv_precision()
    fmt = f"%.{digits}g"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x," + ",".join(snapshot.columns) + "\n")
        for xi, row in zip(snapshot.x, snapshot.values):
            fh.write(",".join(fmt % v for v in (xi, *row)) + "\n")


def read_snapshot_csv(path, time_value: float | None = None) -> ProfileSnapshot:
    """Parse a snapshot CSV; the time is read from the file name if not given."""
    path = Path(path)
    if time_value is None:
        stem = path.stem
        if stem.startswith("snapshot_t"):
            try:
                time_value = float(stem[len("snapshot_t"):])
            except ValueError:
                time_value = 0.0
        else:
            time_value = 0.0
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        names = header.split(",")
        if not names or names[0] != "x":
            raise ConfigError(f"{path}: first CSV column must be 'x', got {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.shape[1] != len(names):
        raise ConfigError(f"{path}: {data.shape[1]} columns of data under {len(names)} headers")
    return ProfileSnapshot(
        time=float(time_value),
        x=data[:, 0],
        columns=tuple(names[1:]),
        values=data[:, 1:],
    )


@dataclass
class RunResult:
    scenario: Scenario
    snapshots: list[ProfileSnapshot]
    manifest: dict
    final_state: DGState
    mesh: object
    model: object


def _snapshot_from_state(state: DGState, mesh, model) -> ProfileSnapshot:
    values = model.observables(state.cell_averages, mesh.theta)
    return ProfileSnapshot(
        time=state.t,
        x=mesh.cell_centers.copy(),
        columns=tuple(model.observable_names),
        values=np.asarray(values, dtype=float),
    )


def run(scenario: Scenario, out_dir=None) -> RunResult:
    """Integrate a scenario, collecting snapshots at the requested times.

    Steps follow the CFL bound, clipped (never stretched) so each snapshot
    time and t_end are hit exactly. With ``out_dir`` set, one CSV per snapshot
    plus a JSON manifest are written there; solver failures still flush
    whatever was collected before the error is re-raised.
    """
    model, mesh, bc, u0 = scenario.build()
    state = project_initial(u0, mesh, scenario.degree)
    model.check_states(state.cell_averages, mesh.theta)
    state = limit(state, mesh, model, scenario.flux, bc)

    def rhs_op(s: DGState):
        return semidiscrete_rhs(s, mesh, model, scenario.flux, bc)

    def limit_op(s: DGState) -> DGState:
        return limit(s, mesh, model, scenario.flux, bc)

    snapshot_times = list(scenario.snapshot_times)
    if scenario.t_end == 0.0 and not snapshot_times:
        snapshot_times = [0.0]
    targets = sorted(set(snapshot_times) | {scenario.t_end})
    wants_csv = set(snapshot_times)

    snapshots: list[ProfileSnapshot] = []
    if targets and targets[0] == 0.0:
        if 0.0 in wants_csv:
            snapshots.append(_snapshot_from_state(state, mesh, model))
        targets = targets[1:]

    initial_totals = mesh.dx * state.cell_averages.sum(axis=0)
    first_avg = state.cell_averages[[0, -1]].copy()
    inflow_total = np.zeros(state.n_components)
    n_steps = 0
    time_scale = max(scenario.t_end, 1.0)
    error_message = None
    started = time.perf_counter()

    try:
        for target in targets:
            while state.t < target - _TIME_SNAP * time_scale:
                dt = compute_dt(state, mesh, model, scenario.courant, scenario.flux, bc)
                clipped = False
                if state.t + dt >= target - _TIME_SNAP * time_scale:
                    dt = target - state.t
                    clipped = True
                if dt <= 0:
                    raise SolverError(f"time step collapsed to {dt:.3g} at t = {state.t:.6g}")
                state, inflow = ssp_rk_step(state, dt, rhs_op, limit_op)
                inflow_total += inflow
                n_steps += 1
                if clipped:
                    state.t = target
            state.t = target
            if target in wants_csv:
                snapshots.append(_snapshot_from_state(state, mesh, model))
    except SolverError as exc:
        error_message = str(exc)

    wall = time.perf_counter() - started
    final_totals = mesh.dx * state.cell_averages.sum(axis=0)
    abs_mass = mesh.dx * np.abs(state.cell_averages).sum(axis=0)
    defect = (final_totals - initial_totals) - inflow_total
    scale = np.maximum.reduce(
        [np.abs(initial_totals), np.abs(final_totals), abs_mass, np.abs(inflow_total)]
    )
    defect_rel = np.abs(defect) / np.maximum(scale, 1e-300)
    last_avg = state.cell_averages[[0, -1]]
    manifest = {
        "scenario": scenario.to_dict(),
        "status": "completed" if error_message is None else f"failed: {error_message}",
        "n_steps": n_steps,
        "wall_time_s": round(wall, 6),
        "final_time": state.t,
        "initial_totals": initial_totals.tolist(),
        "final_totals": final_totals.tolist(),
        "boundary_inflow_integral": inflow_total.tolist(),
        "conservation_defect_abs": defect.tolist(),
        "conservation_defect_rel": defect_rel.tolist(),
        "edge_cell_max_change": float(np.max(np.abs(last_avg - first_avg))),
        "snapshots": [s.filename() for s in snapshots],
    }

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for snap in snapshots:
            write_snapshot_csv(out / snap.filename(), snap)
        with open(out / "manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")

    if error_message is not None:
        raise SolverError(error_message)
    return RunResult(scenario, snapshots, manifest, state, mesh, model)


def convergence_study(scenario: Scenario, mesh_sizes, reference_multiple: int = 4):
    """Self-convergence table against a finer reference mesh.

    The scenario must use constant parameters and smooth initial data, and all
    requested sizes must divide the reference size. Returns a list of rows
    {n_cells, l1_error, order} with order = None on the first row.
    """
    if scenario.theta_spec.get("kind") != "uniform":
        raise ConfigError("convergence study needs spatially constant parameters")
    if scenario.initial_spec.get("kind") == "riemann":
        raise ConfigError("convergence study needs smooth initial data")
    sizes = sorted(int(n) for n in mesh_sizes)
    if len(sizes) < 2:
        raise ConfigError("need at least two mesh sizes")
    n_ref = sizes[-1] * reference_multiple
    for n in sizes:
        if n_ref % n != 0:
            raise ConfigError(f"reference mesh {n_ref} is not a multiple of {n}")

    def final_averages(n_cells: int) -> np.ndarray:
        variant = replace(
            scenario,
            n_cells=n_cells,
            snapshot_times=(),
            name=f"{scenario.name}-n{n_cells}",
        )
        return run(variant).final_state.cell_averages

    reference = final_averages(n_ref)
    rows = []
    previous_error = None
    previous_n = None
    for n in sizes:
        factor = n_ref // n
        restricted = reference.reshape(n, factor, -1).mean(axis=1)
        averages = final_averages(n)
        dx = scenario.length / n
        error = float(dx * np.abs(averages - restricted).sum())
        order = None
        if previous_error is not None and error > 0 and previous_error > 0:
            order = math.log(previous_error / error) / math.log(n / previous_n)
        rows.append({"n_cells": n, "l1_error": error, "order": order})
        previous_error, previous_n = error, n
    return rows
