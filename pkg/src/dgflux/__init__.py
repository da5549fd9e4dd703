"""RKDG solver for 1-D conservation laws with spatially discontinuous fluxes."""

from .basis import QuadratureRule, basis_tables, edge_values, legendre_eval
from .errors import ConfigError, DgfluxError, InadmissibleStateError, SolverError
from .fluxes import FluxConfig, MappedPair, interface_flux, map_traces, theta_intermediate
from .limiting import limit, minmod
from .mesh import BoundarySpec, Mesh
from .models import DEMAND, SUPPLY, ElasticModel, SystemModel, TrafficModel
from .rhs import semidiscrete_rhs
from .runner import (
    ProfileSnapshot,
    RunResult,
    convergence_study,
    read_snapshot_csv,
    run,
    write_snapshot_csv,
)
from .scenario import Scenario, builtin_names, builtin_scenario
from .state import DGState, all_traces, evaluate_trace, project_initial
from .stepping import CourantConfig, RKScheme, compute_dt, ssp_rk_step
from .waves import PulseReport, Wave, WaveReport, analyze_waves, detect_pulses

__all__ = [
    "QuadratureRule",
    "basis_tables",
    "edge_values",
    "legendre_eval",
    "ConfigError",
    "DgfluxError",
    "InadmissibleStateError",
    "SolverError",
    "FluxConfig",
    "MappedPair",
    "interface_flux",
    "map_traces",
    "theta_intermediate",
    "limit",
    "minmod",
    "Mesh",
    "DEMAND",
    "SUPPLY",
    "ElasticModel",
    "SystemModel",
    "TrafficModel",
    "semidiscrete_rhs",
    "ProfileSnapshot",
    "RunResult",
    "convergence_study",
    "read_snapshot_csv",
    "run",
    "write_snapshot_csv",
    "BoundarySpec",
    "Scenario",
    "builtin_names",
    "builtin_scenario",
    "DGState",
    "all_traces",
    "evaluate_trace",
    "project_initial",
    "CourantConfig",
    "RKScheme",
    "compute_dt",
    "ssp_rk_step",
    "PulseReport",
    "Wave",
    "WaveReport",
    "analyze_waves",
    "detect_pulses",
]
