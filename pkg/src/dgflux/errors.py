"""Exception types shared across the solver."""


class DgfluxError(Exception):
    """Base class for all dgflux errors."""


class ConfigError(DgfluxError):
    """Invalid scenario configuration or CLI input."""


class SolverError(DgfluxError):
    """Numerical failure during a run (blow-up, inadmissible state, infeasible mapping)."""


class InadmissibleStateError(SolverError):
    """A state left the model's admissible set."""
