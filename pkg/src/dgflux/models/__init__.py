"""Physical systems plugged into the solver.

A model bundles the flux f(u, theta), eigenvalue information, the admissible
set, and the flow-preserving interface mapping that moves a state from one
parameter value to another.
"""

from .base import DEMAND, SUPPLY, SystemModel
from .elastic import ElasticModel
from .traffic import TrafficModel

__all__ = ["SystemModel", "ElasticModel", "TrafficModel", "DEMAND", "SUPPLY"]
