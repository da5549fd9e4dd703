"""Legendre modal basis and Gauss quadrature on the reference cell [-1, 1].

The solver expands the in-cell solution in Legendre polynomials L_0..L_k
(orthogonal on [-1, 1], L_l(1) = 1, L_l(-1) = (-1)^l).  Degrees 0 to 2 are
supported; volume integrals use a (k+1)-point Gauss-Legendre rule, which is
exact for the polynomial integrands that appear in projection and in the
stiffness term.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_DEGREE = 2


def legendre_eval(l: int, s):
    """Value and s-derivative of the Legendre polynomial L_l at s in [-1, 1].

    Accepts scalars or arrays.  Only l in {0, 1, 2} is supported.
    """
    if not 0 <= l <= MAX_DEGREE:
        raise ValueError(f"basis index {l} outside supported range 0..{MAX_DEGREE}")
    s = np.asarray(s, dtype=float)
    if l == 0:
        return np.ones_like(s), np.zeros_like(s)
    if l == 1:
        return s, np.ones_like(s)
    return 1.5 * s * s - 0.5, 3.0 * s


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if abs(float(self.weights.sum()) - 2.0) > 1e-13:
            raise ValueError("quadrature weights must sum to 2")

    @classmethod
    def gauss(cls, npoints: int) -> "QuadratureRule":
        if npoints < 1:
            raise ValueError("need at least one quadrature point")
        nodes, weights = np.polynomial.legendre.leggauss(npoints)
        return cls(nodes=nodes, weights=weights)


@lru_cache(maxsize=8)
def basis_tables(degree: int):
    """Quadrature rule plus basis values/derivatives tabulated at its nodes.

    Returns (rule, values, derivs) where values[l, g] = L_l(s_g) and
    derivs[l, g] = L_l'(s_g) for the (degree+1)-point Gauss rule.
    """
    if not 0 <= degree <= MAX_DEGREE:
        raise ValueError(f"degree {degree} outside supported range 0..{MAX_DEGREE}")
    rule = QuadratureRule.gauss(degree + 1)
    values = np.empty((degree + 1, degree + 1))
    derivs = np.empty_like(values)
    for l in range(degree + 1):
        values[l], derivs[l] = legendre_eval(l, rule.nodes)
    return rule, values, derivs


def edge_values(degree: int) -> tuple[np.ndarray, np.ndarray]:
    """(L_l(-1), L_l(1)) for l = 0..degree."""
    left = np.array([(-1.0) ** l for l in range(degree + 1)])
    right = np.ones(degree + 1)
    return left, right
