"""Spectral invariants of integrable polygons."""

from ._polyspec import (
    BoundaryCondition,
    HeatMethod,
    Shape,
    acceptance_check,
    determinant,
    eigenvalues,
    epstein_zeta,
    fit_sharp_rate,
    heat_constant_term,
    heat_trace,
    spectral_zeta,
    torus_heat_trace,
    zeta_prime_zero,
)

__all__ = [
    "BoundaryCondition",
    "HeatMethod",
    "Shape",
    "acceptance_check",
    "determinant",
    "eigenvalues",
    "epstein_zeta",
    "fit_sharp_rate",
    "heat_constant_term",
    "heat_trace",
    "spectral_zeta",
    "torus_heat_trace",
    "zeta_prime_zero",
]
