"""Exact q-Ehrhart series, harmonic spaces and vanishing-order filtrations of polytopes."""

from ._core import (
    BudgetExceeded,
    ParseError,
    Polytope,
    ehrhart_series,
    filtration_dims,
    gk_rational_triangle,
    gk_report,
    gr_hilbert,
    gr_ideal_basis,
    harmonic_basis,
    lattice_points,
    lemma32_check,
    load_polytope,
    max_vanishing_order,
    minimal_generators,
    multiplicativity_check,
    parse_polytope,
    q_ehrhart,
)

__all__ = [
    "BudgetExceeded",
    "ParseError",
    "Polytope",
    "ehrhart_series",
    "filtration_dims",
    "gk_rational_triangle",
    "gk_report",
    "gr_hilbert",
    "gr_ideal_basis",
    "harmonic_basis",
    "lattice_points",
    "lemma32_check",
    "load_polytope",
    "max_vanishing_order",
    "minimal_generators",
    "multiplicativity_check",
    "parse_polytope",
    "q_ehrhart",
]
