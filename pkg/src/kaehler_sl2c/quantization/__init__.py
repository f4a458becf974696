"""Holomorphic quantization: polynomial quotients, operators, integrability cutoff."""

from .cutoff import (
    MaxDegree,
    degree_decision,
    degree_integrable,
    dim_H_poly,
    k_of,
    max_degree_m,
    semiclassical_ratio,
)
from .inner_product import (
    MCEstimate,
    gram_hermiticity,
    monte_carlo_inner_product,
    monte_carlo_inner_products,
    truncation_radius,
)
from .poly import (
    DEFINING,
    QUADRIC,
    Poly4,
    basis_H_poly,
    is_quadric_divisible,
    monomials,
    quantum_operator,
    reduce_mod_ideal,
    reduction_rank,
    symbolic_field,
    z,
)
from .report import DivisibleTopPartWarning, QuantizationReport, in_H_poly, quantization_report

__all__ = [
    "DEFINING",
    "DivisibleTopPartWarning",
    "MCEstimate",
    "MaxDegree",
    "Poly4",
    "QUADRIC",
    "QuantizationReport",
    "basis_H_poly",
    "degree_decision",
    "degree_integrable",
    "dim_H_poly",
    "gram_hermiticity",
    "in_H_poly",
    "is_quadric_divisible",
    "k_of",
    "max_degree_m",
    "monomials",
    "monte_carlo_inner_product",
    "monte_carlo_inner_products",
    "quantization_report",
    "quantum_operator",
    "reduce_mod_ideal",
    "reduction_rank",
    "semiclassical_ratio",
    "symbolic_field",
    "truncation_radius",
    "z",
]
