"""
Векторные поля реакций и модель фермента.
"""

from models.enzyme import (
    EnzymeParams,
    enzyme_boundary_inflow,
    enzyme_conservation_check,
    enzyme_equilibrium,
    enzyme_forced,
    enzyme_full,
    enzyme_l1_rate,
    enzyme_l1_weight,
    enzyme_reduced,
    lift,
    project,
)
from models.linear import COUNTEREXAMPLE_MATRIX, counterexample_field, linear_field
from models.registry import MODEL_REGISTRY, build_model
from models.vector_field import BoxDomain, VectorField, check_jacobian, finite_difference_jacobian

__all__ = [
    "BoxDomain", "COUNTEREXAMPLE_MATRIX", "EnzymeParams", "MODEL_REGISTRY",
    "VectorField", "build_model", "check_jacobian", "counterexample_field",
    "enzyme_boundary_inflow", "enzyme_conservation_check", "enzyme_equilibrium",
    "enzyme_forced", "enzyme_full", "enzyme_l1_rate", "enzyme_l1_weight",
    "enzyme_reduced", "finite_difference_jacobian", "lift", "linear_field", "project",
]
