"""
Плотная линейная алгебра: взвешенные p-нормы, произведение Кронекера,
симметричный спектр, операторные нормы.
"""

from linalg.dense import (
    DenseMatrix,
    DenseVector,
    as_matrix,
    as_square,
    as_vector,
    kronecker,
    spectral_abscissa,
    symmetric_eigenvalues,
)
from linalg.norms import (
    WeightedNorm,
    format_p,
    grid_norm,
    grid_weighted_norm,
    normalized_p_mean,
    p_norm,
    parse_p,
    species_grid_norms,
    weighted_p_norm,
)
from linalg.operator_norm import OperatorNorm, norm_increment, operator_p_norm

__all__ = [
    "DenseMatrix", "DenseVector", "OperatorNorm", "WeightedNorm",
    "as_matrix", "as_square", "as_vector", "format_p", "grid_norm",
    "grid_weighted_norm", "kronecker", "norm_increment", "normalized_p_mean",
    "operator_p_norm", "p_norm", "parse_p", "spectral_abscissa",
    "species_grid_norms", "symmetric_eigenvalues", "weighted_p_norm",
]
