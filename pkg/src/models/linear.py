# src/models/linear.py
"""
Линейные поля F(x) = Ax с постоянным якобианом на всём ℝⁿ.
"""

from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from linalg.dense import as_square
from models.vector_field import BoxDomain, VectorField

# матрица из примера, где μ_{2,Q}(A) < 0, но μ_{1,Q} сети положительна
COUNTEREXAMPLE_MATRIX = ((-2.0, 1.0), (1.0, -2.0))


def linear_field(a: ArrayLike, name: str = "linear", cap: Optional[float] = 1.0) -> VectorField:
    mat = as_square(a, "matrix")
    n = mat.shape[0]

    def rhs(x, t):
        return x @ mat.T

    def jac(x, t):
        return mat

    return VectorField(
        name=name,
        dim=n,
        rhs=rhs,
        domain=BoxDomain.unbounded(n),
        jac=jac,
        params={"matrix": mat.tolist()},
        default_cap=cap,
    )


def counterexample_field() -> VectorField:
    return linear_field(np.array(COUNTEREXAMPLE_MATRIX), name="counterexample")
