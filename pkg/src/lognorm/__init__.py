"""
Логарифмические нормы μ_{p,Q}, полускалярные произведения и
логарифмические константы Липшица векторных полей.
"""

from lognorm.estimators import mu_estimate, quotient_trace
from lognorm.lipschitz import GridSpec, LipschitzEstimate, lipschitz_constant, lipschitz_over
from lognorm.measures import MeasureResult, mu_closed_form, mu_weighted, weighted_similarity
from lognorm.semi_inner import semi_inner_plus

__all__ = [
    "GridSpec", "LipschitzEstimate", "MeasureResult", "lipschitz_constant",
    "lipschitz_over", "mu_closed_form", "mu_estimate", "mu_weighted",
    "quotient_trace", "semi_inner_plus", "weighted_similarity",
]
