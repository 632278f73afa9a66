"""Exact ideal arithmetic, reductions and cores of ideals in polynomial rings."""

from .core import (CoreResult, balancedness_check, core_ci_power, core_conjecture,
                   core_formula, core_montecarlo, gamma_upper_estimate, integral_closure_member)
from .groebner import GroebnerBasis, dimension, eliminate, groebner_basis, normal_form
from .ideal import (Ideal, height, ideal_colon, ideal_equal, ideal_intersect, ideal_member,
                    ideal_power, ideal_product, ideal_sum, maximal_ideal)
from .matrix import PolyMatrix, g_s_check, minor_ideal, pfaffian, pfaffian_ideal
from .reductions import (ReductionReport, SamplerConfig, analytic_spread, is_reduction,
                         reduction_number, sample_minimal_reduction)
from .ring import FieldSpec, Polynomial, PolyRing, TermOrder, parse_poly, term_compare

__version__ = "0.1.0"

__all__ = [
    "CoreResult", "FieldSpec", "GroebnerBasis", "Ideal", "PolyMatrix", "PolyRing", "Polynomial",
    "ReductionReport", "SamplerConfig", "TermOrder", "analytic_spread", "balancedness_check",
    "core_ci_power", "core_conjecture", "core_formula", "core_montecarlo", "dimension",
    "eliminate", "g_s_check", "gamma_upper_estimate", "groebner_basis", "height",
    "ideal_colon", "ideal_equal", "ideal_intersect", "ideal_member", "ideal_power",
    "ideal_product", "ideal_sum", "integral_closure_member", "is_reduction", "maximal_ideal",
    "minor_ideal", "normal_form", "parse_poly", "pfaffian", "pfaffian_ideal",
    "reduction_number", "sample_minimal_reduction", "term_compare",
]
