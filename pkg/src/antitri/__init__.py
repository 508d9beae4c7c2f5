"""Exact anti-triangular matrices with explicitly known eigenvalues."""

from .eigenprop import (
    en_membership,
    full_adep_check,
    hk_evaluate,
    property_report,
    uniqueness_rank_check,
    weak_adep_check,
)
from .exact import Matrix, Poly, char_poly, sturm_count
from .moments import Measure, a_mu_matrix, bernstein_matrix, cm_check, d_condition_check
from .particle import JumpRate, SiteDistribution, extend_g, nu_classification, spectral_conditions
from .pascal import anti_identity, conjugate_q, pascal, pascal_inverse, phi_map, pi_map, vp_membership

__all__ = [
    "JumpRate",
    "Matrix",
    "Measure",
    "Poly",
    "SiteDistribution",
    "a_mu_matrix",
    "anti_identity",
    "bernstein_matrix",
    "char_poly",
    "cm_check",
    "conjugate_q",
    "d_condition_check",
    "en_membership",
    "extend_g",
    "full_adep_check",
    "hk_evaluate",
    "nu_classification",
    "pascal",
    "pascal_inverse",
    "phi_map",
    "pi_map",
    "property_report",
    "spectral_conditions",
    "sturm_count",
    "uniqueness_rank_check",
    "vp_membership",
    "weak_adep_check",
]
