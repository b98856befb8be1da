"""Numerics for theta functions, Appell sums, rank-2 indefinite theta series,
and compositions of morphisms between lines on the flat torus."""

__version__ = "1.0.0"

from .core import (
    BoundaryProximity,
    ConvergenceBudgetExceeded,
    DEFAULT_BUDGET,
    DomainError,
    EvalError,
    Modulus,
    PoleProximity,
    SummationBudget,
)
from .theta import eta_cubed_constant, theta, theta_prime, theta_scaled
from .kronecker import f_closed, f_series
from .appell import g0, g0_minus_g, g_series, kappa, p_correction
from .hfun import h0_series, h_series, psi_closed
from .lattice import (
    ConeRegion,
    LineOnTorus,
    QuadLatticeConfig,
    build_quad_config,
    cone_membership,
    hom_degree,
    ideal_of,
    intersection_point,
    quadratic_Q,
    shift_vector,
    triple_ideal,
)
from .verify import (
    IdentityReport,
    SUITES,
    verify_eta_const,
    verify_five_term,
    verify_fg_identity,
    verify_functional_equation,
    verify_g_bridge,
    verify_hqp,
    verify_identity1,
    verify_identity2,
    verify_kronecker_id,
    verify_m2_associativity,
    verify_psi,
    verify_sign_determination,
    verify_t_quasi,
)
from .fukaya import (
    CompositionResult,
    F_series,
    composition_by_point,
    m2_generic,
    m3_generic,
    m3_square,
    m3_trapezoid,
    polygon_oracle,
    theta_slope_coefficient,
)

__all__ = [
    "BoundaryProximity",
    "ConvergenceBudgetExceeded",
    "DEFAULT_BUDGET",
    "DomainError",
    "EvalError",
    "Modulus",
    "PoleProximity",
    "SummationBudget",
    "eta_cubed_constant",
    "theta",
    "theta_prime",
    "theta_scaled",
    "f_closed",
    "f_series",
    "g0",
    "g0_minus_g",
    "g_series",
    "kappa",
    "p_correction",
    "h0_series",
    "h_series",
    "psi_closed",
    "ConeRegion",
    "LineOnTorus",
    "QuadLatticeConfig",
    "build_quad_config",
    "cone_membership",
    "hom_degree",
    "ideal_of",
    "intersection_point",
    "quadratic_Q",
    "shift_vector",
    "triple_ideal",
    "CompositionResult",
    "F_series",
    "composition_by_point",
    "m2_generic",
    "m3_generic",
    "m3_square",
    "m3_trapezoid",
    "polygon_oracle",
    "theta_slope_coefficient",
    "IdentityReport",
    "SUITES",
    "verify_eta_const",
    "verify_five_term",
    "verify_fg_identity",
    "verify_functional_equation",
    "verify_g_bridge",
    "verify_hqp",
    "verify_identity1",
    "verify_identity2",
    "verify_kronecker_id",
    "verify_m2_associativity",
    "verify_psi",
    "verify_sign_determination",
    "verify_t_quasi",
]
