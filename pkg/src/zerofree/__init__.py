"""Verification and search toolkit for explicit zero-free regions of the
Riemann zeta-function.

The library re-derives every constant in the known explicit zero-free
regions from first formulas at configurable precision, re-runs the
simulated-annealing search for the non-negative trigonometric
polynomials those regions rest on, and assembles the widest known
region as a function of height.
"""

from .annealer import AnnealConfig, AnnealResult, anneal, random_init, step
from .digits import DEFAULT_DPS
from .regions import (RegionBound, RegionParams, VerificationReport,
                      asymptotic_quantity, asymptotic_r2, best_closing_m1,
                      builtin_bounds, crossover, envelope, envelope_table,
                      lemma47_rhs, optimize_E, pnt_exponent, verify_theorem1,
                      verify_theorem4)
from .smoothing import (C5_of_R, H_of_R, SmoothingConstants, W0_eval,
                        W_prime_at_zero, d1, exp_cubic_bound, h1, h4,
                        solve_theta, w_at_zero)
from .trigpoly import (TrigPoly, bundled_p40, bundled_p46, certify_nonnegative,
                       evaluate, expand_product_form, ford_p4,
                       from_cosine_coeffs, from_generators, load_polynomial,
                       nielsen_p5, parse_polynomial, save_polynomial)
from .zetabounds import (LogScales, N_t_eta_bound, NT_error, RichertParams,
                         ramare_log_zeta, subweyl_J, subweyl_J_log,
                         zero_sum_bound)

__version__ = "0.1.0"

__all__ = [
    "AnnealConfig", "AnnealResult", "anneal", "random_init", "step",
    "DEFAULT_DPS",
    "RegionBound", "RegionParams", "VerificationReport",
    "asymptotic_quantity", "asymptotic_r2", "best_closing_m1",
    "builtin_bounds", "crossover", "envelope", "envelope_table",
    "lemma47_rhs", "optimize_E", "pnt_exponent", "verify_theorem1",
    "verify_theorem4",
    "C5_of_R", "H_of_R", "SmoothingConstants", "W0_eval", "W_prime_at_zero",
    "d1", "exp_cubic_bound", "h1", "h4", "solve_theta", "w_at_zero",
    "TrigPoly", "bundled_p40", "bundled_p46", "certify_nonnegative",
    "evaluate", "expand_product_form", "ford_p4", "from_cosine_coeffs",
    "from_generators", "load_polynomial", "parse_polynomial", "nielsen_p5", "save_polynomial",
    "LogScales", "N_t_eta_bound", "NT_error", "RichertParams",
    "ramare_log_zeta", "subweyl_J", "subweyl_J_log", "zero_sum_bound",
    "__version__",
]
