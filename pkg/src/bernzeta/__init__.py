"""bernzeta: exact Bernoulli numbers/polynomials from forward-difference
formulas, plus globally convergent series for Riemann/Hurwitz zeta and
complex-order Bernoulli functions, cross-validated by Mellin quadrature.
"""

from .exact import (
    B0,
    DifferenceTable,
    PolyDifferenceValue,
    bernoulli_formula_a,
    bernoulli_formula_b,
    bernoulli_poly,
    bernoulli_poly_at,
    bernoulli_poly_oracle,
    bernoulli_recurrence_oracle,
    bernoulli_worpitzky,
    binomial,
    forward_difference,
    poly_difference,
    stirling2,
)
from .numeric import (
    DEFAULT_CONFIG,
    ConvergenceError,
    DomainError,
    EvalConfig,
    PoleError,
    PrecisionComplex,
    QuadratureError,
    SeriesResult,
)
from .quadrature import (
    gamma_real,
    kernel_eta,
    kernel_phi,
    kernel_phi_x,
    partial_sum_integral_check,
    zeta_by_quadrature,
)
from .series import (
    bernoulli_complex,
    bernoulli_poly_complex,
    hurwitz_zeta,
    riemann_zeta,
    riemann_zeta_hasse,
    series_term_hurwitz,
    series_term_riemann,
)

__version__ = "1.0.0"

__all__ = [
    "B0",
    "DifferenceTable",
    "PolyDifferenceValue",
    "binomial",
    "forward_difference",
    "stirling2",
    "bernoulli_worpitzky",
    "bernoulli_formula_a",
    "bernoulli_formula_b",
    "bernoulli_recurrence_oracle",
    "poly_difference",
    "bernoulli_poly_at",
    "bernoulli_poly",
    "bernoulli_poly_oracle",
    "PrecisionComplex",
    "EvalConfig",
    "SeriesResult",
    "DEFAULT_CONFIG",
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "QuadratureError",
    "series_term_riemann",
    "series_term_hurwitz",
    "riemann_zeta",
    "riemann_zeta_hasse",
    "hurwitz_zeta",
    "bernoulli_complex",
    "bernoulli_poly_complex",
    "kernel_phi",
    "kernel_phi_x",
    "kernel_eta",
    "gamma_real",
    "zeta_by_quadrature",
    "partial_sum_integral_check",
    "__version__",
]
