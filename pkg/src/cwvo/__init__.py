"""Chebyshev-wavelet collocation for variable-order fractional transport.

Solves the time-fractional mobile-immobile advection-dispersion equation
with a space-time dependent Caputo order on the unit square, by expanding
the solution in Chebyshev wavelets and collocating with operational
matrices for the integer and variable-order derivatives.
"""

from .basis import (
    BasisVector,
    WaveletBasis,
    chebyshev_weight,
    chebyshev_zeros,
    phi_vector,
    psi_vector,
    shifted_chebyshev,
    shifted_chebyshev_monomial_coeffs,
)
from .caputo_oracle import ScalarField, caputo_vo_monomial, caputo_vo_quadrature
from .model import ProblemSpec, builtin_example, residual_source_check
from .opmat import (
    DenseMatrix,
    MonomialChangeFactor,
    OrderFunction,
    condition_estimate_inf,
    derivative_matrix,
    derivative_matrix_power,
    monomial_change_factor,
    monomial_change_matrix,
    vo_monomial_matrix,
    vo_wavelet_matrix,
)
from .scalars import DEFAULT_TOLERANCES, ToleranceConfig, gamma
from .solver import (
    CollocationSystem,
    SingularSystemError,
    Solution,
    assemble,
    error_report,
    eval_solution,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "BasisVector",
    "WaveletBasis",
    "chebyshev_weight",
    "chebyshev_zeros",
    "phi_vector",
    "psi_vector",
    "shifted_chebyshev",
    "shifted_chebyshev_monomial_coeffs",
    "ScalarField",
    "caputo_vo_monomial",
    "caputo_vo_quadrature",
    "ProblemSpec",
    "builtin_example",
    "residual_source_check",
    "DenseMatrix",
    "MonomialChangeFactor",
    "OrderFunction",
    "condition_estimate_inf",
    "derivative_matrix",
    "derivative_matrix_power",
    "monomial_change_factor",
    "monomial_change_matrix",
    "vo_monomial_matrix",
    "vo_wavelet_matrix",
    "DEFAULT_TOLERANCES",
    "ToleranceConfig",
    "gamma",
    "CollocationSystem",
    "SingularSystemError",
    "Solution",
    "assemble",
    "error_report",
    "eval_solution",
    "solve",
    "__version__",
]
