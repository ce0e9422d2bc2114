"""AMG-preconditioned conjugate gradients with Chebyshev polynomial smoothers."""

from ._core import (
    CsrMatrix,
    aniso2d_q1,
    amg_solve,
    c1_coefficient,
    cheb1_eval,
    cheb2_eval,
    cheb4_eval,
    fused_update,
    gamma_cheb4,
    lambda_of,
    optimize_beta,
    phi,
    poisson3d,
    scaled_cheb_eval,
    smoother_apply,
    solve_a_star,
    spectrum_grid,
    theorem_bounds,
)

__all__ = [
    "CsrMatrix",
    "aniso2d_q1",
    "amg_solve",
    "c1_coefficient",
    "cheb1_eval",
    "cheb2_eval",
    "cheb4_eval",
    "fused_update",
    "gamma_cheb4",
    "lambda_of",
    "optimize_beta",
    "phi",
    "poisson3d",
    "scaled_cheb_eval",
    "smoother_apply",
    "solve_a_star",
    "spectrum_grid",
    "theorem_bounds",
]
