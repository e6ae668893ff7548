from ._minsurf import (
    admissible,
    beta,
    derive_params,
    domain_mesh,
    gamma,
    gauss_squares,
    obj_string,
    period_integrals,
    piece_mesh,
    solve_period,
    tilde_integrals,
    verify,
)

__all__ = [
    "admissible",
    "beta",
    "derive_params",
    "domain_mesh",
    "gamma",
    "gauss_squares",
    "obj_string",
    "period_integrals",
    "piece_mesh",
    "solve_period",
    "tilde_integrals",
    "verify",
]
