from ._core import *  # noqa: F401,F403
from ._core import (
    ConvergenceFailure,
    DegenerateState,
    DivergenceError,
    DomainError,
    Error,
    StateParams,
)

__all__ = [
    "ConvergenceFailure",
    "DegenerateState",
    "DivergenceError",
    "DomainError",
    "Error",
    "StateParams",
    "char_fn",
    "cross_moment",
    "cs_factor",
    "derive",
    "fock_amplitudes",
    "fock_coefficient",
    "g2",
    "g2_r0",
    "grid",
    "joint_pnd",
    "marginal_pnd",
    "mean_photon",
    "purity_closed",
    "purity_numeric",
    "qfunc",
    "quasi_numeric",
    "run_protocol",
    "second_moment",
    "squeeze_factors",
    "squeezing_loss_r",
    "wigner",
]
