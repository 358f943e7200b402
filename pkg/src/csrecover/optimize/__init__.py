"""Solver stack: Newton lineage, dense BFGS, two-loop L-BFGS, OWL-QN, and
coordinate-descent LASSO.

Solvers are deterministic single-threaded state machines: identical inputs
(including the config) produce bit-identical iterate sequences.  Objective
and gradient callbacks must be pure.
"""

from .common import NNZ_EPS, SolveResult, SolverConfig, soft_threshold
from .lasso import lasso_cd
from .lbfgs import LbfgsMemory, lbfgs_direction, lbfgs_minimize
from .newton import bfgs_update, newton_minimize_1d, newton_minimize_nd, newton_root
from .owlqn import lasso_kkt_residual, owlqn_minimize, pseudo_gradient

__all__ = [
    "NNZ_EPS",
    "SolverConfig",
    "SolveResult",
    "soft_threshold",
    "newton_root",
    "newton_minimize_1d",
    "newton_minimize_nd",
    "bfgs_update",
    "LbfgsMemory",
    "lbfgs_direction",
    "lbfgs_minimize",
    "pseudo_gradient",
    "lasso_kkt_residual",
    "owlqn_minimize",
    "lasso_cd",
]
