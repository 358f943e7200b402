"""csrecover: compressed-sensing recovery of signals and images.

Reconstructs a signal from a small random fraction of its entries by
solving an l1-regularized least-squares problem over an orthonormal DCT
synthesis basis, with two independent solvers (coordinate-descent LASSO and
OWL-QN on an L-BFGS core) and a NetPBM image pipeline on top.
"""

from .errors import (
    BudgetError,
    CsRecoverError,
    CurvatureError,
    DegenerateColumnError,
    DimensionError,
    DomainError,
    ImageFormatError,
    IterationLimitError,
    LineSearchError,
    SizeCapError,
    ZeroDerivativeError,
)
from .optimize import (
    LbfgsMemory,
    SolveResult,
    SolverConfig,
    bfgs_update,
    lasso_cd,
    lasso_kkt_residual,
    lbfgs_direction,
    lbfgs_minimize,
    newton_minimize_1d,
    newton_minimize_nd,
    newton_root,
    owlqn_minimize,
    pseudo_gradient,
    soft_threshold,
)
from .reconstruct import (
    DEFAULT_ALPHA,
    ImageBuffer,
    ReconstructionReport,
    load_image,
    psnr,
    reconstruct_channel,
    reconstruct_image,
    save_image,
    solve_measurements,
    zero_filled_baseline,
)
from .sampling import (
    MeasurementBudget,
    SampleSet,
    SplitMix64,
    choose_without_replacement,
    estimate_measurements,
    measure,
    mutual_coherence,
    sample_indices,
)
from .synth import run_recovery_trials, sparse_spike_coeffs
from .transform import (
    DENSE_CAP,
    ThetaOperator,
    dct_forward,
    dct_inverse,
    dense_psi,
    synthesis_rows,
    theta_adjoint,
    theta_apply,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # transform
    "dct_forward", "dct_inverse", "dense_psi", "synthesis_rows",
    "ThetaOperator", "theta_apply", "theta_adjoint", "DENSE_CAP",
    # sampling
    "SplitMix64", "choose_without_replacement", "sample_indices", "measure",
    "SampleSet", "MeasurementBudget", "estimate_measurements", "mutual_coherence",
    # optimize
    "SolverConfig", "SolveResult", "soft_threshold",
    "newton_root", "newton_minimize_1d", "newton_minimize_nd", "bfgs_update",
    "LbfgsMemory", "lbfgs_direction", "lbfgs_minimize",
    "pseudo_gradient", "lasso_kkt_residual", "owlqn_minimize", "lasso_cd",
    # reconstruct
    "ImageBuffer", "load_image", "save_image", "psnr", "zero_filled_baseline",
    "reconstruct_channel", "reconstruct_image", "solve_measurements",
    "ReconstructionReport", "DEFAULT_ALPHA",
    # synth
    "sparse_spike_coeffs", "run_recovery_trials",
    # errors
    "CsRecoverError", "DimensionError", "SizeCapError", "BudgetError",
    "DomainError", "ZeroDerivativeError", "IterationLimitError",
    "LineSearchError", "CurvatureError", "DegenerateColumnError", "ImageFormatError",
]
