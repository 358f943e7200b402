"""Shared solver types and small numeric helpers."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

NNZ_EPS = 1e-10
"""Magnitude below which a coefficient counts as zero in reports."""


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by every iterative solver.

    lam is the direct weight of the l1 term in 0.5*||theta s - y||^2 + lam*||s||_1.
    tol drives both stopping tests: relative objective decrease (two
    consecutive iterations) and the gradient/pseudo-gradient infinity norm.
    """

    lam: float = 1e-4
    max_iters: int = 20000
    tol: float = 1e-10
    memory: int = 10
    ls_shrink: float = 0.5
    ls_c1: float = 1e-4

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"lam must be >= 0, got {self.lam}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.tol <= 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.memory < 1:
            raise ValueError(f"memory must be >= 1, got {self.memory}")
        if not 0.0 < self.ls_shrink < 1.0:
            raise ValueError(f"ls_shrink must be in (0, 1), got {self.ls_shrink}")
        if not 0.0 < self.ls_c1 < 1.0:
            raise ValueError(f"ls_c1 must be in (0, 1), got {self.ls_c1}")

    def with_(self, **kw) -> "SolverConfig":
        return replace(self, **kw)


@dataclass(frozen=True)
class SolveResult:
    """Recovered coefficients plus convergence diagnostics."""

    coeffs: np.ndarray = field(repr=False)
    objective_history: np.ndarray = field(repr=False)
    iterations: int
    converged: bool
    nnz: int

    @property
    def objective_final(self) -> float:
        return float(self.objective_history[-1])


def make_result(coeffs: np.ndarray, history, iterations: int, converged: bool) -> SolveResult:
    coeffs = np.asarray(coeffs, dtype=np.float64)
    return SolveResult(
        coeffs=coeffs,
        objective_history=np.asarray(history, dtype=np.float64),
        iterations=int(iterations),
        converged=bool(converged),
        nnz=int(np.count_nonzero(np.abs(coeffs) > NNZ_EPS)),
    )


def soft_threshold(z, t):
    """Proximal map of t*|.|: shrink toward zero, clip at zero."""
    return np.sign(z) * np.maximum(np.abs(z) - t, 0.0)
