"""Cyclic coordinate-descent LASSO on an explicit design matrix.

Each coordinate update is the exact scalar minimizer

    s_j <- soft(theta_j . (r + theta_j s_j), lam) / ||theta_j||^2

with the residual r = y - theta @ s maintained incrementally, so the
objective 0.5*||theta s - y||^2 + lam*||s||_1 never increases.  Full sweeps
over all columns establish the stopping test (max coordinate change below
cfg.tol on a full sweep); between full sweeps the solver iterates on the
current nonzero support only, which is where virtually all the work happens
once the active set settles.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateColumnError
from ..transform import ThetaOperator
from .common import SolverConfig, SolveResult, make_result, soft_threshold


def lasso_cd(theta, y, cfg: SolverConfig = SolverConfig(), s0=None) -> SolveResult:
    """LASSO by cyclic coordinate descent with soft-thresholding.

    theta may be a dense (p, n) array or a ThetaOperator (materialized via
    its size-capped dense path).  s0 optionally warm-starts the iterate.
    One recorded iteration = one sweep (full or active-set); convergence is
    declared only by a full sweep whose largest coordinate change is below
    cfg.tol.
    """
    if isinstance(theta, ThetaOperator):
        theta = theta.dense()
    theta = np.asarray(theta, dtype=np.float64)
    if theta.ndim != 2:
        raise ValueError(f"theta must be 2-D, got shape {theta.shape}")
    y = np.asarray(y, dtype=np.float64)
    p, n = theta.shape
    if y.shape != (p,):
        raise ValueError(f"y must have length {p}, got shape {y.shape}")
    col_sq = np.einsum("ij,ij->j", theta, theta)
    if np.any(col_sq == 0.0):
        j = int(np.argmin(col_sq))
        raise DegenerateColumnError(f"column {j} of theta has zero norm")
    cols = [np.ascontiguousarray(theta[:, j]) for j in range(n)]

    lam = cfg.lam
    s = np.zeros(n) if s0 is None else np.array(s0, dtype=np.float64)
    r = y - theta @ s
    history = [0.5 * float(r @ r) + lam * float(np.abs(s).sum())]
    sweeps = 0

    def sweep(index_list) -> float:
        nonlocal sweeps, r
        sweeps += 1
        worst = 0.0
        for j in index_list:
            old = s[j]
            z = float(cols[j] @ r) + col_sq[j] * old
            new = float(soft_threshold(z, lam)) / col_sq[j]
            if new != old:
                r += cols[j] * (old - new)
                s[j] = new
                change = abs(new - old)
                if change > worst:
                    worst = change
        history.append(0.5 * float(r @ r) + lam * float(np.abs(s).sum()))
        return worst

    all_cols = range(n)
    converged = False
    while sweeps < cfg.max_iters:
        r = y - theta @ s  # refresh drift accumulated by incremental updates
        if sweep(all_cols) < cfg.tol:
            converged = True
            break
        while sweeps < cfg.max_iters:
            active = np.flatnonzero(s)
            if active.size == 0 or sweep(active) < cfg.tol:
                break
    return make_result(s, history, sweeps, converged)
