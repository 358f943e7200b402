"""Seeded synthetic sparse-recovery trials (the measurement-budget harness).

Each trial builds a k-sparse coefficient vector of unit spikes with random
signs, synthesizes the signal, samples p entries, solves the l1 problem, and
scores exact support recovery after thresholding.  Trial t draws everything
from one deterministic stream seeded with seed + t.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .optimize import SolverConfig
from .reconstruct import solve_measurements
from .sampling import SplitMix64, choose_without_replacement, estimate_measurements
from .transform import ThetaOperator, dct_inverse

SUPPORT_EPS = 1e-6
"""Coefficients above this magnitude count toward the recovered support."""


def sparse_spike_coeffs(n: int, k: int, rng: SplitMix64) -> np.ndarray:
    """k unit spikes with random signs at distinct random positions."""
    if not 1 <= k < n:
        raise DomainError(f"need 1 <= k < n, got k={k}, n={n}")
    support = choose_without_replacement(n, k, rng)
    s = np.zeros(n)
    for j in support:
        s[j] = rng.sign()
    return s


def run_recovery_trials(n: int, k: int, *, p: int | None = None,
                        fraction: float | None = None, k1: float | None = None,
                        lam: float = 1e-6, solver: str = "owlqn",
                        trials: int = 20, seed: int = 0,
                        cfg: SolverConfig | None = None) -> dict:
    """Run seeded recovery trials; returns a JSON-ready report dict.

    The sample count comes from `p` directly, else floor(fraction*n), else
    the k1-weighted budget estimate.  Success means the thresholded support
    matches the planted one exactly and the signal-space relative l2 error
    is finite; the error itself is reported per trial.
    """
    if not 1 <= k < n:
        raise DomainError(f"need 1 <= k < n, got k={k}, n={n}")
    used_k1 = None
    if p is None:
        if fraction is not None:
            p = int(fraction * n)
        else:
            used_k1 = 1.0 if k1 is None else k1
            p = estimate_measurements(k, n, used_k1).p
    if not 1 <= p <= n:
        raise DomainError(f"sample count p={p} outside [1, {n}]")
    if cfg is None:
        cfg = SolverConfig(lam=lam, tol=1e-12)
    else:
        cfg = cfg.with_(lam=lam)

    per_trial = []
    successes = 0
    errs_on_success = []
    for t in range(trials):
        rng = SplitMix64(seed + t)
        s_true = sparse_spike_coeffs(n, k, rng)
        support = np.flatnonzero(s_true)
        x_true = dct_inverse(s_true)
        indices = choose_without_replacement(n, p, rng)
        op = ThetaOperator(n=n, indices=indices)
        result = solve_measurements(op, x_true[indices], cfg, solver)
        recovered = np.flatnonzero(np.abs(result.coeffs) > SUPPORT_EPS)
        x_hat = dct_inverse(result.coeffs)
        rel_err = float(np.linalg.norm(x_hat - x_true) / np.linalg.norm(x_true))
        ok = bool(np.array_equal(recovered, support))
        successes += ok
        if ok:
            errs_on_success.append(rel_err)
        per_trial.append({
            "trial": t,
            "support_recovered": ok,
            "rel_err_l2": rel_err,
            "nnz": result.nnz,
            "iterations": result.iterations,
            "converged": result.converged,
        })
    return {
        "n": n,
        "k": k,
        "p": p,
        "k1": used_k1,
        "lambda": lam,
        "solver": solver,
        "trials": trials,
        "seed": seed,
        "successes": successes,
        "success_rate": successes / trials,
        "mean_rel_err_success": (sum(errs_on_success) / len(errs_on_success))
        if errs_on_success else None,
        "per_trial": per_trial,
    }
