"""Orthant-wise limited-memory quasi-Newton for l1-regularized smooth losses.

Minimizes F(s) = g(s) + lam * ||s||_1 for convex differentiable g.  The l1
term is non-differentiable only at zeros; there the pseudo-gradient picks
the one-sided derivative that points downhill (or zero if neither does).
Each iteration:

  1. pseudo-gradient v of F at the current point;
  2. two-loop L-BFGS direction d = -H^{-1} v, with the pair history built
     from differences of the *smooth* gradient only;
  3. sign alignment: components of d disagreeing with -v are zeroed;
  4. backtracking line search over orthant-projected points: any component
     whose sign leaves the chosen orthant is snapped to exactly 0, and the
     Armijo test uses the pseudo-gradient inner product with the actual
     (projected) displacement;
  5. signs are re-estimated from the new point on the next round.

KKT optimality of the l1 problem is exactly "pseudo-gradient = 0", so its
infinity norm doubles as both the convergence test and the reported KKT
residual.
"""

from __future__ import annotations

import numpy as np

from ..errors import LineSearchError
from .common import SolverConfig, SolveResult, make_result
from .lbfgs import LbfgsMemory, lbfgs_direction

_MAX_SHRINKS = 50


def pseudo_gradient(s, grad_g, lam: float) -> np.ndarray:
    """Steepest-ascent generalized gradient of g + lam*||.||_1.

    Componentwise: grad_g + lam*sign(s) away from zero; at zeros, the
    right derivative grad_g + lam if it is negative, the left derivative
    grad_g - lam if it is positive, else 0 (no descent available).
    """
    s = np.asarray(s, dtype=np.float64)
    grad_g = np.asarray(grad_g, dtype=np.float64)
    pg = np.where(s > 0, grad_g + lam, np.where(s < 0, grad_g - lam, 0.0))
    at_zero = s == 0
    right = grad_g + lam
    left = grad_g - lam
    pg = np.where(at_zero & (right < 0), right, pg)
    pg = np.where(at_zero & (left > 0), left, pg)
    return pg


def lasso_kkt_residual(s, grad_g, lam: float) -> float:
    """Max KKT violation of the l1 problem (the pseudo-gradient sup norm)."""
    return float(np.max(np.abs(pseudo_gradient(s, grad_g, lam))))


def _project_orthant(z: np.ndarray, orthant: np.ndarray) -> np.ndarray:
    return np.where(np.sign(z) == orthant, z, 0.0)


def owlqn_minimize(g, grad, x0, cfg: SolverConfig = SolverConfig()) -> SolveResult:
    """Minimize g(s) + cfg.lam * ||s||_1 with OWL-QN.

    Zeros in the returned coefficients are exact (projection writes 0.0).
    The objective history (of the full composite objective) is nonincreasing;
    convergence means pseudo-gradient infinity norm <= cfg.tol or two
    consecutive relative decreases below cfg.tol.
    """
    lam = cfg.lam
    x = np.array(x0, dtype=np.float64)
    mem = LbfgsMemory(cfg.memory)

    def composite(z):
        return float(g(z)) + lam * float(np.abs(z).sum())

    f = composite(x)
    gr = np.asarray(grad(x), dtype=np.float64)
    history = [f]
    small_steps = 0
    converged = False
    iterations = 0
    for it in range(1, cfg.max_iters + 1):
        v = pseudo_gradient(x, gr, lam)
        if np.max(np.abs(v)) <= cfg.tol:
            converged = True
            break
        d = lbfgs_direction(mem, v)
        d = np.where(d * (-v) > 0, d, 0.0)
        if not d.any():
            d = -v
        orthant = np.where(x != 0, np.sign(x), np.sign(-v))
        t = 1.0
        accepted = False
        for _ in range(_MAX_SHRINKS):
            xn = _project_orthant(x + t * d, orthant)
            fn = composite(xn)
            if fn <= f + cfg.ls_c1 * float(v @ (xn - x)):
                accepted = True
                break
            t *= cfg.ls_shrink
        if not accepted:
            raise LineSearchError(f"no acceptable orthant step after {_MAX_SHRINKS} shrinks")
        grn = np.asarray(grad(xn), dtype=np.float64)
        mem.push(xn - x, grn - gr)
        rel_drop = (f - fn) / max(abs(f), abs(fn), 1.0)
        x, f, gr = xn, fn, grn
        history.append(f)
        iterations = it
        small_steps = small_steps + 1 if rel_drop < cfg.tol else 0
        if small_steps >= 2:
            converged = True
            break
    return make_result(x, history, iterations, converged)
