"""Limited-memory BFGS: pair history, two-loop recursion, and the smooth
minimizer with Armijo backtracking.

The two-loop recursion applies the inverse of the implicitly-composed BFGS
updates to a gradient in O(m n) without ever materializing a matrix.  The
initial inverse-Hessian guess is gamma*I with gamma = (dx.y)/(y.y) from the
newest stored pair.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ..errors import LineSearchError
from .common import SolverConfig, SolveResult, make_result

_MAX_SHRINKS = 50
_CURV_RTOL = 1e-12
_STALE_REJECTS = 2


class LbfgsMemory:
    """Ring buffer of at most m (dx, dg, rho) curvature pairs.

    Pairs with non-positive curvature dx.dg are rejected, never stored.
    Two consecutive rejections clear the buffer: with a backtracking-only
    line search the curvature condition is not enforced, and on nonconvex
    stretches a stale history can pin the search direction (observed as a
    creep on Rosenbrock), so the model restarts from steepest descent.
    """

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("memory size m must be >= 1")
        self.pairs: deque = deque(maxlen=m)
        self._rejects = 0

    def __len__(self) -> int:
        return len(self.pairs)

    def push(self, dx: np.ndarray, dg: np.ndarray) -> bool:
        """Store a displacement/gradient-difference pair; returns False if skipped."""
        curv = float(dx @ dg)
        if curv > _CURV_RTOL * np.linalg.norm(dx) * np.linalg.norm(dg):
            self.pairs.append((dx, dg, 1.0 / curv))
            self._rejects = 0
            return True
        self._rejects += 1
        if self._rejects >= _STALE_REJECTS:
            self.clear()
        return False

    def clear(self) -> None:
        self.pairs.clear()
        self._rejects = 0


def lbfgs_direction(mem: LbfgsMemory, grad) -> np.ndarray:
    """Quasi-Newton descent direction -H_approx^{-1} grad via the two-loop
    recursion; with empty memory this is steepest descent."""
    q = np.array(grad, dtype=np.float64)
    alphas = []
    for dx, dg, rho in reversed(mem.pairs):
        a = rho * float(dx @ q)
        q -= a * dg
        alphas.append(a)
    gamma = 1.0
    if mem.pairs:
        dx, dg, _ = mem.pairs[-1]
        gamma = float(dx @ dg) / float(dg @ dg)
    r = gamma * q
    for (dx, dg, rho), a in zip(mem.pairs, reversed(alphas)):
        b = rho * float(dg @ r)
        r += (a - b) * dx
    return -r


def _backtrack(g, x, d, f, slope, cfg: SolverConfig):
    """Armijo backtracking from t=1; returns (x_new, f_new)."""
    t = 1.0
    for _ in range(_MAX_SHRINKS):
        xn = x + t * d
        fn = g(xn)
        if fn <= f + cfg.ls_c1 * t * slope:
            return xn, fn
        t *= cfg.ls_shrink
    raise LineSearchError(f"no Armijo step after {_MAX_SHRINKS} shrinks (slope={slope:.3e})")


def lbfgs_minimize(g, grad, x0, cfg: SolverConfig = SolverConfig()) -> SolveResult:
    """Minimize a smooth convex function with L-BFGS.

    Stops when the gradient infinity norm drops below cfg.tol, or when the
    relative objective decrease stays below cfg.tol for two consecutive
    iterations.  The recorded objective history is nonincreasing.
    """
    x = np.array(x0, dtype=np.float64)
    mem = LbfgsMemory(cfg.memory)
    f = float(g(x))
    gr = np.asarray(grad(x), dtype=np.float64)
    history = [f]
    small_steps = 0
    converged = False
    iterations = 0
    for it in range(1, cfg.max_iters + 1):
        if np.max(np.abs(gr)) <= cfg.tol:
            converged = True
            break
        d = lbfgs_direction(mem, gr)
        slope = float(gr @ d)
        if slope >= 0.0:
            # numerically non-descent direction: fall back to steepest
            d = -gr
            slope = float(gr @ d)
        xn, fn = _backtrack(g, x, d, f, slope, cfg)
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
