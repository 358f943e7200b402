"""Newton-type methods: scalar root finding, 1-D/n-D minimization, and the
dense BFGS update.

These are the stepping stones under the limited-memory solvers: the n-D
Newton step solves H d = grad by dense factorization (never forming an
inverse), and `bfgs_update` is the additive secant update that the two-loop
recursion in `lbfgs` reproduces implicitly.
"""

from __future__ import annotations

import numpy as np

from ..errors import CurvatureError, IterationLimitError, ZeroDerivativeError

_DERIV_FLOOR = 1e-300


def newton_root(f, df, x0: float, tol: float = 1e-12, max_iters: int = 50) -> float:
    """Root of f by Newton iteration x <- x - f(x)/df(x).

    Returns the first iterate with |f(x)| <= tol; raises if the derivative
    vanishes or the iteration budget runs out.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = float(x0)
    for _ in range(max_iters):
        fx = f(x)
        if abs(fx) <= tol:
            return x
        d = df(x)
        if abs(d) < _DERIV_FLOOR:
            raise ZeroDerivativeError(f"derivative vanished at x={x!r}")
        x -= fx / d
    if abs(f(x)) <= tol:
        return x
    raise IterationLimitError(f"no root within {max_iters} iterations (|f|={abs(f(x)):.3e})")


def newton_minimize_1d(df, d2f, x0: float, tol: float = 1e-12, max_iters: int = 50) -> float:
    """Stationary point of a scalar function: Newton's root finder on df."""
    return newton_root(df, d2f, x0, tol=tol, max_iters=max_iters)


def newton_minimize_nd(grad, hess, x0, tol: float = 1e-10, max_iters: int = 100) -> np.ndarray:
    """Vector Newton: x <- x - solve(H(x), grad(x)) until ||grad||_2 <= tol.

    Intended for small dense problems.  A singular Hessian surfaces as
    numpy.linalg.LinAlgError from the solve.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = np.array(x0, dtype=np.float64)
    for _ in range(max_iters):
        g = np.asarray(grad(x), dtype=np.float64)
        if np.linalg.norm(g) <= tol:
            return x
        h = np.asarray(hess(x), dtype=np.float64)
        x = x - np.linalg.solve(h, g)
    if np.linalg.norm(np.asarray(grad(x), dtype=np.float64)) <= tol:
        return x
    raise IterationLimitError(f"gradient norm above tol after {max_iters} Newton steps")


def bfgs_update(H, dx, yk) -> np.ndarray:
    """One dense BFGS update of the Hessian approximation.

    H' = H + y y^T / (y^T dx) - (H dx)(H dx)^T / (dx^T H dx)

    Requires positive curvature y^T dx > 0; the returned matrix satisfies
    the secant condition H' dx = y exactly and stays symmetric positive
    definite when H is.
    """
    H = np.asarray(H, dtype=np.float64)
    dx = np.asarray(dx, dtype=np.float64)
    yk = np.asarray(yk, dtype=np.float64)
    curv = float(yk @ dx)
    if curv <= 0.0:
        raise CurvatureError(f"curvature y^T dx = {curv:.3e} is not positive; skip this pair")
    hdx = H @ dx
    quad = float(dx @ hdx)
    if quad <= 0.0:
        raise CurvatureError(f"dx^T H dx = {quad:.3e} is not positive; H is not SPD")
    return H + np.outer(yk, yk) / curv - np.outer(hdx, hdx) / quad
