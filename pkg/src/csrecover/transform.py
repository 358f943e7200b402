"""Orthonormal 1-D DCT pair and the sampled-synthesis linear operator.

Conventions (fixed once, used everywhere):

* analysis = orthonormal DCT-II:  ``c[k] = f_k * sum_i x[i] cos(pi k (2i+1) / (2n))``
  with ``f_0 = sqrt(1/n)`` and ``f_k = sqrt(2/n)`` for ``k >= 1``;
* synthesis = orthonormal DCT-III, the exact transpose/inverse of analysis.

With this normalization the synthesis matrix ``Psi`` is orthogonal
(``Psi.T @ Psi = I``), so the analysis transform *is* the adjoint of the
synthesis transform and Euclidean norms are preserved in both directions.

The fast path folds the signal even/odd and rides a half-spectrum real FFT
(O(n log n)); :func:`dense_psi` builds the same matrix entry-by-entry from
the cosine formula and is the O(n^2) oracle the fast path is tested against.

All functions here are pure: no module state, safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, SizeCapError

DENSE_CAP = 4096
"""Largest n for which dense matrices are built; beyond this use the
matrix-free transforms (the dense path is a test oracle, not production)."""


def _as_vector(x, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise DimensionError(f"{name} must be a nonempty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def dct_forward(x) -> np.ndarray:
    """Orthonormal DCT-II analysis: signal -> transform-domain coefficients.

    Preserves the 2-norm exactly and inverts :func:`dct_inverse`.
    """
    x = _as_vector(x, "x")
    n = x.size
    # Fold even indices forward, odd indices reversed, then one real FFT.
    v = np.concatenate([x[0::2], x[1::2][::-1]])
    spec = np.fft.rfft(v)
    k = np.arange(spec.size)
    z = np.exp(-0.5j * np.pi * k / n) * spec
    y = np.empty(n)
    y[: spec.size] = 2.0 * z.real
    if n > 2:
        tail = np.arange(1, (n - 1) // 2 + 1)
        y[n - tail] = -2.0 * z[tail].imag
    c = np.empty(n)
    c[0] = y[0] / (2.0 * np.sqrt(n))
    c[1:] = y[1:] / np.sqrt(2.0 * n)
    return c


def dct_inverse(c) -> np.ndarray:
    """Orthonormal DCT-III synthesis: coefficients -> signal (x = Psi @ c)."""
    c = _as_vector(c, "c")
    n = c.size
    y = np.empty(n)
    y[0] = 2.0 * np.sqrt(n) * c[0]
    y[1:] = np.sqrt(2.0 * n) * c[1:]
    m = n // 2 + 1
    k = np.arange(m)
    paired = np.empty(m)
    paired[0] = 0.0
    paired[1:] = y[n - k[1:]]
    spec = np.exp(0.5j * np.pi * k / n) * (y[k] - 1j * paired) / 2.0
    v = np.fft.irfft(spec, n=n)
    x = np.empty(n)
    half = (n + 1) // 2
    x[0::2] = v[:half]
    x[1::2] = v[half:][::-1]
    return x


def synthesis_rows(n: int, rows) -> np.ndarray:
    """Rows of the synthesis matrix Psi, straight from the cosine formula.

    ``out[j, k] = f_k * cos(pi k (2 rows[j] + 1) / (2n))``.  O(len(rows) * n)
    time and memory; no cap (callers chunk if needed).
    """
    rows = np.asarray(rows, dtype=np.int64)
    i = rows[:, None]
    k = np.arange(n)[None, :]
    out = np.cos(np.pi * k * (2 * i + 1) / (2.0 * n))
    scale = np.full(n, np.sqrt(2.0 / n))
    scale[0] = np.sqrt(1.0 / n)
    return out * scale[None, :]


def dense_psi(n: int, cap: int = DENSE_CAP) -> np.ndarray:
    """Full n-by-n synthesis matrix (the explicit "transform the identity"
    construction).  Test/oracle path only: refuses n > cap."""
    if n < 1:
        raise DimensionError("n must be >= 1")
    if n > cap:
        raise SizeCapError(
            f"dense synthesis matrix for n={n} exceeds the cap ({cap}); "
            "use the matrix-free dct_forward/dct_inverse/ThetaOperator path"
        )
    return synthesis_rows(n, np.arange(n))


def _check_indices(indices: np.ndarray, n: int) -> np.ndarray:
    idx = np.asarray(indices, dtype=np.int64)
    if idx.ndim != 1 or idx.size == 0:
        raise DimensionError("indices must be a nonempty 1-D integer vector")
    if idx[0] < 0 or idx[-1] >= n or np.any(np.diff(idx) <= 0):
        raise DimensionError(f"indices must be strictly increasing within [0, {n})")
    return idx


@dataclass(frozen=True)
class ThetaOperator:
    """Matrix-free sampled-synthesis operator: coefficients -> measurements.

    ``apply`` synthesizes the signal and keeps only the sampled entries;
    ``adjoint`` scatters measurements back and analyzes.  The pair satisfies
    <apply(s), y> == <s, adjoint(y)> exactly (up to roundoff) because the
    synthesis basis is orthonormal.
    """

    n: int
    indices: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("ambient dimension n must be >= 1")
        idx = _check_indices(self.indices, self.n)
        object.__setattr__(self, "indices", idx)

    @property
    def p(self) -> int:
        return self.indices.size

    def apply(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=np.float64)
        if s.shape != (self.n,):
            raise DimensionError(f"expected coefficient vector of length {self.n}, got shape {s.shape}")
        return dct_inverse(s)[self.indices]

    def adjoint(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.float64)
        if y.shape != (self.p,):
            raise DimensionError(f"expected measurement vector of length {self.p}, got shape {y.shape}")
        z = np.zeros(self.n)
        z[self.indices] = y
        return dct_forward(z)

    def dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        """Materialize the p-by-n sampled-row matrix (row-sampled Psi)."""
        if self.n > cap:
            raise SizeCapError(
                f"dense operator for n={self.n} exceeds the cap ({cap}); "
                "stay on the matrix-free apply/adjoint path"
            )
        return synthesis_rows(self.n, self.indices)


def theta_apply(op: ThetaOperator, s) -> np.ndarray:
    """Functional alias of :meth:`ThetaOperator.apply`."""
    return op.apply(s)


def theta_adjoint(op: ThetaOperator, y) -> np.ndarray:
    """Functional alias of :meth:`ThetaOperator.adjoint`."""
    return op.adjoint(y)
