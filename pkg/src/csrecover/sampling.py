"""Seeded random pixel sampling, measurement budgets, and coherence checks.

Randomness is generated by a splitmix64 stream written into this file, not a
platform RNG, so identical (n, fraction, seed) arguments give byte-identical
index sets on every machine and Python version.  Selection without
replacement is a partial Fisher-Yates shuffle driven by rejection-sampled
bounded draws (no modulo bias).

Everything here is a pure function of its arguments; RNG state lives on the
stack of each call.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, DimensionError, DomainError
from .transform import synthesis_rows

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Minimal deterministic 64-bit generator (Steele/Lea/Burton mixer)."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4B7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection (unbiased)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = ((1 << 64) // bound) * bound
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def sign(self) -> float:
        """Uniform +1.0 / -1.0."""
        return 1.0 if self.next_u64() & 1 else -1.0


def choose_without_replacement(n: int, p: int, rng: SplitMix64) -> np.ndarray:
    """p distinct integers from [0, n), sorted ascending (partial Fisher-Yates)."""
    if not 1 <= p <= n:
        raise DimensionError(f"need 1 <= p <= n, got p={p}, n={n}")
    pool = np.arange(n, dtype=np.int64)
    for i in range(p):
        j = i + rng.below(n - i)
        pool[i], pool[j] = pool[j], pool[i]
    out = pool[:p]
    out.sort()
    return out


def sample_indices(n: int, fraction: float, seed: int) -> np.ndarray:
    """Sorted unique indices of floor(fraction*n) uniformly chosen entries.

    Deterministic in (n, fraction, seed).  fraction must lie in (0, 1]; a
    budget that floors to zero samples is rejected.
    """
    if n < 1:
        raise DimensionError("n must be >= 1")
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    p = int(fraction * n)
    if p < 1:
        raise BudgetError(
            f"fraction {fraction} of n={n} floors to zero samples; increase the fraction"
        )
    return choose_without_replacement(n, p, SplitMix64(seed))


@dataclass(frozen=True)
class SampleSet:
    """Measured entries of a length-n signal: where we looked and what we saw."""

    n: int
    indices: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        val = np.asarray(self.values, dtype=np.float64)
        if idx.ndim != 1 or idx.size == 0:
            raise DimensionError("indices must be a nonempty 1-D vector")
        if idx[0] < 0 or idx[-1] >= self.n or np.any(np.diff(idx) <= 0):
            raise DimensionError(f"indices must be strictly increasing within [0, {self.n})")
        if val.shape != idx.shape:
            raise DimensionError("values and indices must have equal length")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    @property
    def p(self) -> int:
        return self.indices.size

    def to_json_dict(self) -> dict:
        return {
            "n": int(self.n),
            "indices": [int(i) for i in self.indices],
            "values": [float(v) for v in self.values],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SampleSet":
        return cls(n=int(doc["n"]), indices=doc["indices"], values=doc["values"])

    def save(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            json.dump(self.to_json_dict(), fh)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "SampleSet":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_json_dict(json.load(fh))


def measure(x, indices) -> SampleSet:
    """Gather x at the given sorted indices into a SampleSet."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise DimensionError("x must be a nonempty 1-D vector")
    idx = np.asarray(indices, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= x.size):
        raise DimensionError(f"index out of range for signal of length {x.size}")
    return SampleSet(n=x.size, indices=idx, values=x[idx])


@dataclass(frozen=True)
class MeasurementBudget:
    """How many samples a K-sparse signal needs: p ~ k1 * K * ln(n/K)."""

    K: int
    n: int
    k1: float
    p: int


def estimate_measurements(K: int, n: int, k1: float = 1.0) -> MeasurementBudget:
    """Estimated measurement count for a K-sparse signal in dimension n.

    Uses the natural log and rounds up, flooring at one sample.  Requires
    1 <= K < n (otherwise the log factor is non-positive) and k1 > 0.
    """
    if K < 1 or K >= n:
        raise DomainError(f"need 1 <= K < n, got K={K}, n={n}")
    if k1 <= 0:
        raise DomainError(f"k1 must be positive, got {k1}")
    p = max(1, math.ceil(k1 * K * math.log(n / K)))
    return MeasurementBudget(K=K, n=n, k1=k1, p=p)


def mutual_coherence(indices, n: int, chunk: int = 128) -> float:
    """Largest |entry| of the synthesis matrix over the sampled rows.

    Sampling rows of the signal domain means each measurement row of the
    sensing matrix is a canonical basis vector, so its inner product with
    basis column k is just the matrix entry — the max absolute entry is the
    usual coherence diagnostic (small is good).  Computed analytically from
    the cosine formula in row chunks; never builds the full matrix.
    """
    idx = np.asarray(indices, dtype=np.int64)
    if idx.ndim != 1 or idx.size == 0:
        raise DimensionError("indices must be a nonempty 1-D vector")
    if idx.min() < 0 or idx.max() >= n:
        raise DimensionError(f"indices out of range for n={n}")
    worst = 0.0
    for start in range(0, idx.size, chunk):
        rows = synthesis_rows(n, idx[start : start + chunk])
        worst = max(worst, float(np.abs(rows).max()))
    return worst
