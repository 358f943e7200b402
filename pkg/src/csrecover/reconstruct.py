"""End-to-end image pipeline: NetPBM I/O, sampling, per-channel sparse
solves, inverse transform, and quality metrics.

Images are flattened row-major and treated as one long 1-D signal per
channel; all channels share a single sampled index set (sampling a pixel
yields every channel of it).  Pixel values live in [0, 1]; only binary
NetPBM (P5 grayscale / P6 RGB, maxval 255) is read or written.

Near the basis-pursuit limit (target weight far below the largest back-
projected measurement) the channel solver warms up through a geometric
lambda schedule before the final solve at the requested weight; each
underlying solver call keeps its own contract.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ImageFormatError
from .optimize import SolverConfig, SolveResult, lasso_cd, owlqn_minimize
from .sampling import SampleSet, measure, sample_indices
from .transform import ThetaOperator, dct_inverse

DEFAULT_ALPHA = 1e-4
"""Per-sample l1 weight (the familiar sklearn-style alpha); the direct
objective weight is alpha * p.  See README for the mapping."""

SOLVERS = ("owlqn", "lasso_cd")

_WHITESPACE = b" \t\r\n\x0b\x0c"


@dataclass(frozen=True)
class ImageBuffer:
    """Planar float image: pixels holds channel 0's rows, then channel 1's, ..."""

    width: int
    height: int
    channels: int
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise DimensionError("width and height must be >= 1")
        if self.channels not in (1, 3):
            raise DimensionError(f"channels must be 1 or 3, got {self.channels}")
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.shape != (self.width * self.height * self.channels,):
            raise DimensionError(
                f"pixel count {px.size} != width*height*channels "
                f"= {self.width * self.height * self.channels}"
            )
        if px.size and (px.min() < 0.0 or px.max() > 1.0):
            raise ValueError("pixel values must lie in [0, 1]")
        object.__setattr__(self, "pixels", px)

    @property
    def pixels_per_channel(self) -> int:
        return self.width * self.height

    def channel(self, c: int) -> np.ndarray:
        wh = self.pixels_per_channel
        return self.pixels[c * wh : (c + 1) * wh]


def _next_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    while pos < len(buf):
        if buf[pos] in _WHITESPACE:
            pos += 1
        elif buf[pos : pos + 1] == b"#":
            while pos < len(buf) and buf[pos] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < len(buf) and buf[pos] not in _WHITESPACE:
        pos += 1
    if start == pos:
        raise ImageFormatError("truncated NetPBM header")
    return buf[start:pos], pos


def load_image(path) -> ImageBuffer:
    """Read a binary NetPBM file (P5 or P6, maxval 255) into [0, 1] floats."""
    with open(path, "rb") as fh:
        buf = fh.read()
    magic, pos = _next_token(buf, 0)
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise ImageFormatError(f"unsupported NetPBM magic {magic!r} (need binary P5 or P6)")
    fields = []
    for _ in range(3):
        tok, pos = _next_token(buf, pos)
        try:
            fields.append(int(tok))
        except ValueError:
            raise ImageFormatError(f"non-numeric header field {tok!r}") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ImageFormatError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(f"unsupported maxval {maxval} (only 255)")
    pos += 1  # single whitespace byte separates header from payload
    need = width * height * channels
    payload = buf[pos : pos + need]
    if len(payload) < need:
        raise ImageFormatError(f"truncated payload: have {len(payload)} bytes, need {need}")
    if buf[pos + need :].strip(_WHITESPACE):
        raise ImageFormatError("trailing non-whitespace bytes after payload")
    raw = np.frombuffer(payload, dtype=np.uint8).astype(np.float64) / 255.0
    if channels == 3:
        raw = raw.reshape(width * height, 3).T.reshape(-1)  # interleaved -> planar
    return ImageBuffer(width=width, height=height, channels=channels, pixels=raw)


def save_image(img: ImageBuffer, path) -> None:
    """Write P5/P6 with maxval 255; rounds half away from zero after clamping."""
    quant = np.floor(np.clip(img.pixels, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    if img.channels == 3:
        quant = quant.reshape(3, img.pixels_per_channel).T.reshape(-1)  # planar -> interleaved
    magic = b"P5" if img.channels == 1 else b"P6"
    header = magic + b"\n%d %d\n255\n" % (img.width, img.height)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(quant.tobytes())


def psnr(a: ImageBuffer, b: ImageBuffer) -> float:
    """Peak signal-to-noise ratio in dB (peak 1.0); +inf for identical images."""
    if (a.width, a.height, a.channels) != (b.width, b.height, b.channels):
        raise DimensionError("images must have identical dimensions and channels")
    mse = float(np.mean((a.pixels - b.pixels) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)


def zero_filled_baseline(img: ImageBuffer, indices) -> ImageBuffer:
    """The trivial competitor: unsampled pixels set to zero in every channel."""
    wh = img.pixels_per_channel
    out = np.zeros_like(img.pixels)
    for c in range(img.channels):
        out[c * wh + np.asarray(indices, dtype=np.int64)] = img.channel(c)[indices]
    return ImageBuffer(img.width, img.height, img.channels, out)


# lambda-continuation schedule: warm-start stages at these fractions
_STAGE_START = 0.1   # first stage relative to the back-projection sup norm
_STAGE_RATIO = 0.1   # geometric decay between stages
_STAGE_MARGIN = 10.0  # hand over to the final solve within this factor


def _lambda_schedule(lam_max: float, lam_target: float) -> list[float]:
    stages = []
    if lam_target > 0.0 and lam_target * _STAGE_MARGIN < lam_max * _STAGE_START:
        lam = lam_max * _STAGE_START
        while lam > lam_target * _STAGE_MARGIN:
            stages.append(lam)
            lam *= _STAGE_RATIO
    return stages


def solve_measurements(op: ThetaOperator, y: np.ndarray, cfg: SolverConfig,
                       solver: str = "owlqn") -> SolveResult:
    """Sparse-coefficient solve of 0.5*||op s - y||^2 + cfg.lam*||s||_1,
    warm-started through the continuation schedule."""
    if solver == "owlqn":
        def g(s):
            return 0.5 * float(np.sum((op.apply(s) - y) ** 2))

        def grad(s):
            return op.adjoint(op.apply(s) - y)

        lam_max = float(np.max(np.abs(op.adjoint(y))))
        x = np.zeros(op.n)
        for lam_i in _lambda_schedule(lam_max, cfg.lam):
            stage = cfg.with_(lam=lam_i, tol=max(cfg.tol, 1e-10),
                              max_iters=min(cfg.max_iters, 500))
            x = owlqn_minimize(g, grad, x, stage).coeffs
        return owlqn_minimize(g, grad, x, cfg)
    if solver == "lasso_cd":
        theta = op.dense()
        lam_max = float(np.max(np.abs(theta.T @ y)))
        s = None
        for lam_i in _lambda_schedule(lam_max, cfg.lam):
            stage = cfg.with_(lam=lam_i, tol=max(cfg.tol, 1e-8),
                              max_iters=min(cfg.max_iters, 2000))
            s = lasso_cd(theta, y, stage, s0=s).coeffs
        return lasso_cd(theta, y, cfg, s0=s)
    raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVERS}")


def reconstruct_channel(n: int, samples: SampleSet, cfg: SolverConfig = SolverConfig(),
                        solver: str = "owlqn") -> tuple[np.ndarray, SolveResult]:
    """Recover one length-n channel from its SampleSet.

    Returns the synthesized signal clamped to [0, 1] together with the
    solver diagnostics.  The unclamped signal can be re-synthesized from
    result.coeffs; with lam > 0 the fit at sampled entries is close but not
    exact (the l1 weight trades fidelity for sparsity).
    """
    if samples.n != n:
        raise DimensionError(f"samples.n={samples.n} does not match n={n}")
    op = ThetaOperator(n=n, indices=samples.indices)
    result = solve_measurements(op, samples.values, cfg, solver)
    x = dct_inverse(result.coeffs)
    return np.clip(x, 0.0, 1.0), result


@dataclass(frozen=True)
class ReconstructionReport:
    fraction: float
    seed: int
    solver: str
    lambda_l1: float
    per_channel: list
    psnr_db: float
    rel_err_l2: float
    wall_ms: float

    def to_json_dict(self) -> dict:
        return {
            "fraction": self.fraction,
            "seed": self.seed,
            "solver": self.solver,
            "lambda": self.lambda_l1,
            "per_channel": self.per_channel,
            "psnr_db": self.psnr_db,
            "rel_err_l2": self.rel_err_l2,
            "wall_ms": self.wall_ms,
        }


def reconstruct_image(img: ImageBuffer, fraction: float, seed: int,
                      cfg: SolverConfig | None = None, solver: str = "owlqn",
                      indices=None, channel_values=None) -> tuple[ImageBuffer, ReconstructionReport]:
    """Sample the image once, reconstruct every channel from the shared mask.

    With cfg=None the l1 weight defaults to DEFAULT_ALPHA * p.  An explicit
    index set (e.g. loaded from a SampleSet file) overrides the draw; it
    must index pixels, i.e. lie in [0, width*height).  channel_values, when
    given, is a (channels, p) array of externally measured values used in
    place of re-measuring the input image.
    """
    t0 = time.perf_counter()
    wh = img.pixels_per_channel
    if indices is None:
        indices = sample_indices(wh, fraction, seed)
    else:
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size == 0 or indices.min() < 0 or indices.max() >= wh:
            raise DimensionError(f"explicit indices must lie in [0, {wh})")
    if channel_values is not None:
        channel_values = np.asarray(channel_values, dtype=np.float64)
        if channel_values.shape != (img.channels, indices.size):
            raise DimensionError(
                f"channel_values must have shape {(img.channels, indices.size)}, "
                f"got {channel_values.shape}"
            )
    if cfg is None:
        cfg = SolverConfig(lam=DEFAULT_ALPHA * indices.size)
    out = np.empty_like(img.pixels)
    per_channel = []
    for c in range(img.channels):
        if channel_values is None:
            samples = measure(img.channel(c), indices)
        else:
            samples = SampleSet(n=wh, indices=indices, values=channel_values[c])
        xhat, res = reconstruct_channel(wh, samples, cfg, solver)
        out[c * wh : (c + 1) * wh] = xhat
        per_channel.append({
            "iterations": res.iterations,
            "converged": res.converged,
            "nnz": res.nnz,
            "objective_final": res.objective_final,
        })
    recon = ImageBuffer(img.width, img.height, img.channels, out)
    truth_norm = float(np.linalg.norm(img.pixels))
    diff_norm = float(np.linalg.norm(recon.pixels - img.pixels))
    rel = diff_norm / truth_norm if truth_norm > 0 else (0.0 if diff_norm == 0 else math.inf)
    report = ReconstructionReport(
        fraction=float(fraction),
        seed=int(seed),
        solver=solver,
        lambda_l1=float(cfg.lam),
        per_channel=per_channel,
        psnr_db=psnr(recon, img),
        rel_err_l2=rel,
        wall_ms=(time.perf_counter() - t0) * 1e3,
    )
    return recon, report
