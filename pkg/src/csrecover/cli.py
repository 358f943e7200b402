"""Command-line front end: sample / reconstruct / synth / compare.

Conventions:
  * human-readable progress goes to stderr; machine-readable JSON goes to
    the --report path (or stdout when no path is given);
  * every run is reproducible from its flag set — all randomness flows from
    --seed (reports differ only in wall_ms);
  * exit codes: 0 success, 2 usage/validation error, 3 solver did not
    converge (outputs are still written), 4 I/O or file-format error.

For `reconstruct` and image-mode `compare`, --lambda is the per-sample
weight alpha (the convention of the usual sklearn-style LASSO); the direct
objective weight is alpha * p.  For `synth` and synthetic-mode `compare`,
--lambda is the direct weight itself.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .errors import (
    BudgetError,
    CsRecoverError,
    DimensionError,
    ImageFormatError,
    IterationLimitError,
    LineSearchError,
    SizeCapError,
)
from .optimize import SolverConfig, lasso_kkt_residual
from .reconstruct import (
    DEFAULT_ALPHA,
    load_image,
    reconstruct_image,
    save_image,
    solve_measurements,
    zero_filled_baseline,
)
from .sampling import SampleSet, sample_indices
from .synth import run_recovery_trials, sparse_spike_coeffs
from .sampling import SplitMix64, choose_without_replacement
from .transform import DENSE_CAP, ThetaOperator, dct_inverse

_SOLVER_NAMES = {"lasso": "lasso_cd", "owlqn": "owlqn"}


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit_json(doc: dict, path) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_config(args, lam: float) -> SolverConfig:
    cfg = SolverConfig(lam=lam)
    overrides = {}
    if args.max_iters is not None:
        overrides["max_iters"] = args.max_iters
    if args.tol is not None:
        overrides["tol"] = args.tol
    if getattr(args, "memory", None) is not None:
        overrides["memory"] = args.memory
    return cfg.with_(**overrides) if overrides else cfg


def _planar_sampleset(img, indices) -> SampleSet:
    """Shared pixel mask stored per channel plane: index i of channel c is
    encoded as i + c*width*height, so the schema invariants hold for RGB."""
    wh = img.pixels_per_channel
    full_idx = np.concatenate([indices + c * wh for c in range(img.channels)])
    return SampleSet(n=wh * img.channels, indices=full_idx, values=img.pixels[full_idx])


def _split_sampleset(ss: SampleSet, img):
    """Invert _planar_sampleset; validates the mask is shared by all planes."""
    wh = img.pixels_per_channel
    if ss.n != wh * img.channels:
        raise DimensionError(
            f"SampleSet n={ss.n} does not match image ({wh} pixels x {img.channels} channels)"
        )
    if ss.p % img.channels:
        raise DimensionError("SampleSet length is not a multiple of the channel count")
    p = ss.p // img.channels
    idx = ss.indices.reshape(img.channels, p)
    base = idx[0]
    for c in range(img.channels):
        if not np.array_equal(idx[c] - c * wh, base):
            raise DimensionError("SampleSet planes do not share one pixel mask")
    return base, ss.values.reshape(img.channels, p)


def cmd_sample(args) -> int:
    img = load_image(args.input)
    wh = img.pixels_per_channel
    indices = sample_indices(wh, args.fraction, args.seed)
    ss = _planar_sampleset(img, indices)
    _emit_json(ss.to_json_dict(), args.report)
    if args.output:
        save_image(zero_filled_baseline(img, indices), args.output)
    _say(
        f"sampled {indices.size} of {wh} pixels ({100 * args.fraction:g}%) "
        f"across {img.channels} channel(s), seed {args.seed}"
    )
    return 0


def cmd_reconstruct(args) -> int:
    img = load_image(args.input)
    indices = None
    channel_values = None
    if args.samples:
        indices, channel_values = _split_sampleset(SampleSet.load(args.samples), img)
    else:
        indices = sample_indices(img.pixels_per_channel, args.fraction, args.seed)
    cfg = _build_config(args, lam=args.lam * indices.size)
    recon, report = reconstruct_image(
        img, args.fraction, args.seed, cfg, _SOLVER_NAMES[args.solver],
        indices=indices, channel_values=channel_values,
    )
    if args.output:
        save_image(recon, args.output)
    _emit_json(report.to_json_dict(), args.report)
    ok = all(ch["converged"] for ch in report.per_channel)
    _say(
        f"reconstructed {img.width}x{img.height}x{img.channels} from "
        f"{indices.size} sampled pixels: psnr {report.psnr_db:.2f} dB"
        + ("" if ok else " (solver did not converge)")
    )
    return 0 if ok else 3


def cmd_synth(args) -> int:
    doc = run_recovery_trials(
        args.n, args.k,
        fraction=args.fraction, k1=args.k1, lam=args.lam,
        solver=_SOLVER_NAMES[args.solver], trials=args.trials, seed=args.seed,
        cfg=None if (args.max_iters is None and args.tol is None)
        else _build_config(args, lam=args.lam).with_(tol=args.tol or 1e-12),
    )
    _emit_json(doc, args.report)
    _say(
        f"recovery with n={doc['n']} k={doc['k']} p={doc['p']}: "
        f"{doc['successes']}/{doc['trials']} exact supports"
    )
    return 0


def _compare_instance(op: ThetaOperator, y, lam: float, cfg_base, memory: int) -> dict:
    entry = {"n": op.n, "p": op.p}
    theta_dense = None
    try:
        theta_dense = op.dense()
    except SizeCapError as exc:
        entry["lasso_cd"] = {"refused": str(exc)}
    cfg = cfg_base.with_(lam=lam)
    results = {}
    for name in ("lasso_cd", "owlqn"):
        if name == "lasso_cd" and theta_dense is None:
            continue
        t0 = time.perf_counter()
        res = solve_measurements(op, y, cfg, name)
        wall = (time.perf_counter() - t0) * 1e3
        grad = op.adjoint(op.apply(res.coeffs) - y)
        results[name] = res
        state_bytes = (
            op.p * op.n * 8 if name == "lasso_cd" else (op.n + op.p + 2 * memory * op.n) * 8
        )
        entry[name] = {
            "objective": res.objective_final,
            "kkt_residual": lasso_kkt_residual(res.coeffs, grad, lam),
            "iterations": res.iterations,
            "converged": res.converged,
            "nnz": res.nnz,
            "wall_ms": wall,
            "state_bytes": state_bytes,
        }
    if len(results) == 2:
        fa = results["lasso_cd"].objective_final
        fb = results["owlqn"].objective_final
        gap = abs(fa - fb) / max(abs(fa), abs(fb), 1e-300)
        entry["objective_rel_gap"] = gap
        entry["agree_1e-5"] = bool(gap <= 1e-5)
    return entry


def cmd_compare(args) -> int:
    cfg_base = _build_config(args, lam=0.0)
    memory = args.memory if args.memory is not None else cfg_base.memory
    doc = {"seed": args.seed}
    if args.input:
        img = load_image(args.input)
        wh = img.pixels_per_channel
        indices = sample_indices(wh, args.fraction, args.seed)
        lam = args.lam * indices.size  # per-sample alpha convention
        doc.update({"instance": "image", "input": args.input,
                    "fraction": args.fraction, "lambda": lam, "channels": []})
        for c in range(img.channels):
            op = ThetaOperator(n=wh, indices=indices)
            doc["channels"].append(_compare_instance(op, img.channel(c)[indices], lam, cfg_base, memory))
        gaps = [ch.get("objective_rel_gap") for ch in doc["channels"] if "objective_rel_gap" in ch]
        if gaps:
            doc["objective_rel_gap"] = max(gaps)
            doc["agree_1e-5"] = bool(doc["objective_rel_gap"] <= 1e-5)
    else:
        rng = SplitMix64(args.seed)
        s_true = sparse_spike_coeffs(args.n, args.k, rng)
        x_true = dct_inverse(s_true)
        p = max(1, int(args.fraction * args.n))
        indices = choose_without_replacement(args.n, p, rng)
        op = ThetaOperator(n=args.n, indices=indices)
        lam = args.lam  # direct weight for synthetic instances
        doc.update({"instance": "synthetic", "k": args.k, "lambda": lam})
        doc.update(_compare_instance(op, x_true[indices], lam, cfg_base, memory))
    _emit_json(doc, args.report)
    _say("solver comparison written" + ("" if args.report is None else f" to {args.report}"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csrecover",
        description="Reconstruct signals and images from a random fraction of their entries.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common_solver_flags(sp, lam_default, lam_help):
        sp.add_argument("--lambda", dest="lam", type=float, default=lam_default, help=lam_help)
        sp.add_argument("--max-iters", type=int, default=None, help="iteration cap per solve")
        sp.add_argument("--tol", type=float, default=None, help="convergence tolerance")
        sp.add_argument("--memory", type=int, default=None, help="L-BFGS history length")
        sp.add_argument("--solver", choices=sorted(_SOLVER_NAMES), default="owlqn",
                        help="l1 solver (lasso = dense coordinate descent, capped at "
                             f"n <= {DENSE_CAP}; owlqn = matrix-free)")

    sp = sub.add_parser("sample", help="sample random pixels; write SampleSet JSON + preview")
    sp.add_argument("--input", required=True, help="P5/P6 image to sample")
    sp.add_argument("--output", default=None, help="preview image path (unsampled pixels zeroed)")
    sp.add_argument("--report", default=None, help="SampleSet JSON path (default: stdout)")
    sp.add_argument("--fraction", type=float, default=0.2, help="fraction of pixels to keep")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("reconstruct", help="recover an image from sampled pixels")
    sp.add_argument("--input", required=True, help="ground-truth P5/P6 image")
    sp.add_argument("--samples", default=None, help="SampleSet JSON from `csrecover sample`")
    sp.add_argument("--output", default=None, help="reconstructed image path")
    sp.add_argument("--report", default=None, help="report JSON path (default: stdout)")
    sp.add_argument("--fraction", type=float, default=0.2, help="fraction of pixels to sample")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    common_solver_flags(sp, DEFAULT_ALPHA,
                        "per-sample l1 weight alpha; objective weight is alpha*p")
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("synth", help="seeded sparse-recovery success-rate experiment")
    sp.add_argument("--n", type=int, default=256, help="signal dimension")
    sp.add_argument("--k", type=int, default=4, help="planted sparsity")
    sp.add_argument("--fraction", type=float, default=None,
                    help="sample fraction (overrides the k1 budget estimate)")
    sp.add_argument("--k1", type=float, default=1.0,
                    help="budget constant in p ~ k1*k*ln(n/k)")
    sp.add_argument("--trials", type=int, default=20, help="number of seeded trials")
    sp.add_argument("--seed", type=int, default=0, help="base seed (trial t uses seed+t)")
    sp.add_argument("--report", default=None, help="report JSON path (default: stdout)")
    common_solver_flags(sp, 1e-6, "direct l1 objective weight")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("compare", help="run both solvers on one instance and diff them")
    sp.add_argument("--input", default=None, help="P5/P6 image instance (else synthetic)")
    sp.add_argument("--n", type=int, default=256, help="synthetic signal dimension")
    sp.add_argument("--k", type=int, default=4, help="synthetic planted sparsity")
    sp.add_argument("--fraction", type=float, default=0.2, help="fraction of entries to sample")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed")
    sp.add_argument("--report", default=None, help="report JSON path (default: stdout)")
    common_solver_flags(sp, DEFAULT_ALPHA,
                        "l1 weight: alpha*p on images, direct weight on synthetic instances")
    sp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ImageFormatError, OSError) as exc:
        _say(f"error: {exc}")
        return 4
    except (LineSearchError, IterationLimitError) as exc:
        _say(f"solver failure: {exc}")
        return 3
    except (CsRecoverError, ValueError) as exc:
        _say(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
