"""Command-line front end.

Subcommands map one-to-one onto the library operations:

    check-conditions   grid check of a concavity hypothesis
    check-premise      majorization premise for a weight pair
    dominance          full comparison of two weighted sums
    bounds             geometric/power-mean sandwich report
    capacity           E log(1 + sum a_i Y_i) estimates
    verify-appendix    all proof-machinery claim reports
    gen-pair           random premise-satisfying weight pair

Exit codes: 0 when the checked statement holds (or the command just
produces output), 2 when a verified violation is found, 1 for unusable
input or a failed hypothesis (the message names it).  Reports are JSON
(sorted keys, so identical configs give byte-identical output); curve
reports can also be CSV, and ``--plot`` renders a figure next to the
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import plotting
from .appendix_verifier import MappingContext, run_all_claims
from .bounds import sandwich
from .distributions import (
    DistributionSpec,
    check_kr_condition,
    check_theorem1_condition,
    check_theorem2_condition,
    check_theorem4_condition,
    parse_distribution,
)
from .errors import PreconditionError, SpecParseError
from .majorization import (
    PremiseMode,
    WeightVector,
    parse_mode,
    parse_weights,
    premise_holds,
    random_majorization_pair,
    transform,
)
from .streams import SeededStream
from .sum_engine import (
    DEFAULT_Z,
    compare_weighted_sums,
    expected_log_capacity,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs of a curve-producing run."""

    dist: DistributionSpec | None
    mode: PremiseMode | None
    a: WeightVector | None
    b: WeightVector | None
    t_grid: np.ndarray | None
    n_samples: int
    seed: int
    z: float
    out: str | None
    fmt: str
    plot: str | None


def _parse_t_grid(text: str) -> np.ndarray | None:
    """``auto`` or ``min:max:count`` with inclusive endpoints."""
    if text == "auto":
        return None
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"t-grid must be 'auto' or 'min:max:count', got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError(f"bad t-grid spec {text!r}") from None
    if not (0 < lo < hi) or count < 2:
        raise ValueError("t-grid needs 0 < min < max and count >= 2")
    return np.linspace(lo, hi, count)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_json(payload, out: str | None) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True), out)


def _config_from_args(args) -> RunConfig:
    dist = parse_distribution(args.dist) if getattr(args, "dist", None) else None
    mode = parse_mode(args.mode) if getattr(args, "mode", None) else None
    a = parse_weights(args.a) if getattr(args, "a", None) else None
    b = parse_weights(args.b) if getattr(args, "b", None) else None
    t_grid = _parse_t_grid(getattr(args, "t_grid", "auto"))
    n_samples = int(getattr(args, "samples", 10**6))
    if n_samples < 1000:
        raise ValueError("--samples must be at least 1000")
    z = float(getattr(args, "z", DEFAULT_Z))
    if z < 0:
        raise ValueError("--z must be non-negative")
    return RunConfig(
        dist=dist,
        mode=mode,
        a=a,
        b=b,
        t_grid=t_grid,
        n_samples=n_samples,
        seed=int(getattr(args, "seed", 0)),
        z=z,
        out=getattr(args, "out", None),
        fmt=getattr(args, "format", "json"),
        plot=getattr(args, "plot", None),
    )


# ---------------------------------------------------------------------------
# Subcommand bodies.
# ---------------------------------------------------------------------------


def _cmd_check_conditions(args) -> int:
    cfg = _config_from_args(args)
    mode, d = cfg.mode, cfg.dist
    if mode.kind == "thm1":
        report = check_theorem1_condition(d)
    elif mode.kind == "thm2":
        report = check_theorem2_condition(d, mode.p)
    elif mode.kind == "kr":
        report = check_kr_condition(d, mode.p)
    else:
        report = check_theorem4_condition(d)
    _emit_json(report.to_dict(), cfg.out)
    return EXIT_OK if report.holds else EXIT_VIOLATION


def _cmd_check_premise(args) -> int:
    cfg = _config_from_args(args)
    ta = transform(cfg.a, cfg.mode)
    tb = transform(cfg.b, cfg.mode)
    holds = premise_holds(cfg.a, cfg.b, cfg.mode)
    _emit_json(
        {
            "mode": cfg.mode.label(),
            "a": list(cfg.a.values),
            "b": list(cfg.b.values),
            "transformed_a": [float(x) for x in ta],
            "transformed_b": [float(x) for x in tb],
            "premise_holds": holds,
        },
        cfg.out,
    )
    return EXIT_OK if holds else EXIT_VIOLATION


def _two_curve_csv(lower, upper) -> str:
    lines = ["t,cdf_lower,se_lower,cdf_upper,se_upper"]
    for t, lv, ls, uv, us in zip(
        lower.t_grid, lower.values, lower.std_errors, upper.values, upper.std_errors
    ):
        lines.append(f"{t!r},{lv!r},{ls!r},{uv!r},{us!r}")
    return "\n".join(lines) + "\n"


def _cmd_dominance(args) -> int:
    cfg = _config_from_args(args)
    report, curve_a, curve_b = compare_weighted_sums(
        cfg.dist,
        cfg.a,
        cfg.b,
        cfg.mode,
        t_grid=cfg.t_grid,
        n_samples=cfg.n_samples,
        seed=cfg.seed,
        z=cfg.z,
        with_curves=True,
    )
    if cfg.mode.kind == "thm2":
        lower, upper = curve_b, curve_a
    else:
        lower, upper = curve_a, curve_b
    if cfg.fmt == "csv":
        _emit(_two_curve_csv(lower, upper), cfg.out)
    else:
        payload = report.to_dict()
        if args.curves:
            payload["curve_a"] = curve_a.to_dict()
            payload["curve_b"] = curve_b.to_dict()
        _emit_json(payload, cfg.out)
    if cfg.plot:
        plotting.render_dominance(
            cfg.plot,
            lower,
            upper,
            report,
            title=f"{cfg.dist.label()}  mode {cfg.mode.label()}",
        )
    return EXIT_OK if report.holds else EXIT_VIOLATION


def _cmd_bounds(args) -> int:
    cfg = _config_from_args(args)
    report = sandwich(
        cfg.dist,
        cfg.a,
        args.q,
        t_grid=cfg.t_grid,
        n_samples=cfg.n_samples,
        seed=cfg.seed,
        z=cfg.z,
    )
    if cfg.fmt == "csv":
        _emit(report.to_csv(), cfg.out)
    else:
        _emit_json(report.to_dict(), cfg.out)
    if cfg.plot:
        plotting.render_sandwich(
            cfg.plot, report, title=f"{cfg.dist.label()}  weights {args.a}"
        )
    return EXIT_OK if report.holds else EXIT_VIOLATION


def _cmd_capacity(args) -> int:
    cfg = _config_from_args(args)
    est_a, se_a = expected_log_capacity(cfg.dist, cfg.a, cfg.n_samples, cfg.seed)
    payload = {
        "dist": cfg.dist.label(),
        "a": list(cfg.a.values),
        "estimate_a": est_a,
        "se_a": se_a,
    }
    code = EXIT_OK
    if cfg.b is not None:
        est_b, se_b = expected_log_capacity(cfg.dist, cfg.b, cfg.n_samples, cfg.seed)
        payload.update({"b": list(cfg.b.values), "estimate_b": est_b, "se_b": se_b})
        if cfg.mode is not None:
            if not premise_holds(cfg.a, cfg.b, cfg.mode):
                raise PreconditionError(
                    f"majorization premise of mode {cfg.mode.label()} fails"
                )
            pooled = float(np.hypot(se_a, se_b))
            # thm2 mode predicts the b-sum below the a-sum; others the reverse
            if cfg.mode.kind == "thm2":
                margin = est_a - est_b + cfg.z * pooled
            else:
                margin = est_b - est_a + cfg.z * pooled
            payload["ordering_margin"] = margin
            payload["ordering_consistent"] = margin >= 0
            if margin < 0:
                code = EXIT_VIOLATION
    _emit_json(payload, cfg.out)
    return code


def _cmd_verify_appendix(args) -> int:
    contexts = None
    if args.p is not None or args.beta is not None or args.t is not None:
        if None in (args.p, args.beta, args.t):
            raise ValueError("give all of --p, --beta, --t or none of them")
        contexts = [MappingContext(p=args.p, beta=args.beta, t=args.t)]
    reports = run_all_claims(
        contexts=contexts,
        y_resolution=args.y_resolution,
        include_h_monotone=args.with_h,
    )
    _emit_json([r.to_dict() for r in reports], args.out)
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATION


def _cmd_gen_pair(args) -> int:
    mode = parse_mode(args.mode)
    a, b = random_majorization_pair(
        args.n, mode, SeededStream(args.seed), steps=args.steps
    )
    _emit_json(
        {
            "mode": mode.label(),
            "n": args.n,
            "seed": args.seed,
            "steps": args.steps,
            "a": list(a.values),
            "b": list(b.values),
            "premise_holds": premise_holds(a, b, mode),
        },
        args.out,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser assembly.
# ---------------------------------------------------------------------------


def _add_common(sub, dist=True, weights=True, mc=True, fmt=True, plot=False):
    if dist:
        sub.add_argument("--dist", required=True, help="distribution spec, e.g. gamma:alpha=1,beta=1")
    if weights:
        sub.add_argument("--a", required=True, help="comma-separated weights")
    if mc:
        sub.add_argument("--t-grid", dest="t_grid", default="auto", help="'auto' or min:max:count")
        sub.add_argument("--samples", type=int, default=10**6)
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--z", type=float, default=DEFAULT_Z, help="tolerance multiplier in pooled standard errors")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    if fmt:
        sub.add_argument("--format", choices=("json", "csv"), default="json")
    if plot:
        sub.add_argument("--plot", default=None, help="also render a figure to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wsum",
        description="Stochastic-order comparisons for weighted sums of i.i.d. variables.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("check-conditions", help="grid check of a concavity hypothesis")
    sub.add_argument("--dist", required=True)
    sub.add_argument("--mode", required=True, help="thm1 | thm2:p=<p> | kr:p=<p> | thm4")
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_check_conditions)

    sub = subs.add_parser("check-premise", help="majorization premise for a weight pair")
    sub.add_argument("--mode", required=True)
    sub.add_argument("--a", required=True)
    sub.add_argument("--b", required=True)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_check_premise)

    sub = subs.add_parser("dominance", help="compare two weighted sums")
    _add_common(sub, plot=True)
    sub.add_argument("--b", required=True, help="comma-separated weights")
    sub.add_argument("--mode", required=True)
    sub.add_argument("--curves", action="store_true", help="embed both curves in the JSON report")
    sub.set_defaults(func=_cmd_dominance)

    sub = subs.add_parser("bounds", help="geometric/power-mean sandwich report")
    _add_common(sub, plot=True)
    sub.add_argument("--q", type=float, required=True, help="power-mean exponent, > 1")
    sub.set_defaults(func=_cmd_bounds)

    sub = subs.add_parser("capacity", help="E log(1 + weighted sum) estimates")
    _add_common(sub, fmt=False)
    sub.add_argument("--b", default=None, help="second weight vector to compare against")
    sub.add_argument("--mode", default=None, help="verify the premise and expected ordering")
    sub.set_defaults(func=_cmd_capacity)

    sub = subs.add_parser("verify-appendix", help="run all proof-machinery claim reports")
    sub.add_argument("--p", type=float, default=None)
    sub.add_argument("--beta", type=float, default=None)
    sub.add_argument("--t", type=float, default=None)
    sub.add_argument("--y-resolution", dest="y_resolution", type=int, default=512)
    sub.add_argument("--with-h", dest="with_h", action="store_true",
                     help="include the quadrature-based h(beta) monotonicity reports")
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_verify_appendix)

    sub = subs.add_parser("gen-pair", help="random premise-satisfying weight pair")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--mode", required=True)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--steps", type=int, default=8)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=_cmd_gen_pair)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for verified
        # violations here, so remap
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"error: {exc.annotated()}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
