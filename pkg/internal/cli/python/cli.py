"""
Isologcon CLI - reproducible CSV/SVG artifacts for every computation
Subcommands: profile, regions, deficit, oracle, cheeger, rearrange
"""

import argparse
import logging
import sys
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from internal.cli.python.region_plot import render_region_map
from internal.cli.python.writers import RunManifest, sibling_path, write_csv, write_manifest
from internal.common.python.config import toolkit_config
from internal.common.python.exceptions import DomainError, InfeasibleConstraintError, NumericalFailure
from internal.common.python.logging_setup import configure_logging
from internal.deficit.python.deficit import deficit_table
from internal.extremals.python.extremal_models import MAP_FAMILIES
from internal.extremals.python.extremals import isoperimetric_profile
from internal.extremals.python.region_map import region_map
from internal.functional.python.cheeger import cheeger_rate
from internal.functional.python.functional_models import PiecewiseFunction
from internal.functional.python.rearrangement import sharp_rearrangement
from internal.measures.python.measures import Measure, measure_from_spec
from internal.oracle.python.oracle import brute_min_perimeter
from internal.oracle.python.oracle_models import OracleConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _manifest(args, m: Measure, settings: dict, outputs: List[str], results: Optional[dict] = None) -> RunManifest:
    return RunManifest(
        command=args.command,
        measure=m.spec,
        settings=settings,
        seed=args.seed,
        outputs=[path for path in outputs if path not in (None, "-")],
        results=results or {},
        defaults=toolkit_config.as_dict(),
    )


def _float_list(text: str) -> List[float]:
    try:
        return [float(value) for value in text.split(",") if value.strip()]
    except ValueError:
        raise DomainError("list", text, "comma-separated numbers")


def handle_profile(args, m: Measure) -> int:
    if args.n < 1:
        raise DomainError("n", args.n, "integers >= 1")
    p = np.linspace(0.0, 1.0, args.n) if args.n > 1 else np.array([0.5])
    profile = np.asarray(isoperimetric_profile(m, p))
    j = np.asarray(m.j(p))
    write_csv(args.out, ["p", "I(p)", "J(p)"], zip(p, profile, j))
    write_manifest(args.out, _manifest(args, m, {"n": args.n}, [args.out]))
    return EXIT_OK


def handle_regions(args, m: Measure) -> int:
    grid_n = args.grid_n or toolkit_config.region_grid_n
    region = region_map(m, grid_n, origin_free=args.origin_free)
    labels = [family.value for family in MAP_FAMILIES]

    rows = []
    for i, p in enumerate(region.p_values):
        for k, lam in enumerate(region.lam_values):
            winner = region.winner[i, k] or None
            perimeters = [region.perimeters[family][i, k] for family in MAP_FAMILIES]
            rows.append([p, lam, winner] + perimeters)
    write_csv(args.out, ["p", "lambda", "winner"] + [f"P_{label}" for label in labels], rows)

    outputs = [args.out]
    if args.out not in (None, "-"):
        lambda0_rows = list(region.lambda0_curve)
        if region.p1 is not None and region.p2 is not None:
            lambda0_rows = [(region.p1, 2.0 * region.p1)] + lambda0_rows + [(region.p2, 1.0 - region.p2)]
        curve_files = {
            ".lambda0": (["p", "lambda0"], lambda0_rows),
            ".p0": (["lambda", "p0"], region.p0_curve),
            ".e1e2": (["p", "lambda"], region.e1_e2_curve),
        }
        for suffix, (header, curve) in curve_files.items():
            path = sibling_path(args.out, suffix)
            write_csv(path, header, curve)
            outputs.append(path)
    if args.svg:
        outputs.append(render_region_map(region, args.svg))

    results = {"p1": region.p1, "p2": region.p2}
    write_manifest(args.out, _manifest(args, m, {"grid_n": grid_n, "origin_free": args.origin_free}, outputs, results))
    return EXIT_OK


def handle_deficit(args, m: Measure) -> int:
    if args.p is None or args.lam is None:
        raise DomainError("--p/--lambda", (args.p, args.lam), "both values for the deficit table")
    rows = deficit_table(m, args.p, args.lam)
    header = ["family", "t", "perimeter", "measure", "asymmetry", "deficit", "bound", "origin_free_bound", "margin"]
    write_csv(args.out, header, ([getattr(row, name) for name in header] for row in rows))
    write_manifest(args.out, _manifest(args, m, {"p": args.p, "lambda": args.lam}, [args.out]))
    return EXIT_OK


def handle_oracle(args, m: Measure) -> int:
    if args.p is None:
        raise DomainError("--p", None, "a measure value in (0, 1)")
    cfg = OracleConfig(
        grid_n=args.grid_n or toolkit_config.grid_n,
        max_components=args.max_components or toolkit_config.max_components,
        measure_tol=args.measure_tol,
        asymmetry_tol=args.asymmetry_tol,
        seed=args.seed,
    )
    result = brute_min_perimeter(m, args.p, args.lam, cfg, origin_free=args.origin_free)
    header = [
        "p", "lambda", "origin_free", "min_perimeter", "witness", "measure_residual", "asymmetry_residual",
        "enumerated_count", "optimal_count", "tie", "closed_form", "closed_form_family", "discretization_bound",
    ]
    row = [
        result.p, result.lambda_target, result.origin_free, result.min_perimeter,
        " ".join(f"{t:.17g}" for t in result.witness.endpoints),
        result.constraint_residuals[0], result.constraint_residuals[1],
        result.enumerated_count, result.optimal_count, result.tie,
        result.closed_form, result.closed_form_family, result.discretization_bound,
    ]
    write_csv(args.out, header, [row])
    settings = cfg.model_dump()
    settings.update({"p": args.p, "lambda": args.lam, "origin_free": args.origin_free})
    write_manifest(args.out, _manifest(args, m, settings, [args.out], {"tie": result.tie}))
    return EXIT_OK


def handle_cheeger(args, m: Measure) -> int:
    if args.n < 2:
        raise DomainError("n", args.n, "integers >= 2")
    rate = cheeger_rate(m, n_points=args.n)
    write_csv(args.out, ["s", "beta(s)"], zip(rate.s_values, rate.beta_values))
    outputs = [args.out]
    if args.out not in (None, "-"):
        dual = sibling_path(args.out, ".dual")
        residuals = np.abs(np.asarray(rate.i_tilde_values) - np.asarray(rate.recovered_values))
        write_csv(dual, ["t", "I_tilde(t)", "recovered(t)", "residual"],
                  zip(rate.t_values, rate.i_tilde_values, rate.recovered_values, residuals))
        outputs.append(dual)
    residual = rate.round_trip_residual
    logger.info(f"Round-trip residual max_t |I(t) - sup_s (t-s)/beta(s)| = {residual:.3e}")
    write_manifest(args.out, _manifest(args, m, {"n": args.n}, outputs, {"round_trip_residual": residual}))
    return EXIT_OK


def handle_rearrange(args, m: Measure) -> int:
    if args.breakpoints is None or args.values is None:
        raise DomainError("--breakpoints/--values", None, "both lists for the rearranged function")
    if args.n < 2:
        raise DomainError("n", args.n, "integers >= 2")
    u = PiecewiseFunction(breakpoints=_float_list(args.breakpoints), values=_float_list(args.values))
    span = max(abs(u.breakpoints[0]), abs(u.breakpoints[-1]))
    x = np.linspace(-span, span, args.n)
    write_csv(args.out, ["x", "u", "u_sharp"], zip(x, u(x), sharp_rearrangement(u, m, x)))
    settings = {"n": args.n, "breakpoints": u.breakpoints, "values": u.values}
    write_manifest(args.out, _manifest(args, m, settings, [args.out]))
    return EXIT_OK


HANDLERS = {
    "profile": handle_profile,
    "regions": handle_regions,
    "deficit": handle_deficit,
    "oracle": handle_oracle,
    "cheeger": handle_cheeger,
    "rearrange": handle_rearrange,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isologcon", description="Isoperimetry toolkit for log-convex measures")
    parser.add_argument("command", choices=sorted(HANDLERS), help="Computation to run")
    parser.add_argument("--measure", default="cauchy:1", help="cauchy:<alpha> | exp | subexp:<alpha>")
    parser.add_argument("--n", type=int, default=101, help="Number of sample points")
    parser.add_argument("--grid-n", dest="grid_n", type=int, default=None, help="Grid resolution")
    parser.add_argument("--max-components", dest="max_components", type=int, default=None)
    parser.add_argument("--measure-tol", dest="measure_tol", type=float, default=None)
    parser.add_argument("--asymmetry-tol", dest="asymmetry_tol", type=float, default=None)
    parser.add_argument("--p", type=float, default=None, help="Measure of the set")
    parser.add_argument("--lambda", dest="lam", type=float, default=None, help="Asymmetry of the set")
    parser.add_argument("--origin-free", dest="origin_free", action="store_true", help="Only sets avoiding the origin")
    parser.add_argument("--breakpoints", default=None, help="Comma-separated breakpoints (rearrange)")
    parser.add_argument("--values", default=None, help="Comma-separated values (rearrange)")
    parser.add_argument("--seed", type=int, default=toolkit_config.seed)
    parser.add_argument("--out", default=None, help="CSV path; stdout when omitted")
    parser.add_argument("--svg", default=None, help="SVG path for the region map")
    parser.add_argument("--log-level", dest="log_level", default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    configure_logging(args.log_level)

    try:
        m = measure_from_spec(args.measure)
        return HANDLERS[args.command](args, m)
    except (DomainError, ValidationError) as e:
        logger.error(f"Usage error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, InfeasibleConstraintError) as e:
        logger.error(f"Numerical failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
