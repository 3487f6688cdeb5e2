"""Command-line interface: fit, convergence, eval and verify."""

import argparse
import logging
import sys
from logging import getLogger
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from Phodcos.document import (
    document_from_path,
    load_document,
    path_from_document,
    save_document,
)
from Phodcos.errors import IngestionError, PhodcosError, SchemaVersionMismatch, SourceValidationError
from Phodcos.ingest import BUILTIN_CURVES, CurveSource, builtin_curve, from_samples, load_orbit_csv
from Phodcos.pipeline import (
    ConvergenceRow,
    GrowthStrategy,
    PipelineConfig,
    convergence_study,
    observed_order,
    phodcos,
)
from Phodcos.properties import run_all

logger = getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONVERGENCE = 3
EXIT_PROPERTY = 4

RATIO_FLOOR = 1e-14
MAX_EXPONENT = 8
FLOAT_FORMAT = "%.17g"

EVAL_COLUMNS = (
    ["xi", "px", "py", "pz"]
    + [f"r{i}{j}" for i in range(1, 4) for j in range(1, 4)]
    + ["wx", "wy", "wz", "sigma", "L", "kappa", "tau"]
)


def _source(args: argparse.Namespace) -> CurveSource:
    if args.csv is not None:
        samples = load_orbit_csv(args.csv)
        return from_samples(samples, args.fit_tol, description=f"csv:{Path(args.csv).name}")
    return builtin_curve(args.curve)


def _write_csv(frame: pd.DataFrame, output: Optional[Path]) -> None:
    frame.to_csv(output if output is not None else sys.stdout, index=False, float_format=FLOAT_FORMAT)


def convergence_table(rows: Sequence[ConvergenceRow]) -> pd.DataFrame:
    """Rows as a table; the ratio is "-" for the first row or below the error floor."""
    ratios: List[str] = []
    for index, row in enumerate(rows):
        previous = rows[index - 1].max_error if index else 0.0
        if row.ratio is None or previous < RATIO_FLOOR:
            ratios.append("-")
        else:
            ratios.append(FLOAT_FORMAT % row.ratio)
    if ratios.count("-") > 1:
        logger.warning(f"{ratios.count('-')} ratios skipped: errors at the floating point floor")
    return pd.DataFrame(
        {
            "n_segments": [row.n_segments for row in rows],
            "max_error": [row.max_error for row in rows],
            "ratio": ratios,
        }
    )


def cmd_fit(args: argparse.Namespace) -> int:
    src = _source(args)
    config = PipelineConfig(
        epsilon=args.epsilon,
        n_s_init=args.n_init,
        growth=GrowthStrategy(args.growth.upper()),
        samples_per_segment=args.samples_per_segment,
        max_segments=args.max_segments,
        enforce_continuity=not args.no_continuity,
        workers=args.workers,
    )
    path, rows = phodcos(src, config)
    print(f"n_segments={path.n_segments} max_error={rows[-1].max_error:.6e}")
    if args.output is not None:
        document = document_from_path(
            path, source=src.description, epsilon=args.epsilon, max_error=rows[-1].max_error
        )
        save_document(document, args.output)
    return EXIT_OK


def cmd_convergence(args: argparse.Namespace) -> int:
    if not 0 <= args.min_exp <= args.max_exp <= MAX_EXPONENT:
        raise ValueError(
            f"invalid exponent range {args.min_exp}..{args.max_exp} (allowed 0..{MAX_EXPONENT})"
        )
    src = _source(args)
    rows = convergence_study(
        src, range(args.min_exp, args.max_exp + 1), args.samples_per_segment, args.workers
    )
    _write_csv(convergence_table(rows), args.output)
    if len(rows) > 1 and all(row.max_error > 0.0 for row in rows):
        logger.info(f"observed order {observed_order(rows):.3f}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    path = path_from_document(load_document(args.document))
    xi = np.linspace(path.xi0, path.xif, args.samples)
    frame = path.frame(xi)
    geometry = path.geometry(xi)
    table = np.column_stack(
        [
            xi,
            path.evaluate(xi),
            frame.R.reshape(len(xi), 9),
            frame.omega,
            frame.sigma,
            geometry.L,
            geometry.kappa,
            geometry.tau,
        ]
    )
    _write_csv(pd.DataFrame(table, columns=EVAL_COLUMNS), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_all(_source(args), args.segments)
    for result in results:
        print(result)
    failed = [result.name for result in results if not result.passed]
    if failed:
        print(f"failed properties: {', '.join(failed)}", file=sys.stderr)
        return EXIT_PROPERTY
    return EXIT_OK


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--curve", choices=sorted(BUILTIN_CURVES), default="exemplary", help="built-in curve"
    )
    group.add_argument("--csv", type=Path, help="samples (x,y,z) or (t,x,y,z), one per row")
    parser.add_argument(
        "--fit-tol", type=float, default=0.0, help="smoothing tolerance of the spline fit"
    )


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="phodcos",
        description="Piecewise Pythagorean-hodograph parameterization of curves.",
    )
    parser.add_argument(
        "--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    )
    commands = parser.add_subparsers(dest="command", required=True)

    fit = commands.add_parser("fit", help="parameterize a curve to a tolerance")
    _add_source_arguments(fit)
    fit.add_argument("--epsilon", type=float, default=1e-6)
    fit.add_argument("--output", type=Path, help="parameterization document (JSON)")
    fit.add_argument("--n-init", type=int, default=2)
    fit.add_argument("--growth", choices=["double", "increment"], default="double")
    fit.add_argument("--samples-per-segment", type=int, default=1000)
    fit.add_argument("--max-segments", type=int, default=4096)
    fit.add_argument("--no-continuity", action="store_true", help="skip the roll correction")
    fit.add_argument("--workers", type=int, default=1)
    fit.set_defaults(handler=cmd_fit)

    convergence = commands.add_parser("convergence", help="errors for 2^m uniform segments")
    _add_source_arguments(convergence)
    convergence.add_argument("--min-exp", type=int, default=0)
    convergence.add_argument("--max-exp", type=int, default=MAX_EXPONENT)
    convergence.add_argument("--samples-per-segment", type=int, default=1000)
    convergence.add_argument("--workers", type=int, default=1)
    convergence.add_argument("--output", type=Path, help="CSV table (default stdout)")
    convergence.set_defaults(handler=cmd_convergence)

    evaluate = commands.add_parser("eval", help="sample a parameterization document")
    evaluate.add_argument("document", type=Path)
    evaluate.add_argument("--samples", type=int, default=101)
    evaluate.add_argument("--output", type=Path, help="CSV samples (default stdout)")
    evaluate.set_defaults(handler=cmd_eval)

    verify = commands.add_parser("verify", help="run the property checks")
    _add_source_arguments(verify)
    verify.add_argument("--segments", type=int, default=4)
    verify.set_defaults(handler=cmd_verify)
    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    logger.info(f"running {args.command}")
    try:
        return int(args.handler(args))
    except (
        IngestionError,
        SchemaVersionMismatch,
        SourceValidationError,
        ValueError,
        OSError,
    ) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT
    except PhodcosError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    raise SystemExit(main())
