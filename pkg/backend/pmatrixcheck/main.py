"""
Command-line front end for pmatrixcheck

Exit codes: 0 YES / valid / consistent, 1 NO / invalid, 2 inconsistency,
3 input error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pmatrixcheck.commands import ExitCode
from pmatrixcheck.commands.oracles import (
    cmd_interval_sing,
    cmd_maxcut,
    cmd_pmatrix,
    cmd_reduce_interval,
    cmd_reduce_maxcut,
    cmd_reduce_rnorm,
    cmd_rnorm,
)
from pmatrixcheck.commands.pipeline import cmd_pipeline
from pmatrixcheck.commands.suites import SUITES, cmd_suite
from pmatrixcheck.commands.verify import cmd_verify_certificate
from pmatrixcheck.config import config
from pmatrixcheck.schemas import CERTIFICATE_KINDS
from pmatrixcheck.utils.logging_config import (
    enable_debug_mode,
    enable_quiet_mode,
    setup_logging,
)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmatrixcheck",
        description="Exact oracles, reductions and certificates for "
        "MAX CUT -> R-NORM -> INTERVAL SINGULARITY -> P-MATRIX",
    )
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    noise.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("maxcut", help="is there a cut of size >= K?")
    p.add_argument("graph_file")
    p.add_argument("K", type=int)
    p.add_argument("--cert-out", metavar="PATH")

    p = sub.add_parser("rnorm", help="is r(A) >= K?")
    p.add_argument("matrix_file")
    p.add_argument("K", help="rational threshold, p or p/q")
    p.add_argument("--cert-out", metavar="PATH")

    p = sub.add_parser("interval-sing", help="does the interval contain a singular matrix?")
    p.add_argument("interval_file")
    p.add_argument("--cert-out", metavar="PATH")
    p.add_argument(
        "--method",
        choices=("vertex", "psi"),
        default="vertex",
        help="vertex determinant signs (default) or psi on the corner form",
    )

    p = sub.add_parser("pmatrix", help="is the matrix a P-matrix?")
    p.add_argument("matrix_file")
    p.add_argument("--cert-out", metavar="PATH")

    p = sub.add_parser("reduce-maxcut", help="(G, K) -> (A, threshold)")
    p.add_argument("graph_file")
    p.add_argument("K", type=int)
    p.add_argument("-o", "--out", metavar="PATH", help="write the matrix here instead of stdout")

    p = sub.add_parser("reduce-rnorm", help="(A, K) -> interval")
    p.add_argument("matrix_file")
    p.add_argument("K", help="rational threshold, p or p/q")
    p.add_argument("-o", "--out", metavar="PATH")

    p = sub.add_parser("reduce-interval", help="interval -> Coxson matrix")
    p.add_argument("interval_file")
    p.add_argument("-o", "--out", metavar="PATH")

    p = sub.add_parser("pipeline", help="run and cross-check the whole chain")
    p.add_argument("graph_file")
    p.add_argument("K", type=int)
    p.add_argument(
        "--max-n",
        type=int,
        default=None,
        help=f"largest n for the P-matrix stage (default {config.PIPELINE_MAX_N})",
    )
    p.add_argument("--cert-out", metavar="PATH", help="write the JSON report here")

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("kind", choices=CERTIFICATE_KINDS)
    p.add_argument("instance_file")
    p.add_argument("cert_file")
    p.add_argument("--K", dest="threshold", help="also check the decision threshold (cut, norm-witness)")

    p = sub.add_parser("suite", help="run the seeded randomized equivalence suites")
    p.add_argument(
        "names", nargs="*", metavar="SUITE", help=f"any of {', '.join(SUITES)} (default: all)"
    )
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=None, help="instances per suite")

    return parser


def dispatch(args: argparse.Namespace) -> int:
    command = args.command
    if command == "maxcut":
        return cmd_maxcut(args.graph_file, args.K, args.cert_out)
    if command == "rnorm":
        return cmd_rnorm(args.matrix_file, args.K, args.cert_out)
    if command == "interval-sing":
        return cmd_interval_sing(args.interval_file, args.cert_out, method=args.method)
    if command == "pmatrix":
        return cmd_pmatrix(args.matrix_file, args.cert_out)
    if command == "reduce-maxcut":
        return cmd_reduce_maxcut(args.graph_file, args.K, args.out)
    if command == "reduce-rnorm":
        return cmd_reduce_rnorm(args.matrix_file, args.K, args.out)
    if command == "reduce-interval":
        return cmd_reduce_interval(args.interval_file, args.out)
    if command == "pipeline":
        return cmd_pipeline(args.graph_file, args.K, args.max_n, args.cert_out)
    if command == "verify":
        return cmd_verify_certificate(args.kind, args.instance_file, args.cert_file, args.threshold)
    return cmd_suite(args.names, args.seed, args.count)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors; usage errors are input errors here
        return ExitCode.INPUT_ERROR if e.code else ExitCode.OK

    setup_logging()
    if args.verbose:
        enable_debug_mode()
    elif args.quiet:
        enable_quiet_mode()

    try:
        return int(dispatch(args))
    except ValueError as e:
        # FormatError, ShapeError, SingularMatrixError, ... are all ValueErrors
        logger.debug("Input error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
