"""Command-line entry point: ``run``, ``converge`` and ``picard``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from ..errors import ConfigurationError, NumericError
from .config import parse_config
from .runner import EXIT_CONFIG, EXIT_NUMERIC, HarnessError, convergence_harness, run

log = logging.getLogger("bondi_ekg")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="TOML run configuration")
    common.add_argument("--output-dir", help="override output.dir from the config")
    common.add_argument("--seedless", action="store_true",
                        help="reserved; the solver uses no random numbers, so this is rejected")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="bondi-ekg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="evolve (and Picard-solve) one configuration")
    conv = sub.add_parser("converge", parents=[common], help="self-convergence study over n, 2n, 4n, ...")
    conv.add_argument("--levels", type=int, default=3)
    sub.add_parser("picard", parents=[common], help="Picard fixed-point iteration only")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.seedless:
        print("error: --seedless is reserved; nothing in the solver is random", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_config(args.config)
        if args.command == "picard":
            cfg = cfg.replace(solver={"mode": "picard"})
        print(cfg.echo())
        if args.command == "converge":
            out = args.output_dir or cfg.output_dir
            report = convergence_harness(cfg, args.levels, output_dir=out)
            print(json.dumps(report.as_dict(), indent=2))
            return 0
        return run(cfg, args.output_dir)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HarnessError as exc:
        print(f"harness error: {exc}", file=sys.stderr)
        print(json.dumps(exc.report.as_dict(), indent=2), file=sys.stderr)
        return EXIT_NUMERIC
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
