"""Command line entry point.

Exit codes: 0 the scenario ran (the verdict is in the output), 1 validation
error, 2 unsupported case, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .errors import BudgetExceededError, UnsupportedCaseError, ValidationError
from .report import render, run_scenario
from .scenario import load_scenario

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_UNSUPPORTED = 2
EXIT_BUDGET = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strongapprox",
        description="Decide strong approximation for SL_n/SL_1(A) over p-adic function fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and print its report")
    run.add_argument("scenario", help="scenario file, or a bundled name such as examples/inner_p1_quaternion")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--oracle", action="store_true", help="also run the brute-force exactness check")
    run.add_argument("--workers", type=int, default=1, help="processes for the oracle enumeration")

    validate = sub.add_parser("validate", help="check a scenario file without running it")
    validate.add_argument("scenario")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario)
        if args.command == "validate":
            print(f"{scenario.name}: ok ({scenario.mode} type, {len(scenario.curve.places)} places)")
            return EXIT_OK
        if args.workers < 1:
            raise ValidationError("must be at least 1", "--workers")
        report = run_scenario(scenario, with_oracle=args.oracle, workers=args.workers)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except UnsupportedCaseError as exc:
        print(f"unsupported case: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    sys.stdout.buffer.write(render(report, args.format))
    sys.stdout.flush()
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
