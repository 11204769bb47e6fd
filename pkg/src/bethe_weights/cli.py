"""Command-line entry point: ``bethe-weights run`` and ``bethe-weights compute``."""
from __future__ import annotations

import argparse
import sys

from .checks import CHECKS
from .harness import ConfigInvalid, RunConfig, compute, run
from .scalars import SamplingExhausted

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_EXHAUSTED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigInvalid(message)


def _pattern(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad colour pattern {text!r}") from None


def _checks(text: str) -> tuple:
    if text == "all":
        return tuple(CHECKS)
    return tuple(c.strip() for c in text.split(",") if c.strip())


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="rank N of gl_N")
    common.add_argument("--factors", type=int, default=1, help="number of vector-representation factors")
    common.add_argument("--pattern", type=_pattern, default=(), help="comma-separated colours, e.g. 1,2,1")
    common.add_argument("--seed", type=int, action="append", help="base seed (repeatable)")
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = _Parser(prog="bethe-weights", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser("run", parents=[common], help="run identity checks at seeded sample points")
    p_run.add_argument("--trials", type=int, default=1)
    p_run.add_argument("--checks", type=_checks, default=tuple(CHECKS), help="comma list or 'all'")
    p_run.add_argument("--emit", choices=("text", "machine"), default="text")
    p_run.add_argument("--timing", action="store_true", help="record wall time per record")

    p_compute = sub.add_parser("compute", parents=[common], help="print one exact weight-function value")
    p_compute.add_argument("kind", choices=("bethe", "projection"))
    return parser


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        seeds = tuple(args.seed) if args.seed else (0,)
        if args.command == "run":
            config = RunConfig(args.n, args.factors, args.pattern, seeds, args.trials, args.checks, args.timing)
            report = run(config)
            _write(report.to_json() if args.emit == "machine" else report.to_text(), args.out)
            return EXIT_PASS if report.passed else EXIT_FAIL
        config = RunConfig(args.n, args.factors, args.pattern, seeds)
        _write(compute(args.kind, config, seeds[0]), args.out)
        return EXIT_PASS
    except ConfigInvalid as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SamplingExhausted as exc:
        print(f"sampling exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED


if __name__ == "__main__":
    sys.exit(main())
