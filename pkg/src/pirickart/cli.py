"""``pirickart`` command line.

Exit codes: 0 clean, 1 a property was refuted (or the suite failed),
2 input error, 3 some verdict was left inconclusive by a cap or ceiling.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import ExitStack
from pathlib import Path

from .classifier import classify, witness_dossier
from .config import RunConfig
from .lattice_ops import inject_fault
from .structures import FIXTURES, PresentationError, fixture, load_presentation
from .theoremsuite import THEOREMS, run_suite

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
FAULTS = ("summand-true",)


class InputError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    d = RunConfig()
    p.add_argument("--box", type=int, default=d.box, metavar="B", help="coefficient bound for box scans")
    p.add_argument("--cap", type=int, default=d.cap, metavar="N", help="endomorphism enumeration cap")
    p.add_argument("--power-ceiling", type=int, default=d.power_ceiling, metavar="K",
                   help="max powers tried when a chain may not stabilize")
    p.add_argument("--format", choices=("json", "markdown"), default=d.output_format)
    p.add_argument("--jobs", type=int, default=d.jobs, help="worker processes")
    p.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)
    p.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pirickart", description="Classify modules and check implications.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a module from a presentation file or fixture")
    c.add_argument("path", nargs="?", type=Path, help="presentation file (.mod, TOML)")
    c.add_argument("--fixture", choices=sorted(FIXTURES))
    _common(c)

    s = sub.add_parser("suite", help="run the theorem suite over the catalog")
    s.add_argument("--only", action="append", metavar="ID", help="run only this theorem (repeatable)")
    _common(s)

    w = sub.add_parser("witness", help="dossier for one endomorphism")
    w.add_argument("path", nargs="?", type=Path, help="presentation file")
    w.add_argument("--fixture", choices=sorted(FIXTURES))
    w.add_argument("--matrix", required=True, help='endomorphism matrix as JSON, e.g. "[[0,0],[1,0]]"')
    _common(w)
    return parser


def _config(args, **extra) -> RunConfig:
    try:
        return RunConfig(
            cap=args.cap, box=args.box, power_ceiling=args.power_ceiling, output_format=args.format,
            jobs=args.jobs, inject_fault=args.inject_fault, **extra,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _module(args):
    if (args.path is None) == (args.fixture is None):
        raise InputError("give exactly one of a presentation path or --fixture")
    if args.fixture:
        entry = fixture(args.fixture)
        return entry.module, entry.witnesses, entry.name
    try:
        M = load_presentation(args.path)
    except PresentationError as exc:
        raise InputError(str(exc)) from None
    return M, (), M.name


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        output.write_text(text if text.endswith("\n") else text + "\n")


def cmd_classify(args) -> int:
    config = _config(args, fixture=args.fixture)
    M, witnesses, name = _module(args)
    report = classify(M, config, witnesses, name)
    _emit(report.render(config.output_format), args.output)
    return report.exit_code()


def cmd_suite(args) -> int:
    only = None
    if args.only:
        only = tuple(t.strip() for arg in args.only for t in arg.split(",") if t.strip())
        unknown = [t for t in only if t not in THEOREMS]
        if unknown:
            raise InputError(f"unknown theorem id(s): {', '.join(unknown)}")
    report = run_suite(_config(args, only=only))
    _emit(report.render(args.format), args.output)
    return report.exit_code()


def cmd_witness(args) -> int:
    config = _config(args, fixture=args.fixture)
    M, _, _ = _module(args)
    try:
        F = json.loads(args.matrix)
    except json.JSONDecodeError as exc:
        raise InputError(f"--matrix is not valid JSON: {exc}") from None
    try:
        dossier = witness_dossier(M, F, config)
    except (ValueError, TypeError) as exc:
        raise InputError(f"--matrix: {exc}") from None
    if config.output_format == "json":
        text = json.dumps(dossier, indent=2, sort_keys=True)
    else:
        text = "\n".join(f"- {k}: {json.dumps(v)}" for k, v in sorted(dossier.items()))
    _emit(text, args.output)
    status = dossier["pi_rickart_at_f"]["status"]
    return {"ok": EXIT_OK, "fail": EXIT_REFUTED}.get(status, EXIT_INCONCLUSIVE)


COMMANDS = {"classify": cmd_classify, "suite": cmd_suite, "witness": cmd_witness}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with ExitStack() as stack:
            if args.inject_fault:
                stack.enter_context(inject_fault(args.inject_fault))
            return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"pirickart: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
