"""Entrypoint wiring for the ramseylab CLI."""

from __future__ import annotations

import sys
from typing import Sequence

from .cli import EXIT_USAGE, parse_args
from .errors import ValidationError
from .orchestrator.env import prepare_environment
from .orchestrator.run_once import run_once
from .ramsey import EssentialMode

__all__ = ["main"]


def main(argv: Sequence[str] | None = None) -> int:
    args = _prepare_args(argv)
    settings = prepare_environment(args)
    return run_once(args, settings)


def _prepare_args(argv: Sequence[str] | None) -> object:
    args = parse_args(sys.argv[1:] if argv is None else list(argv))
    if args.threads < 1:
        _usage("--threads must be >= 1")
    for flag in ("budget_bell", "budget_hom"):
        value = getattr(args, flag)
        if value is not None and value < 1:
            _usage(f"--{flag.replace('_', '-')} must be >= 1")
    for flag in ("k", "t", "n_max", "k_max", "bound"):
        value = getattr(args, flag, None)
        if value is not None and value < 1:
            _usage(f"-{'-' if len(flag) > 1 else ''}{flag.replace('_', '-')} must be >= 1")
    if hasattr(args, "mode"):
        try:
            args.mode = EssentialMode.parse(args.mode)
        except ValidationError as exc:
            _usage(str(exc))
    if args.command == "functor" and (args.path is None) == (args.builtin is None):
        _usage("functor needs exactly one of PATH or --builtin")
    if args.command == "degree" and args.cat is None and args.kind is None:
        _usage("degree needs --cat or --class")
    return args


def _usage(message: str) -> None:
    sys.stderr.write(f"ramseylab: error: {message}\n")
    raise SystemExit(EXIT_USAGE)


if __name__ == "__main__":
    raise SystemExit(main())
