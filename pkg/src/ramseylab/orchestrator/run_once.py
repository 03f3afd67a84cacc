"""Single-command orchestration: dispatch, emit, and map failures to exit codes."""

from __future__ import annotations

import sys
import time

from ..console import note, print_scope, print_suite, print_summary, print_verdict, warn
from ..errors import BudgetExceeded, UnsupportedQuery, ValidationError
from ..reporting import build_report, render_json, render_tsv
from .dispatch import CommandOutcome, dispatch
from .env import Settings

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_INTERRUPTED = 130


def run_once(args, settings: Settings) -> int:
    started = time.perf_counter()
    try:
        outcome = dispatch(args, settings)
    except KeyboardInterrupt:
        return EXIT_INTERRUPTED
    except BudgetExceeded as exc:
        _emit_error(args, settings, exc, budget=exc.budget, requested=exc.requested, limit=exc.limit)
        return EXIT_BUDGET
    except ValidationError as exc:
        _emit_error(args, settings, exc, law=exc.law, witness=exc.witness)
        return EXIT_INVALID
    except UnsupportedQuery as exc:
        _emit_error(args, settings, exc, unsupported=True)
        return EXIT_INVALID
    duration = time.perf_counter() - started
    _emit(args, settings, outcome, duration)
    return outcome.exit_code


def _emit(args, settings: Settings, outcome: CommandOutcome, duration: float) -> None:
    if settings.output == "json":
        sys.stdout.write(render_json(build_report(args.command, outcome.result)) + "\n")
    elif settings.output == "tsv" and outcome.table is not None:
        rows, columns = outcome.table
        sys.stdout.write(render_tsv(rows, columns) + "\n")
    elif settings.output == "tsv":
        warn("tsv", f"{args.command} has no table; writing JSON", enabled=settings.color)
        sys.stdout.write(render_json(build_report(args.command, outcome.result)) + "\n")
    elif outcome.recorders:
        for rec in outcome.recorders:
            print_suite(rec, enabled=settings.color, verbose=getattr(args, "verbose", False))
        print_summary(outcome.recorders, duration, enabled=settings.color)
    else:
        print_verdict(outcome.headline, outcome.ok, outcome.lines, enabled=settings.color)
        scope = outcome.result.get("scope") if isinstance(outcome.result, dict) else None
        if scope and not any(line.startswith("scope:") for line in outcome.lines):
            print_scope(scope, enabled=settings.color)
    if settings.output != "console":
        note("time", f"{duration:.3f}s", enabled=settings.color)


def _emit_error(args, settings: Settings, exc: Exception, **details) -> None:
    if settings.output == "json":
        body = {"error": str(exc), "type": type(exc).__name__}
        body.update({key: value for key, value in details.items() if value is not None})
        sys.stdout.write(render_json(build_report(args.command, body)) + "\n")
        return
    warn("error", str(exc), enabled=settings.color)
    for key, value in details.items():
        if value is not None and value is not True:
            warn("error", f"{key}: {value}", enabled=settings.color)
