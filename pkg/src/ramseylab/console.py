"""Human-readable output: verdict lines, suite blocks and the closing summary."""

from __future__ import annotations

import sys
from typing import IO, Iterable, Optional

from .checks import CheckOutcome, CheckRecorder, Status

RESET = "\033[0m"
BOLD = "\033[1m"
DIM = "\033[2m"
CYAN = "\033[36m"
YELLOW = "\033[33m"
BG_GREEN = "\033[42m"
BG_RED = "\033[41m"
FG_WHITE = "\033[97m"
BRIGHT_GREEN = "\033[92m"
BRIGHT_RED = "\033[91m"
BRIGHT_YELLOW = "\033[93m"
BRIGHT_CYAN = "\033[96m"


def color(text: str, color_code: str, enabled: bool = True) -> str:
    return f"{color_code}{text}{RESET}" if enabled else text


def _status_colors() -> dict[Status, str]:
    return {Status.PASS: BRIGHT_GREEN, Status.FAIL: BRIGHT_RED, Status.RECORDED: BRIGHT_YELLOW}


def _icon_map(enabled: bool) -> dict[Status, str]:
    return {
        Status.PASS: color("✓", BRIGHT_GREEN, enabled),
        Status.FAIL: color("✕", BRIGHT_RED, enabled),
        Status.RECORDED: color("○", BRIGHT_YELLOW, enabled),
    }


def format_badge(status: str, enabled: bool = True) -> str:
    if not enabled:
        return f"[{status}]"
    if status == "PASS":
        return f"{BG_GREEN}{FG_WHITE}{BOLD} {status} {RESET}"
    if status == "FAIL":
        return f"{BG_RED}{FG_WHITE}{BOLD} {status} {RESET}"
    return color(f" {status} ", CYAN)


def warn(tag: str, message: str, stream: Optional[IO[str]] = None, enabled: bool = True) -> None:
    """One-line notice on stderr, e.g. ``[cache] entry unreadable``."""
    out = stream or sys.stderr
    out.write(color(f"[{tag}] {message}", YELLOW, enabled) + "\n")


def print_verdict(headline: str, ok: bool, lines: Iterable[str] = (), stream: Optional[IO[str]] = None, enabled: bool = True) -> None:
    out = stream or sys.stdout
    badge = format_badge("PASS" if ok else "FAIL", enabled)
    out.write(f"{badge} {color(headline, BOLD, enabled)}\n")
    for line in lines:
        out.write(f"  {line}\n")


def print_suite(rec: CheckRecorder, stream: Optional[IO[str]] = None, enabled: bool = True, verbose: bool = False) -> None:
    out = stream or sys.stdout
    badge = format_badge("PASS" if rec.passed else "FAIL", enabled)
    out.write(f"{badge} {color(rec.suite, BOLD, enabled)}\n")
    icons = _icon_map(enabled)
    for outcome in rec.outcomes:
        if outcome.status is Status.PASS and not verbose:
            continue
        _print_outcome(out, outcome, icons, enabled)


def _print_outcome(out: IO[str], outcome: CheckOutcome, icons: dict[Status, str], enabled: bool) -> None:
    text_color = _status_colors()[outcome.status] if outcome.status is Status.FAIL else DIM
    line = f"    {icons[outcome.status]} {color(outcome.name, text_color, enabled)}"
    if outcome.status is Status.RECORDED and outcome.detail:
        line += f" {color('[' + outcome.detail + ']', DIM, enabled)}"
    out.write(line + "\n")
    if outcome.status is Status.FAIL and outcome.detail:
        for extra in outcome.detail.splitlines():
            out.write(f"      {extra}\n")


def print_summary(recorders: Iterable[CheckRecorder], duration: float, stream: Optional[IO[str]] = None, enabled: bool = True) -> None:
    out = stream or sys.stdout
    recorders = list(recorders)
    failed_suites = sum(1 for rec in recorders if not rec.passed)
    totals = {status: sum(rec.counts.get(status, 0) for rec in recorders) for status in Status}
    if failed_suites:
        badge = color(" FAIL ", BRIGHT_RED, enabled)
        title = color("Suites failing", BOLD, enabled)
    else:
        badge = format_badge("PASS", enabled)
        title = color("Suites complete", BOLD, enabled)
    out.write("\n")
    out.write(f"{badge} {title}\n")

    def fmt(value: int, label: str, clr: str) -> Optional[str]:
        if value == 0:
            return None
        return color(f"{value} {label}", clr, enabled)

    suite_parts = [
        fmt(failed_suites, "failed", BRIGHT_RED),
        fmt(len(recorders) - failed_suites, "passed", BRIGHT_GREEN),
    ]
    check_parts = [
        fmt(totals[Status.FAIL], "failed", BRIGHT_RED),
        fmt(totals[Status.PASS], "passed", BRIGHT_GREEN),
        fmt(totals[Status.RECORDED], "recorded", BRIGHT_YELLOW),
    ]
    suite_summary = ", ".join([p for p in suite_parts if p] + [f"{len(recorders)} total"])
    check_summary = ", ".join([p for p in check_parts if p] + [f"{sum(totals.values())} total"])
    out.write(f"  Suites: {suite_summary}\n")
    out.write(f"  Checks: {check_summary}\n")
    out.write(f"  Time:   {duration:.2f}s\n")


def print_scope(scope: str, stream: Optional[IO[str]] = None, enabled: bool = True) -> None:
    out = stream or sys.stdout
    out.write(f"  {color('›', BRIGHT_CYAN, enabled)} {color('scope: ' + scope, DIM, enabled)}\n")


def note(tag: str, message: str, stream: Optional[IO[str]] = None, enabled: bool = True) -> None:
    out = stream or sys.stderr
    out.write(color(f"[{tag}] {message}", DIM, enabled) + "\n")
