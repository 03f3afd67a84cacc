"""Environment preparation for a single command."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from ..cache import CacheStore, resolve_cache_dir
from ..config import DEFAULT_BUDGETS, Budgets, configure_debug

DEBUG_ENV = "RAMSEYLAB_DEBUG"
VERIFY_ENV = "RAMSEYLAB_CACHE_VERIFY"


@dataclass
class Settings:
    threads: int = 1
    budgets: Budgets = DEFAULT_BUDGETS
    cache: Optional[CacheStore] = None
    output: str = "console"
    color: bool = True
    debug: bool = False


def prepare_environment(args) -> Settings:
    debug = os.environ.get(DEBUG_ENV, "") not in ("", "0")
    configure_debug(debug)
    color = not args.no_color and "NO_COLOR" not in os.environ
    cache_dir = resolve_cache_dir(args.cache_dir)
    cache = None
    if cache_dir is not None:
        if cache_dir.exists() and not cache_dir.is_dir():
            raise SystemExit(f"--cache-dir must be a directory: {cache_dir}")
        cache = CacheStore(cache_dir, verify_every=_verify_every(), color=color)
    budgets = DEFAULT_BUDGETS.with_overrides(bell=args.budget_bell, hom=args.budget_hom)
    return Settings(
        threads=args.threads,
        budgets=budgets,
        cache=cache,
        output=args.output,
        color=color,
        debug=debug,
    )


def _verify_every() -> int:
    raw = os.environ.get(VERIFY_ENV, "0")
    try:
        return max(int(raw), 0)
    except ValueError:
        raise SystemExit(f"{VERIFY_ENV} must be an integer, got: {raw}") from None
