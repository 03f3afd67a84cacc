"""Content-addressed JSON store for computed results."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

from .console import warn

ENGINE_VERSION = "ramseylab/0.1.0"
CACHE_ENV = "RAMSEYLAB_CACHE"


def digest_of(engine: str, kind: str, payload: Any) -> str:
    canonical = json.dumps({"engine": engine, "input": payload, "kind": kind}, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class CacheStore:
    root: Path
    engine: str = ENGINE_VERSION
    verify_every: int = 0
    color: bool = True
    hits: int = 0
    misses: int = 0
    _notes: list[str] = field(default_factory=list)

    def path_for(self, digest: str) -> Path:
        return self.root / digest[:2] / f"{digest}.json"

    def get(self, kind: str, payload: Any) -> Optional[Any]:
        digest = digest_of(self.engine, kind, payload)
        return self._read_entry(self.path_for(digest), kind)

    def put(self, kind: str, payload: Any, result: Any) -> Path:
        digest = digest_of(self.engine, kind, payload)
        entry = {"engine": self.engine, "kind": kind, "input": payload, "result": result}
        path = self.path_for(digest)
        self._save_file(path, entry)
        return path

    def fetch(self, kind: str, payload: Any, compute: Callable[[], Any]) -> tuple[Any, bool]:
        """Cached result or a fresh one; the flag tells whether it was a hit."""
        digest = digest_of(self.engine, kind, payload)
        path = self.path_for(digest)
        cached = self._read_entry(path, kind)
        if cached is None:
            self.misses += 1
            result = compute()
            self._save_file(path, {"engine": self.engine, "kind": kind, "input": payload, "result": result})
            return result, False
        self.hits += 1
        if self.verify_every and int(digest, 16) % self.verify_every == 0:
            fresh = compute()
            if fresh != cached:
                self._note(f"entry {digest[:12]} differs from recomputation; overwritten")
                self._save_file(path, {"engine": self.engine, "kind": kind, "input": payload, "result": fresh})
                return fresh, False
        return cached, True

    def _read_entry(self, path: Path, kind: str) -> Optional[Any]:
        if not path.exists():
            return None
        try:
            content = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError, UnicodeDecodeError):
            self._note(f"unreadable entry {path.name}; recomputing")
            return None
        if not isinstance(content, dict) or "result" not in content:
            self._note(f"malformed entry {path.name}; recomputing")
            return None
        if content.get("engine") != self.engine or content.get("kind") != kind:
            return None
        return content["result"]

    def _save_file(self, path: Path, data: dict[str, Any]) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".json", dir=path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def _note(self, message: str) -> None:
        self._notes.append(message)
        warn("cache", message, enabled=self.color)

    def entries(self) -> list[Path]:
        if not self.root.exists():
            return []
        return sorted(p for p in self.root.glob("*/*.json") if not p.name.startswith(".tmp-"))

    def stats(self) -> dict[str, Any]:
        files = self.entries()
        return {
            "root": str(self.root),
            "entries": len(files),
            "bytes": sum(p.stat().st_size for p in files),
            "hits": self.hits,
            "misses": self.misses,
        }

    def gc(self, max_mb: Optional[float] = None, max_age_days: Optional[float] = None, now: Optional[float] = None) -> list[Path]:
        """Drop entries older than ``max_age_days``, then the oldest until under ``max_mb``."""
        now = time.time() if now is None else now
        files = sorted(self.entries(), key=lambda p: p.stat().st_mtime)
        removed: list[Path] = []
        if max_age_days is not None:
            cutoff = now - max_age_days * 86400
            for path in list(files):
                if path.stat().st_mtime < cutoff:
                    path.unlink()
                    removed.append(path)
                    files.remove(path)
        if max_mb is not None:
            limit = max_mb * 1024 * 1024
            total = sum(p.stat().st_size for p in files)
            for path in list(files):
                if total <= limit:
                    break
                total -= path.stat().st_size
                path.unlink()
                removed.append(path)
        return removed

    def clear(self) -> int:
        files = self.entries()
        for path in files:
            path.unlink()
        return len(files)


def resolve_cache_dir(flag: Optional[Path]) -> Optional[Path]:
    if flag is not None:
        return flag.expanduser()
    env = os.environ.get(CACHE_ENV)
    return Path(env).expanduser() if env else None
