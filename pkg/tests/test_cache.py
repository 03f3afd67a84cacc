import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr
from pathlib import Path
from unittest import mock

from ramseylab.cache import CACHE_ENV, CacheStore, digest_of, resolve_cache_dir


class CacheStoreTests(unittest.TestCase):
    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.root = Path(self._tmp.name) / "cache"
        self.store = CacheStore(self.root, color=False)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_put_then_get(self) -> None:
        payload = {"category": "E", "object": "A"}
        path = self.store.put("degree", payload, {"value": 2})
        self.assertTrue(path.exists())
        self.assertEqual(path.parent.name, path.stem[:2])
        self.assertEqual(self.store.get("degree", payload), {"value": 2})
        self.assertIsNone(self.store.get("entropy", payload))

    def test_fetch_counts_hits_and_misses(self) -> None:
        calls = []

        def compute():
            calls.append(1)
            return [1, 2, 3]

        first, hit1 = self.store.fetch("arrow", {"k": 2}, compute)
        second, hit2 = self.store.fetch("arrow", {"k": 2}, compute)
        self.assertEqual((first, hit1), ([1, 2, 3], False))
        self.assertEqual((second, hit2), ([1, 2, 3], True))
        self.assertEqual(len(calls), 1)
        self.assertEqual(self.store.stats()["hits"], 1)
        self.assertEqual(self.store.stats()["entries"], 1)

    def test_corrupt_entry_warns_and_recomputes(self) -> None:
        path = self.store.put("arrow", {"k": 2}, True)
        path.write_text("{not json", encoding="utf-8")
        buffer = io.StringIO()
        with redirect_stderr(buffer):
            result, hit = self.store.fetch("arrow", {"k": 2}, lambda: False)
        self.assertEqual((result, hit), (False, False))
        self.assertIn("[cache] unreadable entry", buffer.getvalue())
        self.assertEqual(json.loads(path.read_text(encoding="utf-8"))["result"], False)

    def test_engine_change_misses(self) -> None:
        self.store.put("arrow", {"k": 2}, True)
        newer = CacheStore(self.root, engine="ramseylab/9.9.9", color=False)
        self.assertIsNone(newer.get("arrow", {"k": 2}))
        self.assertNotEqual(digest_of("a", "arrow", 1), digest_of("b", "arrow", 1))

    def test_verification_overwrites_a_stale_entry(self) -> None:
        self.store.put("arrow", {"k": 2}, "stale")
        checking = CacheStore(self.root, verify_every=1, color=False)
        with redirect_stderr(io.StringIO()):
            result, hit = checking.fetch("arrow", {"k": 2}, lambda: "fresh")
        self.assertEqual((result, hit), ("fresh", False))
        self.assertEqual(self.store.get("arrow", {"k": 2}), "fresh")

    def test_gc_by_age_and_size(self) -> None:
        paths = [self.store.put("arrow", {"k": k}, "x" * 2000) for k in range(3)]
        for offset, path in enumerate(paths):
            os.utime(path, (1000 + offset, 1000 + offset))
        removed = self.store.gc(max_age_days=1, now=1001.5 + 86400)
        self.assertEqual(removed, paths[:2])
        self.store.put("arrow", {"k": 9}, "y" * 2000)
        removed = self.store.gc(max_mb=0.003)
        self.assertEqual(removed, [paths[2]])
        self.assertEqual(self.store.stats()["entries"], 1)

    def test_clear(self) -> None:
        for k in range(4):
            self.store.put("arrow", {"k": k}, k)
        self.assertEqual(self.store.clear(), 4)
        self.assertEqual(self.store.entries(), [])


class ResolveCacheDirTests(unittest.TestCase):
    def test_flag_wins_over_environment(self) -> None:
        with mock.patch.dict(os.environ, {CACHE_ENV: "/tmp/from-env"}):
            self.assertEqual(resolve_cache_dir(Path("/tmp/flag")), Path("/tmp/flag"))
            self.assertEqual(resolve_cache_dir(None), Path("/tmp/from-env"))

    def test_no_cache_by_default(self) -> None:
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertIsNone(resolve_cache_dir(None))


if __name__ == "__main__":
    unittest.main()
