"""Persistent memoization of hit counts, with backend call pacing."""

from __future__ import annotations

import logging
import os
import threading
import time
import weakref
from pathlib import Path
from typing import Callable, Optional

from sopmi.errors import CacheIoError
from sopmi.hits.backends import HitBackend
from sopmi.hits.index import HitQuery

log = logging.getLogger(__name__)


class QueryCache:
    """Canonical query string -> hit count, persisted as an append-only TSV log.

    Each store appends one ``key<TAB>count`` line; on load, later lines win.
    A torn final line (no trailing newline) is ignored. With ``path=None``
    the cache lives in memory only.
    """

    def __init__(self, path: Optional[str | Path] = None):
        self.path = Path(path) if path is not None else None
        self._data: dict[str, int] = {}
        self._lock = threading.Lock()
        self._key_locks: dict[str, threading.Lock] = {}
        self.lookups = 0
        self.misses = 0
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self) -> None:
        try:
            text = self.path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CacheIoError(f"cannot read cache {self.path}: {exc}") from exc
        lines = text.split("\n")
        complete, tail = lines[:-1], lines[-1]
        if tail:
            log.warning("ignoring torn final line in cache %s", self.path)
        for line_no, line in enumerate(complete, 1):
            if not line:
                continue
            key, sep, value = line.rpartition("\t")
            if not sep or not value.isdigit():
                raise CacheIoError(f"{self.path}:{line_no}: malformed cache line")
            self._data[key] = int(value)

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def get(self, key: str) -> Optional[int]:
        with self._lock:
            self.lookups += 1
            value = self._data.get(key)
            if value is None:
                self.misses += 1
            return value

    def put(self, key: str, count: int) -> None:
        if "\t" in key or "\n" in key:
            raise ValueError(f"cache keys cannot contain tabs or newlines: {key!r}")
        with self._lock:
            if self.path is not None:
                try:
                    with open(self.path, "a", encoding="utf-8") as fh:
                        fh.write(f"{key}\t{count}\n")
                except OSError as exc:
                    raise CacheIoError(f"cannot write cache {self.path}: {exc}") from exc
            self._data[key] = count

    def key_lock(self, key: str) -> threading.Lock:
        with self._lock:
            return self._key_locks.setdefault(key, threading.Lock())

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            if self.path is not None and self.path.exists():
                try:
                    os.remove(self.path)
                except OSError as exc:
                    raise CacheIoError(f"cannot clear cache {self.path}: {exc}") from exc

    def stats(self) -> dict:
        size = self.path.stat().st_size if self.path is not None and self.path.exists() else 0
        return {
            "path": str(self.path) if self.path else None,
            "entries": len(self._data),
            "term_entries": sum(1 for k in self._data if k.startswith("term|")),
            "near_entries": sum(1 for k in self._data if k.startswith("near|")),
            "bytes": size,
        }


class Throttle:
    """Serializes calls and keeps at least ``min_delay`` seconds between them."""

    def __init__(self, min_delay: float, clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep):
        self.min_delay = min_delay
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._last: Optional[float] = None

    def call(self, fn, *args):
        with self._lock:
            if self._last is not None and self.min_delay > 0:
                wait = self.min_delay - (self._clock() - self._last)
                if wait > 0:
                    self._sleep(wait)
            try:
                return fn(*args)
            finally:
                self._last = self._clock()


_throttles: "weakref.WeakKeyDictionary[object, Throttle]" = weakref.WeakKeyDictionary()
_throttles_lock = threading.Lock()


def throttle_for(backend: HitBackend) -> Throttle:
    with _throttles_lock:
        t = _throttles.get(backend)
        if t is None:
            t = _throttles[backend] = Throttle(getattr(backend, "min_delay", 0.0))
        return t


def cached_hits(cache: QueryCache, backend: HitBackend, q: HitQuery,
                throttle: Optional[Throttle] = None) -> int:
    """Return the cached count for ``q``, querying ``backend`` at most once per key.

    Concurrent callers asking for the same key share one backend call. Backend
    errors propagate and leave the cache unchanged.
    """
    key = q.canonical()
    value = cache.get(key)
    if value is not None:
        return value
    with cache.key_lock(key):
        if key in cache:
            return cache.get(key)
        count = (throttle or throttle_for(backend)).call(backend.hits, q)
        cache.put(key, count)
        return count


class CachedBackend:
    """A backend that answers through a :class:`QueryCache`."""

    min_delay = 0.0

    def __init__(self, backend: HitBackend, cache: Optional[QueryCache] = None,
                 throttle: Optional[Throttle] = None):
        self.backend = backend
        self.cache = cache if cache is not None else QueryCache()
        self.throttle = throttle or Throttle(getattr(backend, "min_delay", 0.0))

    def hits(self, q: HitQuery) -> int:
        return cached_hits(self.cache, self.backend, q, self.throttle)
