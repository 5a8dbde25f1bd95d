"""Hit-count backends.

Anything with a ``hits(query) -> int`` method and a ``min_delay`` attribute
(seconds to wait between successive calls) can serve as a backend. Local
backends declare no delay; a remote search-engine client would declare
``REMOTE_MIN_DELAY``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping, Protocol, Sequence

from sopmi.errors import BackendUnavailable, DataError
from sopmi.hits.index import CorpusDocument, HitIndex, HitQuery, hits, hits_oracle

REMOTE_MIN_DELAY = 5.0


class HitBackend(Protocol):
    min_delay: float

    def hits(self, q: HitQuery) -> int: ...


class IndexBackend:
    min_delay = 0.0

    def __init__(self, index: HitIndex):
        self.index = index

    def hits(self, q: HitQuery) -> int:
        return hits(self.index, q)


class ScanBackend:
    """Answers by linear scan over raw documents. Slow; used as a cross-check."""

    min_delay = 0.0

    def __init__(self, docs: Iterable[CorpusDocument]):
        self.docs: Sequence[CorpusDocument] = list(docs)

    def hits(self, q: HitQuery) -> int:
        return hits_oracle(self.docs, q)


class FixtureBackend:
    """Replays counts from a canonical-query -> count mapping.

    Queries absent from the mapping raise ``BackendUnavailable``.
    """

    min_delay = 0.0

    def __init__(self, counts: Mapping[str, int]):
        self.counts = dict(counts)

    @classmethod
    def from_json(cls, path: str | Path) -> "FixtureBackend":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict) or not all(
            isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in data.values()
        ):
            raise DataError(f"{path}: fixture must map query strings to non-negative integers")
        return cls(data)

    def to_json(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.counts, fh, indent=1, sort_keys=True)
            fh.write("\n")

    def hits(self, q: HitQuery) -> int:
        key = q.canonical()
        try:
            return self.counts[key]
        except KeyError:
            raise BackendUnavailable(f"no fixture count for {key!r}") from None


class CountingBackend:
    """Wraps a backend and counts the calls that reach it."""

    def __init__(self, inner: HitBackend):
        self.inner = inner
        self.min_delay = inner.min_delay
        self.calls = 0
        self.queries: list[str] = []

    def hits(self, q: HitQuery) -> int:
        self.calls += 1
        self.queries.append(q.canonical())
        return self.inner.hits(q)
