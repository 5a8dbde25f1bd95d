from sopmi.hits.backends import (
    REMOTE_MIN_DELAY,
    CountingBackend,
    FixtureBackend,
    HitBackend,
    IndexBackend,
    ScanBackend,
)
from sopmi.hits.cache import CachedBackend, QueryCache, Throttle, cached_hits
from sopmi.hits.corpus import iter_corpus, load_corpus
from sopmi.hits.index import (
    DEFAULT_WINDOW,
    CorpusDocument,
    HitIndex,
    HitQuery,
    Near,
    Term,
    build_index,
    hits,
    hits_oracle,
    load_index,
    save_index,
)

__all__ = [
    "CachedBackend",
    "CorpusDocument",
    "CountingBackend",
    "DEFAULT_WINDOW",
    "FixtureBackend",
    "HitBackend",
    "HitIndex",
    "HitQuery",
    "IndexBackend",
    "Near",
    "QueryCache",
    "REMOTE_MIN_DELAY",
    "ScanBackend",
    "Term",
    "Throttle",
    "build_index",
    "cached_hits",
    "hits",
    "hits_oracle",
    "iter_corpus",
    "load_corpus",
    "load_index",
    "save_index",
]
