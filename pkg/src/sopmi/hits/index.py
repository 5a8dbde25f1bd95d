"""Positional inverted index answering document-level hit counts.

A hit is a matching document, counted once however many times it matches.
``Near`` queries require the two phrase words to be adjacent and the term to
fall within ``window`` tokens of either phrase word, on either side.
"""

from __future__ import annotations

import json
import struct
import zlib
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, Union

from sopmi.errors import DuplicateDocId, IndexFormatError

DEFAULT_WINDOW = 10

MAGIC = b"SOPX"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sI")


@dataclass(frozen=True)
class CorpusDocument:
    doc_id: str
    source: str
    words: tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.words, tuple):
            object.__setattr__(self, "words", tuple(self.words))


def _check_word(word: str) -> None:
    if not word or word != word.lower() or any(ch.isspace() for ch in word):
        raise ValueError(f"query words must be non-empty, lowercase, whitespace-free: {word!r}")


@dataclass(frozen=True)
class Term:
    word: str

    def __post_init__(self):
        _check_word(self.word)


@dataclass(frozen=True)
class Near:
    word1: str
    word2: str
    term: str
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        for w in (self.word1, self.word2, self.term):
            _check_word(w)
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")


@dataclass(frozen=True)
class HitQuery:
    kind: Union[Term, Near]
    exclusions: frozenset[str] = frozenset()

    def __post_init__(self):
        if not isinstance(self.exclusions, frozenset):
            object.__setattr__(self, "exclusions", frozenset(self.exclusions))

    @classmethod
    def term(cls, word: str, exclusions: Iterable[str] = ()) -> "HitQuery":
        return cls(Term(word), frozenset(exclusions))

    @classmethod
    def near(cls, word1: str, word2: str, term: str, window: int = DEFAULT_WINDOW,
             exclusions: Iterable[str] = ()) -> "HitQuery":
        return cls(Near(word1, word2, term, window), frozenset(exclusions))

    def canonical(self) -> str:
        """Stable string key, e.g. ``near|low fees|excellent|10|epinions``."""
        excl = ",".join(sorted(self.exclusions))
        k = self.kind
        if isinstance(k, Term):
            return f"term|{k.word}|{excl}"
        return f"near|{k.word1} {k.word2}|{k.term}|{k.window}|{excl}"


@dataclass
class HitIndex:
    """Immutable once built; safe for concurrent readers.

    ``postings`` maps word -> {doc ordinal: sorted positions}, with doc
    ordinals ascending. ``docs`` lists (doc_id, source) by ordinal.
    """

    docs: list[tuple[str, str]] = field(default_factory=list)
    postings: dict[str, dict[int, tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        by_source = defaultdict(set)
        for ordinal, (_, source) in enumerate(self.docs):
            by_source[source].add(ordinal)
        self._by_source = dict(by_source)

    @property
    def corpus_size(self) -> int:
        return len(self.docs)

    @property
    def sources(self) -> set[str]:
        return set(self._by_source)

    def excluded_ordinals(self, exclusions: Iterable[str]) -> set[int]:
        out: set[int] = set()
        for source in exclusions:
            out |= self._by_source.get(source, set())
        return out

    def postings_for(self, word: str) -> list[tuple[str, tuple[int, ...]]]:
        """Postings keyed by external doc id, in index order."""
        return [(self.docs[o][0], pos) for o, pos in self.postings.get(word, {}).items()]


def build_index(docs: Iterable[CorpusDocument]) -> HitIndex:
    table = []
    seen = set()
    postings: dict[str, dict[int, list[int]]] = defaultdict(dict)
    for ordinal, doc in enumerate(docs):
        if doc.doc_id in seen:
            raise DuplicateDocId(doc.doc_id)
        seen.add(doc.doc_id)
        table.append((doc.doc_id, doc.source))
        for pos, word in enumerate(doc.words):
            postings[word].setdefault(ordinal, []).append(pos)
    frozen = {w: {o: tuple(p) for o, p in plist.items()} for w, plist in sorted(postings.items())}
    return HitIndex(table, frozen)


def _near_in_doc(first: Sequence[int], second: Sequence[int], term: Sequence[int], window: int) -> bool:
    second_set = set(second)
    for p in first:
        if p + 1 not in second_set:
            continue
        # min(|t - p|, |t - (p+1)|) <= window  <=>  p - window <= t <= p + 1 + window
        i = bisect_left(term, p - window)
        if i < len(term) and term[i] <= p + 1 + window:
            return True
    return False


def hits(index: HitIndex, q: HitQuery) -> int:
    """Number of non-excluded documents matching ``q``."""
    excluded = index.excluded_ordinals(q.exclusions) if q.exclusions else set()
    k = q.kind
    if isinstance(k, Term):
        plist = index.postings.get(k.word, {})
        if not excluded:
            return len(plist)
        return sum(1 for o in plist if o not in excluded)

    lists = [index.postings.get(w) for w in (k.word1, k.word2, k.term)]
    if not all(lists):
        return 0
    p1, p2, pt = lists
    driver = min(lists, key=len)
    count = 0
    for o in driver:
        if o in excluded or o not in p1 or o not in p2 or o not in pt:
            continue
        if _near_in_doc(p1[o], p2[o], pt[o], k.window):
            count += 1
    return count


def hits_oracle(docs: Iterable[CorpusDocument], q: HitQuery) -> int:
    """Linear-scan reference for :func:`hits`, with no index."""
    k = q.kind
    count = 0
    for doc in docs:
        if doc.source in q.exclusions:
            continue
        w = doc.words
        if isinstance(k, Term):
            matched = k.word in w
        else:
            phrase_at = [p for p in range(len(w) - 1) if w[p] == k.word1 and w[p + 1] == k.word2]
            term_at = [t for t in range(len(w)) if w[t] == k.term]
            matched = any(min(abs(t - p), abs(t - p - 1)) <= k.window for p in phrase_at for t in term_at)
        count += matched
    return count


def save_index(index: HitIndex, path: str | Path) -> None:
    payload = {
        "docs": index.docs,
        "postings": {w: [[o, list(p)] for o, p in plist.items()] for w, plist in index.postings.items()},
    }
    blob = zlib.compress(json.dumps(payload, separators=(",", ":")).encode("utf-8"))
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION))
        fh.write(blob)


def load_index(path: str | Path) -> HitIndex:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size:
        raise IndexFormatError(f"{path}: truncated header")
    magic, version = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise IndexFormatError(f"{path}: not an index file (bad magic {magic!r})")
    if version != FORMAT_VERSION:
        raise IndexFormatError(f"{path}: unsupported index format version {version}")
    try:
        payload = json.loads(zlib.decompress(data[_HEADER.size:]))
    except (zlib.error, ValueError) as exc:
        raise IndexFormatError(f"{path}: corrupt payload ({exc})") from exc
    docs = [tuple(d) for d in payload["docs"]]
    postings = {w: {o: tuple(p) for o, p in plist} for w, plist in payload["postings"].items()}
    return HitIndex(docs, postings)

