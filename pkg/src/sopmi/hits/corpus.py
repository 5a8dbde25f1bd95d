"""Reference-corpus ingestion from JSON Lines."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator

from sopmi.errors import MalformedDocument
from sopmi.hits.index import CorpusDocument
from sopmi.tagging import PUNCTUATION, tokenize


def corpus_words(text: str) -> tuple[str, ...]:
    """Lowercased word tokens; stripped punctuation does not occupy positions."""
    return tuple(
        t.surface.lower() for t in tokenize(text) if not all(ch in PUNCTUATION for ch in t.surface)
    )


def iter_corpus(path: str | Path) -> Iterator[CorpusDocument]:
    """Yield documents from lines of ``{"id", "source", "text"}``."""
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedDocument(line_no, f"invalid JSON ({exc.msg})") from None
            if not isinstance(row, dict):
                raise MalformedDocument(line_no, "expected a JSON object")
            for key in ("id", "source", "text"):
                if not isinstance(row.get(key), str):
                    raise MalformedDocument(line_no, f"missing or non-string field {key!r}")
            yield CorpusDocument(row["id"], row["source"], corpus_words(row["text"]))


def load_corpus(path: str | Path) -> list[CorpusDocument]:
    return list(iter_corpus(path))
