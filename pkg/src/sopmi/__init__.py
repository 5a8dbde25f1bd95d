"""Unsupervised thumbs-up/thumbs-down review classification.

Phrases matching adjective/adverb tag patterns are scored by a PMI log-odds
statistic over proximity hit counts, and a review is labelled by the mean
score of its phrases.
"""

from sopmi.tagging import PosTag, TaggedToken, Token, parse_pretagged, tag_baseline, tokenize
from sopmi.phrases import CandidatePhrase, extract_phrases, match_pattern
from sopmi.hits import (
    CorpusDocument,
    HitIndex,
    HitQuery,
    build_index,
    hits,
    hits_oracle,
)
from sopmi.orientation import SoConfig, SoEstimate, estimate_so, pmi
from sopmi.classify import ClassificationResult, Label, Review, classify_review

__version__ = "0.1.0"

__all__ = [
    "CandidatePhrase",
    "ClassificationResult",
    "CorpusDocument",
    "HitIndex",
    "HitQuery",
    "Label",
    "PosTag",
    "Review",
    "SoConfig",
    "SoEstimate",
    "TaggedToken",
    "Token",
    "build_index",
    "classify_review",
    "estimate_so",
    "extract_phrases",
    "hits",
    "hits_oracle",
    "match_pattern",
    "parse_pretagged",
    "pmi",
    "tag_baseline",
    "tokenize",
]
