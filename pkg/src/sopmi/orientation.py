"""Semantic orientation of a phrase as a smoothed PMI log-odds over hit counts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Protocol

from sopmi.errors import DegenerateReference, DomainError
from sopmi.hits import DEFAULT_WINDOW, HitBackend, HitQuery


class WordPair(NamedTuple):
    """Any object with ``word1``/``word2`` can be scored; this is the minimal one."""

    word1: str
    word2: str


class _HasWords(Protocol):
    word1: str
    word2: str


@dataclass(frozen=True)
class SoConfig:
    positive_ref: str = "excellent"
    negative_ref: str = "poor"
    epsilon: float = 0.01
    min_hits: int = 4
    log_base: float = math.e
    window: int = DEFAULT_WINDOW
    exclusions: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.exclusions, frozenset):
            object.__setattr__(self, "exclusions", frozenset(self.exclusions))
        if self.positive_ref == self.negative_ref:
            raise ValueError("positive and negative reference words must differ")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.min_hits < 0:
            raise ValueError(f"min_hits must be non-negative, got {self.min_hits}")
        if not self.log_base > 1:
            raise ValueError(f"log_base must exceed 1, got {self.log_base}")
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")

    def swapped(self) -> "SoConfig":
        """Same settings with the reference words exchanged."""
        return SoConfig(self.negative_ref, self.positive_ref, self.epsilon, self.min_hits,
                        self.log_base, self.window, self.exclusions)


class RawCounts(NamedTuple):
    near_positive: int
    near_negative: int
    positive_total: int
    negative_total: int


@dataclass(frozen=True)
class SoEstimate:
    value: Optional[float]
    counts: RawCounts

    @property
    def skipped(self) -> bool:
        return self.value is None

    @property
    def status(self) -> str:
        return "skipped" if self.value is None else "computed"


def pmi(p_joint: float, p1: float, p2: float, log_base: float = 2.0) -> float:
    """Pointwise mutual information, ``log(p_joint / (p1 * p2))`` in ``log_base``."""
    for name, p in (("p_joint", p_joint), ("p1", p1), ("p2", p2)):
        if not 0 < p <= 1:
            raise DomainError(f"{name} must lie in (0, 1], got {p}")
    if not log_base > 1:
        raise DomainError(f"log_base must exceed 1, got {log_base}")
    return math.log(p_joint / (p1 * p2)) / math.log(log_base)


def log_odds(near_pos: float, near_neg: float, pos_total: float, neg_total: float,
             epsilon: float, log_base: float) -> float:
    # epsilon goes on all four counts so that swapping references negates exactly
    num = (near_pos + epsilon) * (neg_total + epsilon)
    den = (near_neg + epsilon) * (pos_total + epsilon)
    return math.log(num / den) / math.log(log_base)


def reference_queries(cfg: SoConfig) -> tuple[HitQuery, HitQuery]:
    return (HitQuery.term(cfg.positive_ref, cfg.exclusions),
            HitQuery.term(cfg.negative_ref, cfg.exclusions))


def phrase_queries(phrase: _HasWords, cfg: SoConfig) -> tuple[HitQuery, HitQuery]:
    return (
        HitQuery.near(phrase.word1, phrase.word2, cfg.positive_ref, cfg.window, cfg.exclusions),
        HitQuery.near(phrase.word1, phrase.word2, cfg.negative_ref, cfg.window, cfg.exclusions),
    )


def estimate_so(phrase: _HasWords, backend: HitBackend, cfg: SoConfig = SoConfig()) -> SoEstimate:
    """Estimate a phrase's orientation from four hit counts.

    Returns a skipped estimate when both proximity counts fall below
    ``cfg.min_hits``; the skip test uses unsmoothed counts.
    """
    near_pos_q, near_neg_q = phrase_queries(phrase, cfg)
    pos_q, neg_q = reference_queries(cfg)
    counts = RawCounts(backend.hits(near_pos_q), backend.hits(near_neg_q),
                       backend.hits(pos_q), backend.hits(neg_q))
    if counts.positive_total == 0 and counts.negative_total == 0:
        raise DegenerateReference(
            f"neither {cfg.positive_ref!r} nor {cfg.negative_ref!r} occurs in the reference corpus"
        )
    if counts.near_positive < cfg.min_hits and counts.near_negative < cfg.min_hits:
        return SoEstimate(None, counts)
    return SoEstimate(log_odds(*counts, cfg.epsilon, cfg.log_base), counts)
