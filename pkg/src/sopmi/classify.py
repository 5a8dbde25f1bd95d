"""Review classification by the mean orientation of extracted phrases."""

from __future__ import annotations

import enum
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Sequence

from sopmi.errors import MalformedReview
from sopmi.hits import HitBackend
from sopmi.orientation import RawCounts, SoConfig, SoEstimate, estimate_so
from sopmi.phrases import CandidatePhrase, extract_phrases
from sopmi.tagging import PosTag, TaggedToken, parse_pretagged, tag_baseline, tokenize


class Label(str, enum.Enum):
    RECOMMENDED = "recommended"
    NOT_RECOMMENDED = "not_recommended"
    UNDETERMINED = "undetermined"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Review:
    review_id: str
    domain: str = ""
    author_label: Label = Label.UNKNOWN
    stars: Optional[int] = None
    text: Optional[str] = None
    tagged: Optional[str] = None

    def __post_init__(self):
        if self.stars is not None and not 1 <= self.stars <= 5:
            raise ValueError(f"stars must be in 1..5, got {self.stars}")
        if self.text is None and self.tagged is None:
            raise ValueError("a review needs text or tagged text")


@dataclass(frozen=True)
class ClassificationResult:
    review_id: str
    phrases: tuple[tuple[CandidatePhrase, SoEstimate], ...]
    average_so: Optional[float]
    label: Label
    domain: str = ""

    @property
    def used_count(self) -> int:
        return sum(1 for _, est in self.phrases if not est.skipped)

    @property
    def skipped_count(self) -> int:
        return sum(1 for _, est in self.phrases if est.skipped)

    @property
    def phrase_count(self) -> int:
        return len(self.phrases)


def label_for(average_so: Optional[float]) -> Label:
    if average_so is None:
        return Label.UNDETERMINED
    return Label.RECOMMENDED if average_so > 0 else Label.NOT_RECOMMENDED


Tagger = Callable[[Review], Sequence[TaggedToken]]
Extractor = Callable[[Sequence[TaggedToken]], Sequence[CandidatePhrase]]
SoEstimator = Callable[[CandidatePhrase], SoEstimate]


def make_tagger(mode: str = "auto", lexicon: Optional[Mapping[str, PosTag]] = None) -> Tagger:
    """``baseline`` tags raw text; ``pretagged`` requires a tagged field;
    ``auto`` prefers the tagged field when a review has one."""
    if mode not in ("auto", "baseline", "pretagged"):
        raise ValueError(f"unknown tagger mode {mode!r}")

    def tag(review: Review) -> Sequence[TaggedToken]:
        if review.tagged is not None and mode != "baseline":
            return parse_pretagged(review.tagged)
        if mode == "pretagged":
            raise ValueError(f"review {review.review_id!r} has no pre-tagged text")
        if review.text is None:
            raise ValueError(f"review {review.review_id!r} has no raw text")
        return tag_baseline(tokenize(review.text), lexicon)

    return tag


def classify_review(review: Review, tagger: Tagger, extractor: Extractor,
                    so_estimator: SoEstimator) -> ClassificationResult:
    phrases = tuple((p, so_estimator(p)) for p in extractor(tagger(review)))
    values = [est.value for _, est in phrases if est.value is not None]
    average = sum(values) / len(values) if values else None
    return ClassificationResult(review.review_id, phrases, average, label_for(average), review.domain)


@dataclass
class Pipeline:
    """Tagger, extractor and backend wired together for batch use."""

    backend: HitBackend
    config: SoConfig = field(default_factory=SoConfig)
    tagger: Tagger = field(default_factory=make_tagger)
    extractor: Extractor = extract_phrases

    def estimate(self, phrase: CandidatePhrase) -> SoEstimate:
        return estimate_so(phrase, self.backend, self.config)

    def classify(self, review: Review) -> ClassificationResult:
        return classify_review(review, self.tagger, self.extractor, self.estimate)

    def classify_all(self, reviews: Iterable[Review], workers: int = 1) -> list[ClassificationResult]:
        """Results come back in input order whatever the pool width."""
        reviews = list(reviews)
        if workers <= 1:
            return [self.classify(r) for r in reviews]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(self.classify, reviews))


# -- JSON Lines I/O ------------------------------------------------------

_AUTHOR_LABELS = {
    "recommended": Label.RECOMMENDED,
    "not_recommended": Label.NOT_RECOMMENDED,
}


def review_from_json(row: object, line_no: int = 0) -> Review:
    if not isinstance(row, dict):
        raise MalformedReview(line_no, "expected a JSON object")
    review_id = row.get("id")
    if not isinstance(review_id, str) or not review_id:
        raise MalformedReview(line_no, "missing or non-string 'id'")
    text, tagged = row.get("text"), row.get("tagged")
    if text is None and tagged is None:
        raise MalformedReview(line_no, "needs 'text' or 'tagged'")
    for key, value in (("text", text), ("tagged", tagged)):
        if value is not None and not isinstance(value, str):
            raise MalformedReview(line_no, f"'{key}' must be a string")
    raw_label = row.get("label")
    if raw_label is None:
        label = Label.UNKNOWN
    elif raw_label in _AUTHOR_LABELS:
        label = _AUTHOR_LABELS[raw_label]
    else:
        raise MalformedReview(line_no, f"unknown label {raw_label!r}")
    stars = row.get("stars")
    if stars is not None and (isinstance(stars, bool) or not isinstance(stars, int) or not 1 <= stars <= 5):
        raise MalformedReview(line_no, f"stars must be an integer 1..5, got {stars!r}")
    domain = row.get("domain", "")
    if not isinstance(domain, str):
        raise MalformedReview(line_no, "'domain' must be a string")
    return Review(review_id, domain, label, stars, text, tagged)


def load_reviews(path: str | Path) -> list[Review]:
    """One review per non-blank line; errors carry the 1-based line number."""
    reviews = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedReview(line_no, f"invalid JSON ({exc.msg})") from None
            reviews.append(review_from_json(row, line_no))
    return reviews


def result_to_json(result: ClassificationResult) -> dict:
    return {
        "id": result.review_id,
        "domain": result.domain,
        "label": result.label.value,
        "average_so": result.average_so,
        "used": result.used_count,
        "skipped": result.skipped_count,
        "phrases": [
            {
                "phrase": p.text,
                "tags": p.tags,
                "pattern": p.pattern,
                "position": p.start_position,
                "so": est.value,
                "counts": list(est.counts),
            }
            for p, est in result.phrases
        ],
    }


def result_from_json(row: Mapping) -> ClassificationResult:
    phrases = []
    for item in row["phrases"]:
        w1, w2 = item["phrase"].split(" ")
        t1, t2 = item["tags"].split(" ")
        phrase = CandidatePhrase(w1, w2, PosTag.parse(t1), PosTag.parse(t2), item["pattern"], item["position"])
        phrases.append((phrase, SoEstimate(item["so"], RawCounts(*item["counts"]))))
    return ClassificationResult(row["id"], tuple(phrases), row["average_so"], Label(row["label"]),
                                row.get("domain", ""))


def dumps_result(result: ClassificationResult) -> str:
    return json.dumps(result_to_json(result), ensure_ascii=False, separators=(",", ":"))
