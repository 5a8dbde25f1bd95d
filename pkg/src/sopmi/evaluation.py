"""Scoring classifications against author labels and star ratings."""

from __future__ import annotations

import statistics
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

from sopmi.classify import ClassificationResult, Label, Review
from sopmi.errors import DataError, EmptyEvaluation, InsufficientData, ZeroVariance

ALL = "All"


@dataclass(frozen=True)
class Outcome:
    """One review's prediction (after fallback) next to its author label."""

    review_id: str
    domain: str
    predicted: Label
    actual: Label
    average_so: Optional[float] = None
    stars: Optional[int] = None
    phrase_count: int = 0

    @property
    def determined(self) -> bool:
        return self.average_so is not None


def outcomes(results: Iterable[ClassificationResult], reviews: Iterable[Review],
             fallback: Label = Label.RECOMMENDED) -> list[Outcome]:
    """Join results to reviews by id and map Undetermined to ``fallback``."""
    if fallback not in (Label.RECOMMENDED, Label.NOT_RECOMMENDED):
        raise ValueError(f"fallback must be a concrete label, got {fallback}")
    by_id = {r.review_id: r for r in reviews}
    out = []
    for res in results:
        review = by_id.get(res.review_id)
        if review is None:
            raise DataError(f"result {res.review_id!r} has no matching review")
        predicted = fallback if res.label is Label.UNDETERMINED else res.label
        out.append(Outcome(res.review_id, review.domain, predicted, review.author_label,
                           res.average_so, review.stars, res.phrase_count))
    return out


def _labeled(items: Sequence[Outcome]) -> list[Outcome]:
    return [o for o in items if o.actual in (Label.RECOMMENDED, Label.NOT_RECOMMENDED)]


def accuracy(items: Sequence[Outcome]) -> float:
    """Percentage of items whose prediction equals the author label."""
    if not items:
        raise EmptyEvaluation("accuracy of an empty result set")
    return 100.0 * sum(o.predicted is o.actual for o in items) / len(items)


@dataclass(frozen=True)
class Confusion:
    """Percentages of (predicted sign) x (author label); rows and columns sum."""

    pos_up: float
    pos_down: float
    neg_up: float
    neg_down: float

    @property
    def pos_sum(self) -> float:
        return self.pos_up + self.pos_down

    @property
    def neg_sum(self) -> float:
        return self.neg_up + self.neg_down

    @property
    def up_sum(self) -> float:
        return self.pos_up + self.neg_up

    @property
    def down_sum(self) -> float:
        return self.pos_down + self.neg_down

    @property
    def total(self) -> float:
        return self.pos_sum + self.neg_sum

    def as_dict(self) -> dict:
        d = asdict(self)
        d.update(pos_sum=self.pos_sum, neg_sum=self.neg_sum, up_sum=self.up_sum,
                 down_sum=self.down_sum, total=self.total)
        return d


def confusion_matrix(items: Sequence[Outcome]) -> Confusion:
    if not items:
        raise EmptyEvaluation("confusion matrix of an empty result set")
    cells = {(True, True): 0, (True, False): 0, (False, True): 0, (False, False): 0}
    for o in items:
        cells[(o.predicted is Label.RECOMMENDED, o.actual is Label.RECOMMENDED)] += 1
    n = len(items)
    pct = {k: 100.0 * v / n for k, v in cells.items()}
    return Confusion(pct[True, True], pct[True, False], pct[False, True], pct[False, False])


def _check_pairs(xs: Sequence[float], ys: Sequence[float]) -> None:
    if len(xs) != len(ys):
        raise InsufficientData(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise InsufficientData("correlation needs at least two pairs")
    if len(set(xs)) < 2 or len(set(ys)) < 2:
        raise ZeroVariance("correlation is undefined for a constant sequence")


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient."""
    _check_pairs(xs, ys)
    return statistics.correlation(list(map(float, xs)), list(map(float, ys)))


def _ranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        for k in range(i, j + 1):
            ranks[order[k]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation (average ranks for ties)."""
    _check_pairs(xs, ys)
    return statistics.correlation(_ranks(xs), _ranks(ys))


@dataclass(frozen=True)
class DomainSummary:
    domain: str
    reviews: int
    phrases: int
    avg_phrases: float
    empty: bool = False


def summarize_corpus(reviews: Sequence[Review], results: Sequence[ClassificationResult],
                     domains: Iterable[str] = ()) -> list[DomainSummary]:
    """Per-domain review counts and mean extracted phrases, then an ``All`` row.

    ``domains`` names domains to report even when they have no reviews.
    """
    phrase_counts = {r.review_id: r.phrase_count for r in results}
    order = list(dict.fromkeys([*domains, *(r.domain for r in reviews)]))
    rows = []
    for domain in order + [ALL]:
        members = [r for r in reviews if domain == ALL or r.domain == domain]
        total = sum(phrase_counts.get(r.review_id, 0) for r in members)
        if members:
            rows.append(DomainSummary(domain, len(members), total, total / len(members)))
        else:
            rows.append(DomainSummary(domain, 0, 0, 0.0, empty=True))
    return rows


@dataclass(frozen=True)
class DomainReport:
    domain: str
    total: int
    determined: int
    undetermined: int
    labeled: int
    avg_phrases: float
    accuracy: Optional[float]
    accuracy_determined: Optional[float]
    correlation: Optional[float]
    spearman: Optional[float]
    rated: int
    confusion: Optional[Confusion]

    def as_dict(self) -> dict:
        d = asdict(self)
        d["confusion"] = self.confusion.as_dict() if self.confusion else None
        return d


@dataclass(frozen=True)
class EvalReport:
    fallback: Label
    domains: tuple[DomainReport, ...]

    @property
    def overall(self) -> DomainReport:
        return self.domains[-1]

    def as_dict(self) -> dict:
        return {"fallback": self.fallback.value, "domains": [d.as_dict() for d in self.domains]}


def _maybe(fn, *args):
    try:
        return fn(*args)
    except (EmptyEvaluation, InsufficientData, ZeroVariance):
        return None


def _domain_report(domain: str, items: Sequence[Outcome]) -> DomainReport:
    labeled = _labeled(items)
    determined = [o for o in items if o.determined]
    rated = [o for o in determined if o.stars is not None]
    xs = [o.average_so for o in rated]
    ys = [o.stars for o in rated]
    return DomainReport(
        domain=domain,
        total=len(items),
        determined=len(determined),
        undetermined=len(items) - len(determined),
        labeled=len(labeled),
        avg_phrases=sum(o.phrase_count for o in items) / len(items) if items else 0.0,
        accuracy=_maybe(accuracy, labeled),
        accuracy_determined=_maybe(accuracy, [o for o in labeled if o.determined]),
        correlation=_maybe(pearson, xs, ys),
        spearman=_maybe(spearman, xs, ys),
        rated=len(rated),
        confusion=_maybe(confusion_matrix, labeled),
    )


def evaluate(results: Sequence[ClassificationResult], reviews: Sequence[Review],
             fallback: Label = Label.RECOMMENDED) -> EvalReport:
    items = outcomes(results, reviews, fallback)
    domains = list(dict.fromkeys(o.domain for o in items))
    reports = [_domain_report(d, [o for o in items if o.domain == d]) for d in domains]
    reports.append(_domain_report(ALL, items))
    return EvalReport(fallback, tuple(reports))


def _fmt(value: Optional[float], spec: str, suffix: str = "") -> str:
    return "n/a" if value is None else format(value, spec) + suffix


def render_text(report: EvalReport) -> str:
    """Aligned plain-text tables: corpus summary, accuracy/correlation, confusion."""
    width = max([len("Domain")] + [len(d.domain or "-") for d in report.domains])
    lines = ["Corpus summary", f"{'Domain':<{width}}  {'Reviews':>7}  {'Phrases/review':>14}"]
    for d in report.domains:
        lines.append(f"{d.domain or '-':<{width}}  {d.total:>7}  {d.avg_phrases:>14.2f}")
    lines += ["", f"Accuracy and correlation (undetermined -> {report.fallback.value})",
              f"{'Domain':<{width}}  {'Accuracy':>9}  {'Acc(det)':>9}  {'Pearson':>8}  "
              f"{'Spearman':>8}  {'Undet':>5}"]
    for d in report.domains:
        lines.append(
            f"{d.domain or '-':<{width}}  {_fmt(d.accuracy, '.2f', ' %'):>9}  "
            f"{_fmt(d.accuracy_determined, '.2f', ' %'):>9}  {_fmt(d.correlation, '.4f'):>8}  "
            f"{_fmt(d.spearman, '.4f'):>8}  {d.undetermined:>5}"
        )
    for d in report.domains:
        c = d.confusion
        if c is None:
            continue
        lines += [
            "",
            f"Confusion matrix: {d.domain or '-'}",
            f"{'Average SO':<10}  {'Thumbs Up':>9}  {'Thumbs Down':>11}  {'Sum':>8}",
            f"{'Positive':<10}  {c.pos_up:>7.2f} %  {c.pos_down:>9.2f} %  {c.pos_sum:>6.2f} %",
            f"{'Negative':<10}  {c.neg_up:>7.2f} %  {c.neg_down:>9.2f} %  {c.neg_sum:>6.2f} %",
            f"{'Sum':<10}  {c.up_sum:>7.2f} %  {c.down_sum:>9.2f} %  {c.total:>6.2f} %",
        ]
    return "\n".join(lines) + "\n"

