"""Shared test data: the bank-review worked examples and a planted-sentiment corpus."""

import json
import math
import random

from sopmi.hits import CorpusDocument, FixtureBackend, HitQuery

EPS = 0.01
EXCLUDED = "epinions"

# (phrase, tags, SO) rows of the two worked bank-review examples
RECOMMENDED_ROWS = [
    ("online experience", "JJ NN", 2.253),
    ("low fees", "JJ NNS", 0.333),
    ("local branch", "JJ NN", 0.421),
    ("small part", "JJ NN", 0.053),
    ("online service", "JJ NN", 2.780),
    ("printable version", "JJ NN", -0.705),
    ("direct deposit", "JJ NN", 1.288),
    ("well other", "RB JJ", 0.237),
    ("inconveniently located", "RB VBN", -1.541),
    ("other bank", "JJ NN", -0.850),
    ("true service", "JJ NN", -0.732),
]
RECOMMENDED_AVERAGE = 0.322

NOT_RECOMMENDED_ROWS = [
    ("little difference", "JJ NN", -1.615),
    ("clever tricks", "JJ NNS", -0.040),
    ("programs such", "NNS JJ", 0.117),
    ("possible moment", "JJ NN", -0.668),
    ("unethical practices", "JJ NNS", -8.484),
    ("low funds", "JJ NNS", -6.843),
    ("old man", "JJ NN", -2.566),
    ("other problems", "JJ NNS", -2.748),
    ("probably wondering", "RB VBG", -1.830),
    ("virtual monopoly", "JJ NN", -2.050),
    ("other bank", "JJ NN", -0.850),
    ("extra day", "JJ NN", -0.286),
    ("direct deposits", "JJ NNS", 5.771),
    ("online web", "JJ NN", 1.936),
    ("cool thing", "JJ NN", 0.395),
    ("very handy", "RB JJ", 1.349),
    ("lesser evil", "RBR JJ", -2.288),
]
NOT_RECOMMENDED_AVERAGE = -1.218

# pattern row each tag pair should select
EXPECTED_ROW = {
    "JJ NN": 1, "JJ NNS": 1, "RB JJ": 2, "RBR JJ": 2, "NNS JJ": 4, "RB VBN": 5, "RB VBG": 5,
}

REFERENCE_TOTAL = 1_000_000
BASE_NEAR = 10_000


def engineer_counts(target, base=BASE_NEAR, eps=EPS):
    """Integer (near_pos, near_neg) whose smoothed log-odds (equal totals) is ``target``."""
    if target >= 0:
        near_neg = base
        near_pos = round((near_neg + eps) * math.exp(target) - eps)
    else:
        near_pos = base
        near_neg = round((near_pos + eps) * math.exp(-target) - eps)
    return near_pos, near_neg


def table_fixture(rows, exclusions=(EXCLUDED,), window=10):
    counts = {
        HitQuery.term("excellent", exclusions).canonical(): REFERENCE_TOTAL,
        HitQuery.term("poor", exclusions).canonical(): REFERENCE_TOTAL,
    }
    for phrase, _, so in rows:
        w1, w2 = phrase.split()
        np_, nn = engineer_counts(so)
        counts[HitQuery.near(w1, w2, "excellent", window, exclusions).canonical()] = np_
        counts[HitQuery.near(w1, w2, "poor", window, exclusions).canonical()] = nn
    return counts


def bank_fixture_backend():
    return FixtureBackend(table_fixture(RECOMMENDED_ROWS + NOT_RECOMMENDED_ROWS))


def pretagged_review(rows):
    """Each phrase as its own clause, so no extra pair can match."""
    parts = []
    for phrase, tags, _ in rows:
        parts.extend(f"{w}/{t}" for w, t in zip(phrase.split(), tags.split()))
        parts.append("./.")
    return " ".join(parts)


# -- planted-sentiment corpus ---------------------------------------------

POS_ADJ = ["great", "friendly", "clean", "helpful", "delicious", "beautiful", "comfortable", "wonderful"]
NEG_ADJ = ["rude", "dirty", "terrible", "awful", "horrible", "slow", "ugly", "noisy"]
NOUNS = ["staff", "room", "food", "service", "view", "beach", "pool", "restaurant"]
FILLER = [f"filler{i}" for i in range(60)]

# share of positive phrases in a review with this many stars
POSITIVE_SHARE = {1: 0.1, 2: 0.25, 3: 0.625, 4: 0.75, 5: 0.9}
PHRASES_PER_REVIEW = 8


def _doc_with(rng, phrase, ref, window):
    """Filler text holding ``phrase`` with ``ref`` within ``window`` words."""
    words = [rng.choice(FILLER) for _ in range(rng.randint(20, 40))]
    at = rng.randrange(0, len(words) - 2)
    words[at:at + 2] = phrase
    if ref is not None:
        offset = rng.randint(1, window)
        target = at + 1 + offset if rng.random() < 0.5 else at - offset
        if 0 <= target < len(words) and target not in (at, at + 1):
            words[target] = ref
        elif target >= len(words):
            words.append(ref)
        else:
            words.insert(0, ref)
    return words


def planted_corpus(seed=7, docs_per_phrase=20, noise=0.2, window=10):
    """Reference corpus where positive phrases sit near "excellent" and
    negative ones near "poor", with ``noise`` share crossing over."""
    rng = random.Random(seed)
    docs = []
    for adjs, ref, other in ((POS_ADJ, "excellent", "poor"), (NEG_ADJ, "poor", "excellent")):
        for adj in adjs:
            for noun in NOUNS:
                for _ in range(docs_per_phrase):
                    chosen = other if rng.random() < noise else ref
                    docs.append(_doc_with(rng, [adj, noun], chosen, window))
    for ref in ("excellent", "poor"):
        for _ in range(200):
            words = [rng.choice(FILLER) for _ in range(30)]
            words[rng.randrange(30)] = ref
            docs.append(words)
    return [CorpusDocument(f"web{i}", "web", tuple(w)) for i, w in enumerate(docs)]


def planted_reviews(n=100, seed=11):
    """Labelled reviews with planted star ratings; >= 3 stars means recommended."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        stars = 1 + i % 5
        n_pos = round(POSITIVE_SHARE[stars] * PHRASES_PER_REVIEW)
        adjs = [rng.choice(POS_ADJ) for _ in range(n_pos)]
        adjs += [rng.choice(NEG_ADJ) for _ in range(PHRASES_PER_REVIEW - n_pos)]
        rng.shuffle(adjs)
        sentences = [f"The {adj} {rng.choice(NOUNS)} was here." for adj in adjs]
        out.append({
            "id": f"r{i:03d}",
            "domain": "hotels" if i % 2 else "resorts",
            "label": "recommended" if stars >= 3 else "not_recommended",
            "stars": stars,
            "text": " ".join(sentences),
        })
    return out


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
