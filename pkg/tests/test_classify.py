import json
import math
import random

import pytest
from hypothesis import given, strategies as st

from sopmi.classify import (
    ClassificationResult,
    Label,
    Pipeline,
    Review,
    classify_review,
    dumps_result,
    label_for,
    load_reviews,
    make_tagger,
    result_from_json,
)
from sopmi.errors import MalformedReview
from sopmi.orientation import RawCounts, SoConfig, SoEstimate
from sopmi.phrases import extract_phrases
from sopmi.tagging import parse_pretagged

from support import (
    EXCLUDED,
    NOT_RECOMMENDED_AVERAGE,
    NOT_RECOMMENDED_ROWS,
    RECOMMENDED_AVERAGE,
    RECOMMENDED_ROWS,
    bank_fixture_backend,
    pretagged_review,
)

COUNTS = RawCounts(0, 0, 0, 0)


def fixed_estimator(values):
    """Hand back preset estimates in extraction order."""
    it = iter(values)
    return lambda phrase: SoEstimate(next(it), COUNTS)


def tagged_review(tagged, review_id="r"):
    return Review(review_id, tagged=tagged)


PRETAGGED = make_tagger("pretagged")


class TestClassifyReview:
    @pytest.mark.parametrize("rows, average, label", [
        (RECOMMENDED_ROWS, RECOMMENDED_AVERAGE, Label.RECOMMENDED),
        (NOT_RECOMMENDED_ROWS, NOT_RECOMMENDED_AVERAGE, Label.NOT_RECOMMENDED),
    ])
    def test_worked_examples(self, rows, average, label):
        result = classify_review(tagged_review(pretagged_review(rows)), PRETAGGED, extract_phrases,
                                 fixed_estimator([so for _, _, so in rows]))
        assert result.average_so == pytest.approx(average, abs=1e-3)
        assert result.label is label
        assert [p.text for p, _ in result.phrases] == [r[0] for r in rows]

    def test_all_skipped_is_undetermined(self):
        result = classify_review(tagged_review("good/JJ movie/NN bad/JJ plot/NN"), PRETAGGED,
                                 extract_phrases, fixed_estimator([None, None]))
        assert result.label is Label.UNDETERMINED
        assert result.average_so is None
        assert (result.used_count, result.skipped_count) == (0, 2)

    def test_no_phrases_is_undetermined(self):
        result = classify_review(tagged_review("the/DT end/NN"), PRETAGGED, extract_phrases, fixed_estimator([]))
        assert result.label is Label.UNDETERMINED and result.phrases == ()

    def test_zero_average_is_not_recommended(self):
        result = classify_review(tagged_review("good/JJ movie/NN"), PRETAGGED, extract_phrases,
                                 fixed_estimator([0.0]))
        assert result.label is Label.NOT_RECOMMENDED

    def test_skipped_phrases_excluded_from_mean(self):
        result = classify_review(tagged_review("a/JJ b/NN ./. c/JJ d/NN ./. e/JJ f/NN"), PRETAGGED,
                                 extract_phrases, fixed_estimator([1.0, None, -0.5]))
        assert result.average_so == 0.25
        assert (result.used_count, result.skipped_count) == (2, 1)

    @given(st.lists(st.one_of(st.none(), st.floats(-20, 20)), min_size=1, max_size=30),
           st.randoms(use_true_random=False))
    def test_mean_label_and_counts(self, values, rng):
        tagged = " ./. ".join(f"w{i}/JJ n{i}/NN" for i in range(len(values)))
        result = classify_review(tagged_review(tagged), PRETAGGED, extract_phrases, fixed_estimator(values))
        used = [v for v in values if v is not None]
        assert result.used_count + result.skipped_count == len(values)
        if used:
            assert result.average_so == sum(used) / len(used)
        assert result.label is label_for(result.average_so)
        shuffled = list(values)
        rng.shuffle(shuffled)
        again = classify_review(tagged_review(tagged), PRETAGGED, extract_phrases, fixed_estimator(shuffled))
        assert again.label is result.label or (
            result.average_so is not None and math.isclose(result.average_so, 0, abs_tol=1e-9))
        scaled = classify_review(tagged_review(tagged), PRETAGGED, extract_phrases,
                                 fixed_estimator([None if v is None else v / math.log(2) for v in values]))
        assert scaled.label is result.label or (
            result.average_so is not None and math.isclose(result.average_so, 0, abs_tol=1e-9))


class TestPipeline:
    def test_fixture_replay(self):
        pipeline = Pipeline(bank_fixture_backend(), SoConfig(exclusions={EXCLUDED}))
        results = pipeline.classify_all([tagged_review(pretagged_review(RECOMMENDED_ROWS), "a"),
                                         tagged_review(pretagged_review(NOT_RECOMMENDED_ROWS), "b")])
        assert [r.label for r in results] == [Label.RECOMMENDED, Label.NOT_RECOMMENDED]
        assert results[0].average_so == pytest.approx(RECOMMENDED_AVERAGE, abs=1e-3)
        assert results[1].average_so == pytest.approx(NOT_RECOMMENDED_AVERAGE, abs=1e-3)

    def test_baseline_text(self):
        pipeline = Pipeline(bank_fixture_backend(), SoConfig(exclusions={EXCLUDED}))
        result = pipeline.classify(Review("t", text="A great online experience, with low fees."))
        assert [p.text for p, _ in result.phrases] == ["online experience", "low fees"]
        assert result.label is Label.RECOMMENDED

    def test_parallel_order_and_determinism(self):
        rng = random.Random(1)
        rows = RECOMMENDED_ROWS + NOT_RECOMMENDED_ROWS
        reviews = [tagged_review(pretagged_review(rng.sample(rows, rng.randint(0, 6))), f"r{i}")
                   for i in range(60)]
        pipeline = Pipeline(bank_fixture_backend(), SoConfig(exclusions={EXCLUDED}))
        serial = pipeline.classify_all(reviews)
        parallel = pipeline.classify_all(reviews, workers=8)
        assert [r.review_id for r in parallel] == [r.review_id for r in reviews]
        assert [dumps_result(r) for r in serial] == [dumps_result(r) for r in parallel]


class TestTaggerModes:
    def test_auto_prefers_tagged(self):
        review = Review("r", text="ignored words", tagged="nice/JJ room/NN")
        assert [t.surface for t in make_tagger()(review)] == ["nice", "room"]
        assert [t.surface for t in make_tagger("baseline")(review)] == ["ignored", "words"]

    def test_pretagged_requires_tagged(self):
        with pytest.raises(ValueError):
            make_tagger("pretagged")(Review("r", text="x"))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            make_tagger("brill")


class TestReviewIo:
    def test_empty_file(self, tmp_path):
        path = tmp_path / "r.jsonl"
        path.write_text("", encoding="utf-8")
        assert load_reviews(path) == []

    def test_one_line(self, tmp_path):
        path = tmp_path / "r.jsonl"
        path.write_text(json.dumps({"id": "1", "domain": "banks", "label": "recommended", "stars": 5,
                                    "text": "Good."}) + "\n", encoding="utf-8")
        assert load_reviews(path) == [Review("1", "banks", Label.RECOMMENDED, 5, "Good.")]

    def test_tagged_form(self, tmp_path):
        path = tmp_path / "r.jsonl"
        path.write_text(json.dumps({"id": "1", "tagged": "good/JJ"}) + "\n", encoding="utf-8")
        (review,) = load_reviews(path)
        assert review.tagged == "good/JJ" and review.author_label is Label.UNKNOWN

    @pytest.mark.parametrize("line", [
        '{"id": "2"}', '{"id": "2", "text": "x", "stars": 9}', '{"id": "2", "text": "x", "label": "meh"}',
        '{"text": "x"}', "{broken", '{"id": "2", "text": 5}',
    ])
    def test_malformed_reports_line(self, tmp_path, line):
        path = tmp_path / "r.jsonl"
        path.write_text('{"id": "1", "text": "fine"}\n' + line + "\n", encoding="utf-8")
        with pytest.raises(MalformedReview) as err:
            load_reviews(path)
        assert err.value.line_no == 2

    def test_review_invariants(self):
        with pytest.raises(ValueError):
            Review("x", stars=0, text="t")
        with pytest.raises(ValueError):
            Review("x")


def test_result_json_round_trip():
    pipeline = Pipeline(bank_fixture_backend(), SoConfig(exclusions={EXCLUDED}))
    result = pipeline.classify(tagged_review(pretagged_review(NOT_RECOMMENDED_ROWS)))
    line = dumps_result(result)
    back = result_from_json(json.loads(line))
    assert back == ClassificationResult(result.review_id, result.phrases, result.average_so, result.label,
                                        result.domain)
    assert dumps_result(back) == line
    assert list(json.loads(line)) == ["id", "domain", "label", "average_so", "used", "skipped", "phrases"]
