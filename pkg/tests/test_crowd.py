import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankfuse.crowd import (LITERAL_FEATURES, LabelMatrix, PipelineConfig, WorkerQuality, annotator_features,
                            evaluate_accuracy, feature_rankings, majority_vote, planted_crowd, rank_to_weight,
                            run_pipeline, weighted_label_aggregate)
from rankfuse.errors import ConfigError, MissingPrediction, MissingWeight, UnknownItem
from rankfuse.rankings import Ranking


def lm(*records):
    return LabelMatrix.from_records(records)


@pytest.mark.parametrize("labels, tie, expected", [
    ([1, 1, 0], 1, 1),
    ([1, 0], 1, 1),
    ([1, 0], 0, 0),
    ([0, 0, 0, 0], 1, 0),
])
def test_majority_vote(labels, tie, expected):
    m = lm(*[(f"w{k}", "x", lab) for k, lab in enumerate(labels)])
    assert majority_vote(m, tie) == {"x": expected}


def test_label_matrix_validation():
    with pytest.raises(ValueError):
        lm(("a", 1, 1), ("a", 1, 0))
    with pytest.raises(ValueError):
        lm(("a", 1, 2))


def test_features_perfect_worker():
    ref = {1: 1, 2: 0, 3: 1}
    q = annotator_features(lm(("a", 1, 1), ("a", 2, 0), ("a", 3, 1)), ref)["a"]
    assert (q.accuracy, q.sensitivity, q.specificity, q.precision) == (1, 1, 1, 1)


def test_features_always_positive_worker():
    ref = {1: 1, 2: 1, 3: 0, 4: 0}
    q = annotator_features(lm(*[("a", i, 1) for i in ref]), ref)["a"]
    assert (q.sensitivity, q.specificity, q.accuracy, q.precision) == (1, 0, 0.5, 0.5)


def test_features_confusion_arithmetic():
    q = WorkerQuality(tp=3, tn=2, fp=2, fn=1)
    assert q.sensitivity == 0.75
    assert q.specificity == 0.5
    assert q.accuracy == 0.625
    assert q.precision == 0.6
    assert q.accuracy == (q.tp + q.tn) / (q.tp + q.tn + q.fp + q.fn)


def test_undefined_features():
    q = WorkerQuality(tp=0, tn=3, fp=0, fn=0)
    assert q.sensitivity is None and q.precision is None and q.specificity == 1.0


def test_unknown_item():
    with pytest.raises(UnknownItem):
        annotator_features(lm(("a", 1, 1)), {2: 1})


def test_feature_rankings():
    feats = {
        1: WorkerQuality(9, 0, 0, 1),   # accuracy 0.9
        2: WorkerQuality(7, 0, 0, 3),   # 0.7
        3: WorkerQuality(8, 0, 0, 2),   # 0.8
    }
    wr = feature_rankings(feats, ["accuracy"])
    assert wr.worker_order(wr.rankings[0].ranking) == [1, 3, 2]
    same = {w: WorkerQuality(1, 1, 1, 1) for w in ("c", "a", "b")}
    wr = feature_rankings(same)
    assert len(wr.rankings) == 4
    assert all(wr.worker_order(x.ranking) == ["a", "b", "c"] for x in wr.rankings)
    assert all(x.weight == 1.0 for x in wr.rankings)


def test_feature_rankings_undefined_value():
    feats = {"a": WorkerQuality(0, 5, 0, 0), "b": WorkerQuality(1, 1, 1, 1)}
    low = feature_rankings(feats, ["sensitivity"], undefined_value=0.0)
    high = feature_rankings(feats, ["sensitivity"], undefined_value=1.0)
    assert low.worker_order(low.rankings[0].ranking) == ["b", "a"]
    assert high.worker_order(high.rankings[0].ranking) == ["a", "b"]


@pytest.mark.parametrize("m, expected", [
    (4, [1.0, 0.75, 0.5, 0.25]),
    (1, [1.0]),
    (2, [1.0, 0.5]),
])
def test_rank_to_weight(m, expected):
    r = Ranking(tuple(range(m, 0, -1)))
    w = rank_to_weight(r)
    assert [w[o] for o in r.order] == expected


def test_weighted_aggregate_examples():
    labels = lm(("w1", "x", 1), ("w2", "x", 0), ("w3", "x", 0))
    assert weighted_label_aggregate(labels, {"w1": 1.0, "w2": 0.3, "w3": 0.3}) == {"x": 1}
    tie = lm(("w1", "x", 1), ("w2", "x", 0))
    assert weighted_label_aggregate(tie, {"w1": 0.5, "w2": 0.5}, tie_label=1) == {"x": 1}
    with pytest.raises(MissingWeight):
        weighted_label_aggregate(labels, {"w1": 1.0})


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 15), st.integers(0, 2**32 - 1), st.sampled_from([0, 1]))
def test_uniform_weights_reduce_to_majority(nw, ni, seed, tie):
    rng = np.random.default_rng(seed)
    dense = rng.integers(-1, 2, size=(nw, ni))
    dense[rng.integers(nw, size=ni), np.arange(ni)] = rng.integers(0, 2, size=ni)  # every item labelled
    labels = LabelMatrix.from_dense(dense)
    weights = {w: 1.0 for w in labels.workers}
    assert weighted_label_aggregate(labels, weights, tie) == majority_vote(labels, tie)


def test_evaluate_accuracy():
    gold = {i: i % 2 for i in range(10)}
    assert evaluate_accuracy(gold, gold) == 1.0
    assert evaluate_accuracy({i: 1 - v for i, v in gold.items()}, gold) == 0.0
    nine = dict(gold)
    nine[0] = 1
    assert evaluate_accuracy(nine, gold) == 0.9
    with pytest.raises(MissingPrediction):
        evaluate_accuracy({}, gold)


def test_pipeline_consistent_crowd():
    truth = {i: i % 2 for i in range(1, 21)}
    labels = lm(*[(w, i, t) for w in range(1, 6) for i, t in truth.items()])
    rep = run_pipeline(labels, truth)
    assert rep.majority_accuracy == 1.0
    assert rep.accuracy == 1.0
    assert sorted(rep.consensus_workers) == [1, 2, 3, 4, 5]


def test_pipeline_config():
    assert PipelineConfig(features="literal").features == LITERAL_FEATURES
    assert PipelineConfig(features="recall,accuracy").features == ("sensitivity", "accuracy")
    with pytest.raises(ConfigError):
        PipelineConfig(features="nonsense")
    with pytest.raises(ConfigError):
        PipelineConfig(tie_label=2)


def test_pipeline_reduction_and_report_contents():
    labels, gold, _ = planted_crowd(n_workers=9, n_items=60, seed=4, ability_range=(0.5, 0.7))
    rep = run_pipeline(labels, gold, PipelineConfig(uniform_weights=True))
    assert rep.predicted == rep.majority
    assert rep.accuracy == rep.majority_accuracy
    assert len(rep.worker_rankings.rankings) == 4
    assert set(rep.worker_weights) == set(labels.workers)
    weighted = run_pipeline(labels, gold)
    w = [weighted.worker_weights[x] for x in weighted.consensus_workers]
    assert all(a > b for a, b in zip(w, w[1:]))
