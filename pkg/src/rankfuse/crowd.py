"""Annotator-quality weighted label aggregation for binary crowd labels.

Pipeline
--------
1. majority vote gives reference labels,
2. each worker's accuracy / specificity / sensitivity / precision is measured
   against that reference,
3. every feature ranks the workers, and the feature rankings are merged into
   one consensus ranking with :func:`rankfuse.merge.aggregate`,
4. consensus position ``k`` of ``W`` workers becomes vote weight
   ``(W - k + 1) / W``,
5. a weighted vote predicts each item, scored against gold labels.

Worker and item ids may be ints or strings; ordering ties by "ascending id"
compares ints numerically and strings lexicographically.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import ConfigError, EmptyItem, MissingPrediction, MissingWeight, UnknownItem
from .merge import AggregationResult, MergeConfig, aggregate
from .rankings import Ranking, RankingList

FEATURES = ("accuracy", "specificity", "sensitivity", "precision")
# the four features as literally listed for the RTE experiment; recall is sensitivity
LITERAL_FEATURES = ("accuracy", "specificity", "sensitivity", "sensitivity")
_FEATURE_ALIASES = {"recall": "sensitivity", "tpr": "sensitivity", "tnr": "specificity", "ppv": "precision"}

WorkerId = Hashable
ItemId = Hashable


def id_key(x):
    """Sort key ordering ints numerically, then everything else as text."""
    if isinstance(x, (int, np.integer)):
        return (0, int(x), "")
    return (1, 0, str(x))


@dataclass(frozen=True)
class LabelMatrix:
    """Sparse binary worker x item labels; one label per (worker, item)."""

    records: tuple[tuple[WorkerId, ItemId, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        recs = []
        for worker, item, label in self.records:
            label = int(label)
            if label not in (0, 1):
                raise ValueError(f"binary labels only, got {label!r} from worker {worker!r} on item {item!r}")
            if (worker, item) in seen:
                raise ValueError(f"worker {worker!r} labelled item {item!r} twice")
            seen.add((worker, item))
            recs.append((worker, item, label))
        object.__setattr__(self, "records", tuple(recs))

    @classmethod
    def from_records(cls, records: Iterable[tuple[WorkerId, ItemId, int]]) -> LabelMatrix:
        return cls(tuple(records))

    @classmethod
    def from_dense(cls, labels: np.ndarray, worker_ids=None, item_ids=None) -> LabelMatrix:
        """Build from a ``(workers, items)`` array; negative entries mean "no label"."""
        labels = np.asarray(labels)
        w_ids = list(worker_ids) if worker_ids is not None else list(range(1, labels.shape[0] + 1))
        i_ids = list(item_ids) if item_ids is not None else list(range(1, labels.shape[1] + 1))
        return cls(tuple(
            (w_ids[a], i_ids[b], int(labels[a, b]))
            for a, b in zip(*np.nonzero(labels >= 0))
        ))

    @property
    def workers(self) -> list[WorkerId]:
        return sorted({w for w, _, _ in self.records}, key=id_key)

    @property
    def items(self) -> list[ItemId]:
        return sorted({i for _, i, _ in self.records}, key=id_key)

    def by_item(self) -> dict[ItemId, list[tuple[WorkerId, int]]]:
        out: dict[ItemId, list[tuple[WorkerId, int]]] = defaultdict(list)
        for w, i, lab in self.records:
            out[i].append((w, lab))
        return dict(out)

    def __len__(self) -> int:
        return len(self.records)


def _weighted_vote(votes: Sequence[tuple[WorkerId, int]], weights: Mapping[WorkerId, float] | None,
                   tie_label: int) -> int:
    tally = {0: 0.0, 1: 0.0}
    for w, lab in votes:
        tally[lab] += 1.0 if weights is None else weights[w]
    a, b = round(tally[0], 12), round(tally[1], 12)
    if a == b:
        return tie_label
    return 0 if a > b else 1


def majority_vote(labels: LabelMatrix, tie_label: int = 1) -> dict[ItemId, int]:
    """Per-item plurality label; exact ties go to ``tie_label``."""
    out = {}
    for item, votes in labels.by_item().items():
        if not votes:
            raise EmptyItem(f"item {item!r} has no labels")
        out[item] = _weighted_vote(votes, None, tie_label)
    return out


@dataclass(frozen=True)
class WorkerQuality:
    tp: int
    tn: int
    fp: int
    fn: int

    @staticmethod
    def _ratio(num: int, den: int) -> float | None:
        return num / den if den else None

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    @property
    def accuracy(self) -> float | None:
        return self._ratio(self.tp + self.tn, self.total)

    @property
    def sensitivity(self) -> float | None:
        return self._ratio(self.tp, self.tp + self.fn)

    @property
    def specificity(self) -> float | None:
        return self._ratio(self.tn, self.tn + self.fp)

    @property
    def precision(self) -> float | None:
        return self._ratio(self.tp, self.tp + self.fp)

    def feature(self, name: str) -> float | None:
        return getattr(self, canonical_feature(name))


def canonical_feature(name: str) -> str:
    key = str(name).strip().lower()
    key = _FEATURE_ALIASES.get(key, key)
    if key not in FEATURES:
        raise ConfigError(f"unknown annotator feature {name!r}")
    return key


def annotator_features(labels: LabelMatrix, reference: Mapping[ItemId, int]) -> dict[WorkerId, WorkerQuality]:
    """Confusion counts of every worker against ``reference`` (positive class 1)."""
    counts: dict[WorkerId, list[int]] = {}
    for w, item, lab in labels.records:
        if item not in reference:
            raise UnknownItem(f"worker {w!r} labelled item {item!r}, which has no reference label")
        c = counts.setdefault(w, [0, 0, 0, 0])
        ref = reference[item]
        if lab == 1 and ref == 1:
            c[0] += 1
        elif lab == 0 and ref == 0:
            c[1] += 1
        elif lab == 1:
            c[2] += 1
        else:
            c[3] += 1
    return {w: WorkerQuality(*counts[w]) for w in sorted(counts, key=id_key)}


@dataclass(frozen=True)
class WorkerRankings:
    """Feature rankings over workers; object id ``k`` stands for ``workers[k - 1]``."""

    workers: tuple[WorkerId, ...]
    features: tuple[str, ...]
    rankings: RankingList

    def worker_order(self, r: Ranking) -> list[WorkerId]:
        return [self.workers[o - 1] for o in r.order]


def feature_rankings(features: Mapping[WorkerId, WorkerQuality], selected: Sequence[str] = FEATURES,
                     undefined_value: float = 0.0) -> WorkerRankings:
    """One ranking per selected feature, best worker first, ties by ascending worker id."""
    if not selected:
        raise ConfigError("at least one feature must be selected")
    workers = tuple(sorted(features, key=id_key))
    if not workers:
        raise ConfigError("no workers to rank")
    names = tuple(canonical_feature(f) for f in selected)
    orders = []
    for name in names:
        vals = []
        for w in workers:
            v = features[w].feature(name)
            vals.append(undefined_value if v is None else v)
        # worker index k+1 is its object id; indices already follow id order
        orders.append([k + 1 for k in sorted(range(len(workers)), key=lambda k: (-vals[k], k))])
    return WorkerRankings(workers, names, RankingList.from_orders(orders))


def rank_to_weight(consensus: Ranking) -> dict[int, float]:
    """Linear weights ``(m - k + 1) / m`` for consensus position ``k``."""
    m = consensus.m
    return {o: (m - k + 1) / m for k, o in enumerate(consensus.order, start=1)}


def weighted_label_aggregate(labels: LabelMatrix, weights: Mapping[WorkerId, float],
                             tie_label: int = 1) -> dict[ItemId, int]:
    out = {}
    for item, votes in labels.by_item().items():
        missing = [w for w, _ in votes if w not in weights]
        if missing:
            raise MissingWeight(f"no weight for worker {missing[0]!r}")
        out[item] = _weighted_vote(votes, weights, tie_label)
    return out


def evaluate_accuracy(predicted: Mapping[ItemId, int], gold: Mapping[ItemId, int]) -> float:
    if not gold:
        raise ValueError("gold labels are empty")
    hits = 0
    for item, truth in gold.items():
        if item not in predicted:
            raise MissingPrediction(f"no prediction for gold item {item!r}")
        hits += predicted[item] == truth
    return hits / len(gold)


@dataclass(frozen=True)
class PipelineConfig:
    features: tuple[str, ...] = FEATURES
    tie_label: int = 1
    merge_cfg: MergeConfig = field(default_factory=MergeConfig)
    undefined_feature_value: float = 0.0
    uniform_weights: bool = False

    def __post_init__(self) -> None:
        feats = self.features
        if isinstance(feats, str):
            feats = LITERAL_FEATURES if feats == "literal" else FEATURES if feats == "default" else feats.split(",")
        feats = tuple(canonical_feature(f) for f in feats)
        if not feats:
            raise ConfigError("features must be non-empty")
        object.__setattr__(self, "features", feats)
        if self.tie_label not in (0, 1):
            raise ConfigError("tie_label must be 0 or 1")

    def describe(self) -> dict:
        return {
            "features": "+".join(self.features), "tie_label": self.tie_label,
            "alpha": self.merge_cfg.alpha, "tie_enum_cap": self.merge_cfg.tie_enum_cap,
            "distance": self.merge_cfg.distance.value, "undefined_feature_value": self.undefined_feature_value,
            "uniform_weights": self.uniform_weights, "rank_to_weight": "linear",
        }


@dataclass
class CrowdReport:
    config: PipelineConfig
    majority: dict[ItemId, int]
    majority_accuracy: float | None
    features: dict[WorkerId, WorkerQuality]
    worker_rankings: WorkerRankings
    aggregation: AggregationResult
    consensus_workers: list[WorkerId]
    worker_weights: dict[WorkerId, float]
    predicted: dict[ItemId, int]
    accuracy: float | None


def run_pipeline(labels: LabelMatrix, gold: Mapping[ItemId, int] | None = None,
                 cfg: PipelineConfig | None = None) -> CrowdReport:
    """Majority vote -> features -> feature rankings -> consensus -> weights -> weighted vote."""
    cfg = cfg or PipelineConfig()
    majority = majority_vote(labels, cfg.tie_label)
    feats = annotator_features(labels, majority)
    wr = feature_rankings(feats, cfg.features, cfg.undefined_feature_value)
    result = aggregate(wr.rankings, cfg.merge_cfg)
    consensus_workers = wr.worker_order(result.consensus)
    if cfg.uniform_weights:
        weights = {w: 1.0 for w in wr.workers}
    else:
        by_obj = rank_to_weight(result.consensus)
        weights = {wr.workers[o - 1]: v for o, v in by_obj.items()}
    predicted = weighted_label_aggregate(labels, weights, cfg.tie_label)
    gold = dict(gold) if gold else {}
    return CrowdReport(
        config=cfg,
        majority=majority,
        majority_accuracy=evaluate_accuracy(majority, gold) if gold else None,
        features=feats,
        worker_rankings=wr,
        aggregation=result,
        consensus_workers=consensus_workers,
        worker_weights=weights,
        predicted=predicted,
        accuracy=evaluate_accuracy(predicted, gold) if gold else None,
    )


def planted_crowd(n_workers: int = 50, n_items: int = 500, seed: int = 0,
                  ability_range: tuple[float, float] = (0.55, 0.95)):
    """Synthetic crowd where worker ``j`` is right with probability ``p_j``.

    Returns ``(labels, gold, abilities)``; every worker labels every item and
    abilities are keyed by worker id ``1..n_workers``.
    """
    rng = np.random.default_rng(seed)
    p = rng.uniform(*ability_range, size=n_workers)
    truth = rng.integers(0, 2, size=n_items)
    correct = rng.random((n_workers, n_items)) < p[:, None]
    dense = np.where(correct, truth[None, :], 1 - truth[None, :])
    labels = LabelMatrix.from_dense(dense)
    gold = {i + 1: int(t) for i, t in enumerate(truth)}
    return labels, gold, {j + 1: float(v) for j, v in enumerate(p)}
