"""Weighted hierarchical merge aggregation.

The aggregator keeps a pool of weighted rankings, initially the inputs.
Each round it

1. computes the pairwise similarity matrix of the pool,
2. takes the most similar pair and blends their position scores in
   proportion to their weights; objects whose blended scores tie are
   ordered by trying every arrangement of the tie groups and keeping the
   one closest (weighted total distance) to the original inputs,
3. gives the merged ranking a weight that mixes the parents' weights with
   its fitness against the original inputs,

and stops when one ranking is left.

Example
-------
>>> from rankfuse import RankingList, aggregate
>>> res = aggregate(RankingList.from_orders([[1, 2, 4, 3, 5], [2, 1, 3, 4, 5]]))
>>> res.consensus.order, res.objective
((1, 2, 3, 4, 5), 4.0)
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, EmptyInput, UniverseMismatch, ZeroTotalWeight
from .metrics import DistanceKind, max_distance, pairwise_distances, weighted_total_distance
from .rankings import Ranking, RankingList, WeightedRanking, positions_vector
from .scores import overall_scores

# relative tolerance for treating two blended scores as equal
SCORE_TIE_RTOL = 1e-9
OBJECTIVE_RTOL = 1e-9


@dataclass(frozen=True)
class MergeConfig:
    """Knobs of the merge aggregator.

    ``alpha`` balances the parents' weights (``alpha = 1``) against the fitness
    of the merged ranking (``alpha = 0``) when weighting a merge result.
    ``tie_enum_cap`` bounds the number of tie arrangements tried per merge.
    ``initial_weight_policy`` is ``"provided"`` (use the list's weights) or
    ``"uniform"`` (reset every input weight to 1.0).
    """

    distance: DistanceKind = DistanceKind.FOOTRULE
    alpha: float = 0.5
    tie_enum_cap: int = 720
    initial_weight_policy: str = "provided"

    def __post_init__(self) -> None:
        object.__setattr__(self, "distance", DistanceKind.parse(self.distance))
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in [0, 1], got {self.alpha}")
        if int(self.tie_enum_cap) < 1:
            raise ConfigError(f"tie_enum_cap must be >= 1, got {self.tie_enum_cap}")
        object.__setattr__(self, "tie_enum_cap", int(self.tie_enum_cap))
        policy = str(self.initial_weight_policy).lower()
        if policy not in ("provided", "uniform"):
            raise ConfigError(f"unknown initial_weight_policy {self.initial_weight_policy!r}")
        object.__setattr__(self, "initial_weight_policy", policy)


@dataclass(frozen=True)
class MergeStep:
    pair: tuple[int, int]
    tie_sizes: tuple[int, ...]
    n_candidates: int
    n_optimal: int
    weight: float
    pair_tied: bool = False


@dataclass(frozen=True)
class AggregationResult:
    consensus: Ranking
    weight: float
    objective: float
    merge_trace: tuple[MergeStep, ...] = field(default_factory=tuple)


class _Originals:
    """Original inputs in array form plus a cached cost table for the footrule."""

    def __init__(self, inputs: RankingList, kind: DistanceKind):
        self.inputs = inputs
        self.kind = kind
        self.objects = inputs.objects
        self.P = inputs.positions
        self.w = inputs.weights
        self.m = inputs.m
        self.mean_weight = float(self.w.mean())
        self.total_weight = float(self.w.sum())
        self._cost = None

    @property
    def cost(self) -> np.ndarray:
        # cost[j, k-1] = sum_i w_i * |P_i[j] - k|
        if self._cost is None:
            ks = np.arange(1, self.m + 1)
            self._cost = np.einsum("i,ijk->jk", self.w, np.abs(self.P[:, :, None] - ks[None, None, :]))
        return self._cost

    def objectives(self, cand_pos: np.ndarray) -> np.ndarray:
        """Weighted total distance of each candidate position row."""
        if self.kind is DistanceKind.FOOTRULE:
            cols = np.arange(self.m)
            return self.cost[cols[None, :], cand_pos - 1].sum(axis=1)
        return self.w @ pairwise_distances(self.P, cand_pos, self.kind)

    def fitness(self, pos: np.ndarray) -> float:
        d = pairwise_distances(self.P, pos[None, :], self.kind)[:, 0]
        dmax = max_distance(self.m, self.kind)
        sims = np.ones(len(d)) if dmax == 0 else 1.0 - d / dmax
        return float(self.w @ sims / self.total_weight)


def _tie_groups(scores: np.ndarray, order: np.ndarray) -> list[tuple[int, int]]:
    """Half-open index spans of ``order`` whose scores are equal."""
    s = scores[order]
    spans, start = [], 0
    for i in range(1, len(s) + 1):
        if i == len(s) or abs(s[i] - s[i - 1]) > SCORE_TIE_RTOL * max(1.0, abs(s[i]), abs(s[i - 1])):
            if i - start > 1:
                spans.append((start, i))
            start = i
    return spans


def _order_to_positions(order_cols: np.ndarray) -> np.ndarray:
    pos = np.empty_like(order_cols)
    pos[order_cols] = np.arange(1, len(order_cols) + 1)
    return pos


def _resolve_ties(scores: np.ndarray, orig: _Originals, cap: int):
    """Order columns by descending score, settling ties against the originals.

    Returns (positions, tie_sizes, n_candidates, n_optimal, candidate_rows,
    candidate_objectives).
    """
    ids = orig.objects
    base = np.lexsort((ids, -scores))
    spans = _tie_groups(scores, base)
    sizes = tuple(b - a for a, b in spans)
    n_cand = math.prod(math.factorial(s) for s in sizes)
    if not spans or n_cand > cap:
        pos = _order_to_positions(base)
        return pos, sizes, 1, 1, base[None, :], orig.objectives(pos[None, :])

    rows = []
    for combo in itertools.product(*(itertools.permutations(base[a:b]) for a, b in spans)):
        row = base.copy()
        for (a, b), perm in zip(spans, combo):
            row[a:b] = perm
        rows.append(row)
    rows = np.array(rows)
    cand_pos = np.empty_like(rows)
    np.put_along_axis(cand_pos, rows, np.arange(1, orig.m + 1)[None, :].repeat(len(rows), 0), axis=1)
    obj = orig.objectives(cand_pos)
    best = obj.min()
    optimal = np.flatnonzero(obj <= best + OBJECTIVE_RTOL * max(1.0, abs(best)))
    # lexicographically smallest object-id sequence among the optimal candidates
    id_rows = ids[rows[optimal]]
    pick = optimal[np.lexsort(id_rows.T[::-1])[0]]
    return cand_pos[pick], sizes, n_cand, len(optimal), rows, obj


def _merge_arrays(pa, wa, pb, wb, orig: _Originals, cfg: MergeConfig):
    total = wa + wb
    if total <= 0:
        raise ZeroTotalWeight("cannot merge two rankings that both carry zero weight")
    sa = overall_scores(orig.m, pa)
    sb = overall_scores(orig.m, pb)
    t = wb / total
    merged = sa + t * (sb - sa)
    pos, sizes, n_cand, n_opt, _, _ = _resolve_ties(merged, orig, cfg.tie_enum_cap)
    weight = _blend_weight(wa, wb, orig.fitness(pos), orig.mean_weight, cfg.alpha)
    return pos, weight, sizes, n_cand, n_opt


def _blend_weight(w1: float, w2: float, fitness: float, mean_original: float, alpha: float) -> float:
    # fitness is scaled by the mean original weight so that rescaling all
    # input weights rescales every pool weight by the same factor
    return alpha * (w1 + w2) / 2.0 + (1.0 - alpha) * fitness * mean_original


def _prepare(inputs: RankingList, cfg: MergeConfig) -> RankingList:
    if cfg.initial_weight_policy == "uniform":
        return inputs.with_weights([1.0] * len(inputs))
    return inputs


def update_weight(parent_w1: float, parent_w2: float, merged: Ranking, originals: RankingList,
                  cfg: MergeConfig | None = None) -> float:
    """Weight of a merged ranking.

    ``alpha * mean(parent weights) + (1 - alpha) * fitness * mean(original weights)``
    where fitness is the weighted mean normalized similarity of ``merged`` to
    the originals. With unit input weights the last factor is 1.
    """
    cfg = cfg or MergeConfig()
    originals = _prepare(originals, cfg)
    if originals.weights.sum() <= 0:
        raise ZeroTotalWeight("original weights sum to zero")
    if merged.universe != originals.universe:
        raise UniverseMismatch("merged ranking covers a different object set")
    orig = _Originals(originals, cfg.distance)
    fit = orig.fitness(positions_vector(merged, orig.objects))
    return _blend_weight(parent_w1, parent_w2, fit, orig.mean_weight, cfg.alpha)


def merge_candidates(a: WeightedRanking, b: WeightedRanking, originals: RankingList,
                     cfg: MergeConfig | None = None) -> list[tuple[Ranking, float]]:
    """Every tie arrangement considered when merging ``a`` and ``b``, with its objective.

    A single entry is returned when there are no ties or when the number of
    arrangements exceeds ``cfg.tie_enum_cap``.
    """
    cfg = cfg or MergeConfig()
    originals = _prepare(originals, cfg)
    orig = _Originals(originals, cfg.distance)
    pa, pb = _pair_positions(a, b, orig)
    total = a.weight + b.weight
    if total <= 0:
        raise ZeroTotalWeight("merge weights sum to zero")
    sa, sb = overall_scores(orig.m, pa), overall_scores(orig.m, pb)
    merged = sa + (b.weight / total) * (sb - sa)
    _, _, _, _, rows, obj = _resolve_ties(merged, orig, cfg.tie_enum_cap)
    return [(Ranking(tuple(orig.objects[r].tolist())), float(o)) for r, o in zip(rows, obj)]


def _pair_positions(a: WeightedRanking, b: WeightedRanking, orig: _Originals):
    if a.ranking.universe != orig.inputs.universe or b.ranking.universe != orig.inputs.universe:
        raise UniverseMismatch("merge operands and originals cover different object sets")
    return positions_vector(a.ranking, orig.objects), positions_vector(b.ranking, orig.objects)


def merge_pair(a: WeightedRanking, b: WeightedRanking, originals: RankingList,
               cfg: MergeConfig | None = None) -> WeightedRanking:
    """Merge two weighted rankings into one, weighted by :func:`update_weight`."""
    cfg = cfg or MergeConfig()
    originals = _prepare(originals, cfg)
    orig = _Originals(originals, cfg.distance)
    pa, pb = _pair_positions(a, b, orig)
    pos, weight, *_ = _merge_arrays(pa, a.weight, pb, b.weight, orig, cfg)
    return WeightedRanking(_positions_to_ranking(pos, orig.objects), weight)


def _positions_to_ranking(pos: np.ndarray, objects: np.ndarray) -> Ranking:
    return Ranking(tuple(objects[np.argsort(pos, kind="stable")].tolist()))


def _most_similar_pair(pool_pos: list[np.ndarray], kind: DistanceKind) -> tuple[int, int, bool]:
    P = np.array(pool_pos)
    # similarity is a decreasing function of the integer distance, so compare distances
    D = pairwise_distances(P, P, kind)
    n = len(pool_pos)
    iu, ju = np.triu_indices(n, 1)
    d = D[iu, ju]
    hits = np.flatnonzero(d == d.min())
    # triu_indices enumerates pairs in lexicographic (i, j) order
    return int(iu[hits[0]]), int(ju[hits[0]]), len(hits) > 1


def aggregate(inputs: RankingList, cfg: MergeConfig | None = None) -> AggregationResult:
    """Merge the inputs pairwise, most similar first, until one ranking remains."""
    cfg = cfg or MergeConfig()
    if inputs is None or len(inputs) == 0:
        raise EmptyInput("nothing to aggregate")
    inputs = _prepare(inputs, cfg)
    if np.any(inputs.weights == 0):
        warnings.warn("some input rankings carry zero weight", RuntimeWarning, stacklevel=2)
    orig = _Originals(inputs, cfg.distance)

    pool_pos = [row.copy() for row in orig.P]
    pool_w = [float(w) for w in orig.w]
    trace = []
    while len(pool_pos) > 1:
        i, j, tied = _most_similar_pair(pool_pos, cfg.distance)
        wi, wj = pool_w[i], pool_w[j]
        if wi + wj <= 0:
            warnings.warn("merging two zero-weight rankings with equal shares", RuntimeWarning, stacklevel=2)
            wi = wj = 1.0
        pos, weight, sizes, n_cand, n_opt = _merge_arrays(pool_pos[i], wi, pool_pos[j], wj, orig, cfg)
        trace.append(MergeStep((i, j), sizes, n_cand, n_opt, weight, tied))
        pool_pos[i], pool_w[i] = pos, weight
        del pool_pos[j], pool_w[j]

    consensus = _positions_to_ranking(pool_pos[0], orig.objects)
    objective = weighted_total_distance(consensus, inputs, cfg.distance)
    # a lone input keeps its own weight
    return AggregationResult(consensus, pool_w[0], objective, tuple(trace))
