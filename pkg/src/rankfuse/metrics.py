"""Distances and similarities between rankings.

Two distances are supported, Spearman's footrule (sum of absolute position
differences) and Kendall's tau distance (number of discordant pairs). Both
are turned into a similarity in ``[0, 1]`` by dividing by their maximum over
all permutation pairs: ``floor(m**2 / 2)`` for the footrule and
``m * (m - 1) / 2`` for Kendall.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import UniverseMismatch, ZeroTotalWeight
from .rankings import Ranking, RankingList, check_same_universe, positions_vector


class DistanceKind(str, enum.Enum):
    FOOTRULE = "footrule"
    KENDALL = "kendall"

    @classmethod
    def parse(cls, value: "DistanceKind | str") -> "DistanceKind":
        if isinstance(value, cls):
            return value
        aliases = {"spearman": cls.FOOTRULE, "spearmanfootrule": cls.FOOTRULE, "kendalltau": cls.KENDALL}
        key = str(value).lower().replace("_", "").replace("-", "")
        if key in aliases:
            return aliases[key]
        return cls(key)


def _paired_positions(a: Ranking, b: Ranking) -> tuple[np.ndarray, np.ndarray]:
    check_same_universe(a, b)
    pa = np.arange(1, a.m + 1)
    pb = positions_vector(b, np.asarray(a.order))
    return pa, pb


def footrule_distance(a: Ranking, b: Ranking) -> int:
    pa, pb = _paired_positions(a, b)
    return int(np.abs(pa - pb).sum())


def kendall_distance(a: Ranking, b: Ranking) -> int:
    # objects visited in a's order, so a discordant pair is an inversion in pb
    _, pb = _paired_positions(a, b)
    return _count_inversions(pb)


def _count_inversions(seq: np.ndarray) -> int:
    seq = np.asarray(seq)
    if len(seq) < 2:
        return 0
    if len(seq) <= 64:
        return int(np.triu(seq[:, None] > seq[None, :], 1).sum())
    # merge-sort count for long sequences
    seq = seq.tolist()

    def sort_count(x):
        if len(x) <= 1:
            return x, 0
        mid = len(x) // 2
        left, cl = sort_count(x[:mid])
        right, cr = sort_count(x[mid:])
        merged, i, j, inv = [], 0, 0, cl + cr
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                inv += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, inv

    return sort_count(seq)[1]


def max_distance(m: int, kind: DistanceKind | str = DistanceKind.FOOTRULE) -> int:
    kind = DistanceKind.parse(kind)
    if kind is DistanceKind.FOOTRULE:
        return (m * m) // 2
    return m * (m - 1) // 2


def distance(a: Ranking, b: Ranking, kind: DistanceKind | str = DistanceKind.FOOTRULE) -> int:
    kind = DistanceKind.parse(kind)
    if kind is DistanceKind.FOOTRULE:
        return footrule_distance(a, b)
    return kendall_distance(a, b)


def normalized_similarity(a: Ranking, b: Ranking, kind: DistanceKind | str = DistanceKind.FOOTRULE) -> float:
    """``1 - d(a, b) / max_distance``; defined as 1 for single-object rankings."""
    d = distance(a, b, kind)
    dmax = max_distance(a.m, kind)
    if dmax == 0:
        return 1.0
    return 1.0 - d / dmax


# -- vectorised kernels over position matrices ------------------------------
#
# A position matrix has one row per ranking and one column per object (in a
# fixed shared column order); entries are 1-based positions.


def pairwise_distances(P: np.ndarray, Q: np.ndarray, kind: DistanceKind | str = DistanceKind.FOOTRULE) -> np.ndarray:
    """Distance between every row of ``P`` and every row of ``Q``."""
    kind = DistanceKind.parse(kind)
    P = np.atleast_2d(P)
    Q = np.atleast_2d(Q)
    if P.shape[1] != Q.shape[1]:
        raise UniverseMismatch("position matrices have different widths")
    if kind is DistanceKind.FOOTRULE:
        return np.abs(P[:, None, :] - Q[None, :, :]).sum(axis=2)
    sp = np.sign(P[:, :, None] - P[:, None, :])
    sq = np.sign(Q[:, :, None] - Q[:, None, :])
    # each discordant unordered pair shows up twice with product -1
    prod = np.einsum("ajk,bjk->ab", sp, sq)
    m = P.shape[1]
    return ((m * (m - 1) - prod) // 4).astype(np.int64)


def similarity_from_distance(d, m: int, kind: DistanceKind | str = DistanceKind.FOOTRULE):
    dmax = max_distance(m, kind)
    if dmax == 0:
        return np.ones_like(np.asarray(d, dtype=float))
    return 1.0 - np.asarray(d, dtype=float) / dmax


def _candidate_positions(candidate: Ranking, inputs: RankingList) -> np.ndarray:
    if candidate.universe != inputs.universe:
        raise UniverseMismatch("candidate ranks a different object set than the inputs")
    return positions_vector(candidate, inputs.objects)


def weighted_total_distance(candidate: Ranking, inputs: RankingList,
                            kind: DistanceKind | str = DistanceKind.FOOTRULE) -> float:
    """Sum of ``w_i * d(R_i, candidate)`` over the input list."""
    pc = _candidate_positions(candidate, inputs)
    d = pairwise_distances(inputs.positions, pc[None, :], kind)[:, 0]
    return float(inputs.weights @ d)


def weighted_mean_similarity(candidate: Ranking, inputs: RankingList,
                             kind: DistanceKind | str = DistanceKind.FOOTRULE) -> float:
    """Weight-averaged normalized similarity of ``candidate`` to every input."""
    total = float(inputs.weights.sum())
    if total <= 0:
        raise ZeroTotalWeight("weights sum to zero")
    pc = _candidate_positions(candidate, inputs)
    d = pairwise_distances(inputs.positions, pc[None, :], kind)[:, 0]
    sims = similarity_from_distance(d, inputs.m, kind)
    return float(inputs.weights @ sims / total)


def similarity_matrix(inputs: RankingList | list[Ranking],
                      kind: DistanceKind | str = DistanceKind.FOOTRULE) -> np.ndarray:
    """Symmetric matrix of unweighted pairwise normalized similarities."""
    if not isinstance(inputs, RankingList):
        inputs = RankingList(inputs)
    P = inputs.positions
    S = similarity_from_distance(pairwise_distances(P, P, kind), inputs.m, kind)
    np.fill_diagonal(S, 1.0)
    return S
