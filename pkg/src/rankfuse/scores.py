"""Quadratic position scores and their weighted merge.

For a ranking of ``m`` objects and a 1-based position ``k``:

* gain    ``(m - k) * (m - k - 1) / 2``
* penalty ``k * (k + 1) / 2``
* overall ``gain - penalty = (m**2 - 2*m*k - m) / 2``

The overall score is strictly decreasing in ``k``, so sorting a score
vector in descending order gives back the ranking it came from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import PositionOutOfRange, UniverseMismatch, ZeroTotalWeight
from .rankings import Ranking


def _check(m: int, k: int) -> None:
    if m < 1 or not 1 <= k <= m:
        raise PositionOutOfRange(f"position {k} outside 1..{m}")


def gain_score(m: int, k: int) -> int:
    _check(m, k)
    return (m - k) * (m - k - 1) // 2


def penalty_score(m: int, k: int) -> int:
    _check(m, k)
    return k * (k + 1) // 2


def overall_score(m: int, k: int) -> float:
    _check(m, k)
    return (m * m - 2 * m * k - m) / 2


def overall_scores(m: int, positions) -> np.ndarray:
    """Vectorised :func:`overall_score` for an array of positions."""
    k = np.asarray(positions, dtype=float)
    return (m * m - 2.0 * m * k - m) / 2.0


@dataclass(frozen=True)
class ScoreVector:
    """Per-object scores over a fixed universe of ``universe_size`` objects."""

    scores: Mapping[int, float]

    @property
    def universe_size(self) -> int:
        return len(self.scores)

    def __getitem__(self, obj: int) -> float:
        return self.scores[obj]

    def to_ranking(self) -> Ranking:
        """Descending score order; equal scores fall back to ascending id."""
        return Ranking(tuple(sorted(self.scores, key=lambda o: (-self.scores[o], o))))


def score_vector(r: Ranking) -> ScoreVector:
    vals = overall_scores(r.m, np.arange(1, r.m + 1))
    return ScoreVector({o: float(v) for o, v in zip(r.order, vals)})


def merge_scores(s1: ScoreVector, w1: float, s2: ScoreVector, w2: float) -> ScoreVector:
    """Weight-proportional blend ``(w1*a + w2*b) / (w1 + w2)``, object by object."""
    if s1.scores.keys() != s2.scores.keys():
        raise UniverseMismatch("score vectors cover different object sets")
    total = w1 + w2
    if total <= 0:
        raise ZeroTotalWeight("merge weights sum to zero")
    # a + t*(b - a) is exact when w2 == 0 or when a == b
    t = w2 / total
    return ScoreVector({o: s1[o] + t * (s2[o] - s1[o]) for o in s1.scores})
