"""Classical rank aggregation methods used as comparison points.

Every function takes a :class:`~rankfuse.rankings.RankingList` and returns a
consensus :class:`~rankfuse.rankings.Ranking`. Ties in the aggregate key are
always broken by ascending object id.

Borda, mean rank, geometric-mean rank, iterated plurality and MC4 honour the
ranking weights. Stuart's and the robust rank aggregation (RRA) order
statistic methods are unweighted by construction and warn when given
non-uniform weights.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptyInput, NoConvergence
from .rankings import Ranking, RankingList
from .scores import ScoreVector
from .special import beta_cdf

# keys closer than this are treated as tied before the id tie-break
_KEY_DECIMALS = 9


class BaselineKind(str, enum.Enum):
    BORDA = "borda"
    MEAN_RANK = "mean"
    GEOMETRIC_RANK = "geometric"
    SIMPLE_VOTING = "voting"
    MC4 = "mc4"
    STUART = "stuart"
    ROBUST_RA = "rra"

    @classmethod
    def parse(cls, value: "BaselineKind | str") -> "BaselineKind":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("_", "").replace("-", "").replace(" ", "")
        aliases = {
            "meanrank": cls.MEAN_RANK, "geometricrank": cls.GEOMETRIC_RANK, "geomean": cls.GEOMETRIC_RANK,
            "simplevoting": cls.SIMPLE_VOTING, "robustra": cls.ROBUST_RA, "robustrankaggregation": cls.ROBUST_RA,
        }
        return aliases.get(key) or cls(key)


def _check(inputs: RankingList) -> RankingList:
    if inputs is None or len(inputs) == 0:
        raise EmptyInput("nothing to aggregate")
    return inputs


def _rank_by(keys: np.ndarray, objects: np.ndarray, descending: bool) -> Ranking:
    k = np.round(np.asarray(keys, dtype=float), _KEY_DECIMALS)
    order = np.lexsort((objects, -k if descending else k))
    return Ranking(tuple(objects[order].tolist()))


def borda_scores(inputs: RankingList) -> np.ndarray:
    """``sum_i w_i * (m - pos_i(o))`` per object, in ``inputs.objects`` order."""
    return inputs.weights @ (inputs.m - inputs.positions)


def borda(inputs: RankingList) -> Ranking:
    inputs = _check(inputs)
    return _rank_by(borda_scores(inputs), inputs.objects, descending=True)


def mean_rank(inputs: RankingList) -> Ranking:
    inputs = _check(inputs)
    w = inputs.weights
    return _rank_by(w @ inputs.positions / w.sum(), inputs.objects, descending=False)


def geometric_rank(inputs: RankingList) -> Ranking:
    inputs = _check(inputs)
    w = inputs.weights
    # ordering by the weighted mean log position is the same as by its exp
    return _rank_by(w @ np.log(inputs.positions) / w.sum(), inputs.objects, descending=False)


def simple_voting(inputs: RankingList) -> Ranking:
    """Iterated weighted plurality.

    Each round every list votes, with its weight, for its best object not yet
    placed; the winner takes the next consensus slot.
    """
    inputs = _check(inputs)
    orders = [wr.ranking.order for wr in inputs]
    weights = inputs.weights
    placed: set[int] = set()
    cursor = [0] * len(orders)
    out = []
    for _ in range(inputs.m):
        votes: dict[int, float] = {}
        for i, order in enumerate(orders):
            while order[cursor[i]] in placed:
                cursor[i] += 1
            top = order[cursor[i]]
            votes[top] = votes.get(top, 0.0) + weights[i]
        best = max(round(v, _KEY_DECIMALS) for v in votes.values())
        winner = min(o for o, v in votes.items() if round(v, _KEY_DECIMALS) == best)
        placed.add(winner)
        out.append(winner)
    return Ranking(tuple(out))


@dataclass(frozen=True)
class Mc4Config:
    damping: float = 0.85
    max_iters: int = 10_000
    tolerance: float = 1e-10

    def __post_init__(self) -> None:
        if not 0.0 < self.damping <= 1.0:
            raise ConfigError(f"damping must lie in (0, 1], got {self.damping}")
        if self.max_iters < 1 or self.tolerance <= 0:
            raise ConfigError("max_iters and tolerance must be positive")


def mc4_transition_matrix(inputs: RankingList, damping: float = 0.85) -> np.ndarray:
    """Damped MC4 chain over ``inputs.objects``.

    From object ``u`` a candidate ``v`` is drawn uniformly; the walk moves to
    ``v`` when rankings holding strictly more than half the total weight put
    ``v`` above ``u``, otherwise it stays.
    """
    P, w, m = inputs.positions, inputs.weights, inputs.m
    # prefer[u, v] = weight of lists ranking v above u
    prefer = np.einsum("i,iuv->uv", w, (P[:, None, :] < P[:, :, None]).astype(float))
    moves = (prefer > w.sum() / 2.0).astype(float) / m
    np.fill_diagonal(moves, 0.0)
    T = moves + np.diag(1.0 - moves.sum(axis=1))
    return damping * T + (1.0 - damping) / m


def mc4_stationary(inputs: RankingList, cfg: Mc4Config | None = None) -> np.ndarray:
    cfg = cfg or Mc4Config()
    T = mc4_transition_matrix(inputs, cfg.damping)
    pi = np.full(inputs.m, 1.0 / inputs.m)
    for _ in range(cfg.max_iters):
        nxt = pi @ T
        nxt /= nxt.sum()
        if np.abs(nxt - pi).sum() < cfg.tolerance:
            return nxt
        pi = nxt
    raise NoConvergence(f"MC4 power iteration did not converge in {cfg.max_iters} steps")


def mc4(inputs: RankingList, cfg: Mc4Config | None = None) -> Ranking:
    inputs = _check(inputs)
    return _rank_by(mc4_stationary(inputs, cfg), inputs.objects, descending=True)


def _warn_if_weighted(inputs: RankingList, name: str) -> None:
    w = inputs.weights
    if not np.allclose(w, w[0]):
        warnings.warn(f"{name} ignores ranking weights", RuntimeWarning, stacklevel=3)


def rra_score(norm_ranks) -> float:
    """Bonferroni-corrected minimum beta p-value of sorted normalized ranks."""
    r = np.sort(np.asarray(norm_ranks, dtype=float))
    n = len(r)
    rho = min(beta_cdf(float(x), k, n - k + 1) for k, x in enumerate(r, start=1))
    return min(1.0, rho * n)


def stuart_score(norm_ranks) -> float:
    """Stuart's joint order-statistic probability ``n! * V_n``."""
    r = np.sort(np.asarray(norm_ranks, dtype=float))
    n = len(r)
    V = [1.0]
    for k in range(1, n + 1):
        x = r[n - k]
        V.append(sum((-1) ** (i - 1) * V[k - i] * x**i / math.factorial(i) for i in range(1, k + 1)))
    return math.factorial(n) * V[n]


def order_statistic_scores(inputs: RankingList, kind: BaselineKind | str) -> ScoreVector:
    """Per-object Stuart or RRA scores; smaller means more consistently near the top."""
    inputs = _check(inputs)
    kind = BaselineKind.parse(kind)
    if kind is BaselineKind.STUART:
        fn = stuart_score
    elif kind is BaselineKind.ROBUST_RA:
        fn = rra_score
    else:
        raise ValueError(f"{kind.value} is not an order-statistic method")
    _warn_if_weighted(inputs, kind.value)
    R = inputs.positions / inputs.m
    return ScoreVector({int(o): fn(R[:, j]) for j, o in enumerate(inputs.objects)})


def _order_statistic_ranking(inputs: RankingList, kind: BaselineKind) -> Ranking:
    sv = order_statistic_scores(inputs, kind)
    return _rank_by(np.array([sv[int(o)] for o in inputs.objects]), inputs.objects, descending=False)


def stuart(inputs: RankingList) -> Ranking:
    return _order_statistic_ranking(inputs, BaselineKind.STUART)


def robust_rank_aggregation(inputs: RankingList) -> Ranking:
    return _order_statistic_ranking(inputs, BaselineKind.ROBUST_RA)


_DISPATCH = {
    BaselineKind.BORDA: borda,
    BaselineKind.MEAN_RANK: mean_rank,
    BaselineKind.GEOMETRIC_RANK: geometric_rank,
    BaselineKind.SIMPLE_VOTING: simple_voting,
    BaselineKind.MC4: mc4,
    BaselineKind.STUART: stuart,
    BaselineKind.ROBUST_RA: robust_rank_aggregation,
}


def run_baseline(kind: BaselineKind | str, inputs: RankingList) -> Ranking:
    return _DISPATCH[BaselineKind.parse(kind)](inputs)
