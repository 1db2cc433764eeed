"""Ranking containers.

A :class:`Ranking` is a total order over ``m`` object ids, best first.
Positions are 1-based: ``order[0]`` sits at position 1. Object ids are
arbitrary positive integers and need not be contiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DuplicateObject, EmptyInput, EmptyRanking, UniverseMismatch, ZeroTotalWeight


@dataclass(frozen=True)
class Ranking:
    """Immutable permutation of object ids, position 1 first."""

    order: tuple[int, ...]
    _pos: Mapping[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        order = tuple(int(o) for o in self.order)
        if not order:
            raise EmptyRanking("a ranking needs at least one object")
        pos: dict[int, int] = {}
        for k, obj in enumerate(order, start=1):
            if obj < 1:
                raise ValueError(f"object ids must be positive integers, got {obj}")
            if obj in pos:
                raise DuplicateObject(f"object {obj} appears more than once")
            pos[obj] = k
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_pos", pos)

    @property
    def m(self) -> int:
        return len(self.order)

    @property
    def universe(self) -> frozenset[int]:
        return frozenset(self.order)

    def position(self, obj: int) -> int:
        return self._pos[obj]

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def __str__(self) -> str:
        return ",".join(map(str, self.order))


def validate_ranking(order: Iterable[int]) -> Ranking:
    """Return a :class:`Ranking` or raise ``DuplicateObject`` / ``EmptyRanking``."""
    return Ranking(tuple(order))


def positions_of(r: Ranking) -> dict[int, int]:
    """Map each object id to its 1-based position in ``r``."""
    return dict(r._pos)


def ranking_from_positions(positions: Mapping[int, int]) -> Ranking:
    """Inverse of :func:`positions_of`."""
    return Ranking(tuple(sorted(positions, key=positions.__getitem__)))


@dataclass(frozen=True)
class WeightedRanking:
    ranking: Ranking
    weight: float = 1.0

    def __post_init__(self) -> None:
        w = float(self.weight)
        if not np.isfinite(w) or w < 0:
            raise ValueError(f"weights must be finite and non-negative, got {self.weight}")
        object.__setattr__(self, "weight", w)


class RankingList(Sequence[WeightedRanking]):
    """A non-empty list of weighted rankings over one shared object universe.

    Besides the sequence protocol, the list exposes a dense position matrix
    (``positions``, shape ``(n, m)``, columns follow ``objects``) that the
    numeric routines work on directly.
    """

    def __init__(self, items: Iterable[WeightedRanking | Ranking | Sequence[int]]):
        wrs = []
        for it in items:
            if isinstance(it, WeightedRanking):
                wrs.append(it)
            elif isinstance(it, Ranking):
                wrs.append(WeightedRanking(it))
            else:
                wrs.append(WeightedRanking(validate_ranking(it)))
        if not wrs:
            raise EmptyInput("a ranking list needs at least one ranking")
        universe = wrs[0].ranking.universe
        for i, wr in enumerate(wrs[1:], start=1):
            if wr.ranking.universe != universe:
                raise UniverseMismatch(f"ranking {i} ranks a different object set than ranking 0")
        if not any(wr.weight > 0 for wr in wrs):
            raise ZeroTotalWeight("at least one ranking must carry positive weight")
        self._items = tuple(wrs)
        self.objects = np.array(sorted(universe), dtype=np.int64)
        col = {o: j for j, o in enumerate(self.objects.tolist())}
        pos = np.empty((len(wrs), len(col)), dtype=np.int64)
        for i, wr in enumerate(wrs):
            for k, o in enumerate(wr.ranking.order, start=1):
                pos[i, col[o]] = k
        pos.setflags(write=False)
        self.positions = pos
        w = np.array([wr.weight for wr in wrs], dtype=float)
        w.setflags(write=False)
        self.weights = w

    @classmethod
    def from_orders(cls, orders: Iterable[Sequence[int]], weights: Iterable[float] | None = None) -> RankingList:
        orders = list(orders)
        if weights is None:
            weights = [1.0] * len(orders)
        weights = list(weights)
        if len(weights) != len(orders):
            raise ValueError(f"{len(orders)} rankings but {len(weights)} weights")
        return cls(WeightedRanking(validate_ranking(o), w) for o, w in zip(orders, weights))

    def with_weights(self, weights: Iterable[float]) -> RankingList:
        return RankingList(WeightedRanking(wr.ranking, w) for wr, w in zip(self._items, weights, strict=True))

    @property
    def rankings(self) -> list[Ranking]:
        return [wr.ranking for wr in self._items]

    @property
    def m(self) -> int:
        return len(self.objects)

    @property
    def universe(self) -> frozenset[int]:
        return self._items[0].ranking.universe

    def __getitem__(self, i):
        return self._items[i]

    def __len__(self) -> int:
        return len(self._items)

    def __repr__(self) -> str:
        body = ", ".join(f"([{wr.ranking}], {wr.weight:g})" for wr in self._items)
        return f"RankingList({body})"


def positions_vector(r: Ranking, objects: np.ndarray) -> np.ndarray:
    """Positions of ``objects`` (in that column order) within ``r``."""
    try:
        return np.fromiter((r.position(int(o)) for o in objects), dtype=np.int64, count=len(objects))
    except KeyError as exc:
        raise UniverseMismatch(f"object {exc.args[0]} is not ranked") from None


def check_same_universe(a: Ranking, b: Ranking) -> None:
    if a.m != b.m or a.universe != b.universe:
        raise UniverseMismatch("rankings cover different object sets")
