"""Gaussian-noise sweep benchmark.

A ground-truth ranking (identity over ``1..m``) is perturbed ``n_rankings``
times at each noise level ``sigma_t = t * sigma_step``, ``t = 1..iterations``.
Every algorithm aggregates the noisy list, and the weighted mean normalized
footrule similarity between its output and that list is recorded. The
trapezoidal area under the similarity-vs-sigma curve summarizes an
algorithm's robustness.

Random streams are derived from ``(seed, t, ranking_index)`` through
``numpy.random.SeedSequence`` feeding a ``PCG64`` generator, so a sweep is
reproducible bit for bit regardless of how noise levels are distributed
across worker processes.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .baselines import BaselineKind, run_baseline
from .errors import ConfigError, TooFewPoints, UnsortedPoints
from .merge import MergeConfig, aggregate
from .metrics import DistanceKind, weighted_mean_similarity
from .rankings import Ranking, RankingList

PROPOSED = "proposed"
ALL_ALGORITHMS = (PROPOSED,) + tuple(k.value for k in BaselineKind)


def normalize_algorithm(name: str) -> str:
    if str(name).lower() in (PROPOSED, "weighted", "weighted-merge"):
        return PROPOSED
    return BaselineKind.parse(name).value


def run_algorithm(name: str, inputs: RankingList, merge_cfg: MergeConfig | None = None) -> Ranking:
    """Consensus of ``inputs`` under the named algorithm (``"proposed"`` or a baseline)."""
    name = normalize_algorithm(name)
    if name == PROPOSED:
        return aggregate(inputs, merge_cfg).consensus
    return run_baseline(name, inputs)


def rng_stream(seed: int, t: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, t, index])))


def perturb_ranking(base: Ranking, sigma: float, rng: np.random.Generator) -> Ranking:
    """Add ``Normal(0, sigma)`` to each object's normalized position and re-sort."""
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    m = base.m
    pos = np.arange(1, m + 1)
    keys = pos / m
    if sigma > 0:
        keys = keys + rng.normal(0.0, sigma, size=m)
    order = np.lexsort((pos, keys))
    return Ranking(tuple(np.asarray(base.order)[order].tolist()))


def auc_trapezoid(points: Sequence[tuple[float, float]]) -> float:
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise TooFewPoints("the trapezoid rule needs at least two points")
    total = 0.0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not x1 > x0:
            raise UnsortedPoints(f"x must be strictly increasing ({x0} then {x1})")
        total += (x1 - x0) * (y0 + y1) / 2.0
    return total


@dataclass(frozen=True)
class SweepConfig:
    n_rankings: int = 20
    m_objects: int = 30
    iterations: int = 50
    sigma_step: float = 0.02
    seed: int = 0
    algorithms: tuple[str, ...] = ALL_ALGORITHMS
    merge_cfg: MergeConfig = field(default_factory=MergeConfig)

    def __post_init__(self) -> None:
        for name in ("n_rankings", "m_objects", "iterations"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(f"{name} must be a positive integer")
        if int(self.iterations) < 2:
            raise ConfigError("iterations must be at least 2 to form a curve")
        if not self.sigma_step > 0:
            raise ConfigError("sigma_step must be positive")
        if int(self.seed) < 0:
            raise ConfigError("seed must be a non-negative integer")
        algos = tuple(dict.fromkeys(normalize_algorithm(a) for a in self.algorithms))
        if not algos:
            raise ConfigError("no algorithms requested")
        object.__setattr__(self, "algorithms", algos)

    def sigmas(self) -> np.ndarray:
        return self.sigma_step * np.arange(1, self.iterations + 1)

    def describe(self) -> dict:
        return {
            "n_rankings": self.n_rankings, "m_objects": self.m_objects, "iterations": self.iterations,
            "sigma_step": self.sigma_step, "seed": self.seed, "algorithms": "+".join(self.algorithms),
            "alpha": self.merge_cfg.alpha, "tie_enum_cap": self.merge_cfg.tie_enum_cap,
            "distance": self.merge_cfg.distance.value, "noise": "gaussian-normalized-position",
            "rng": "PCG64(SeedSequence([seed,t,index]))",
        }


@dataclass
class SweepResult:
    config: SweepConfig
    curves: dict[str, list[tuple[float, float]]]
    auc: dict[str, float]


def noisy_list(cfg: SweepConfig, t: int) -> RankingList:
    base = Ranking(tuple(range(1, cfg.m_objects + 1)))
    sigma = t * cfg.sigma_step
    return RankingList([perturb_ranking(base, sigma, rng_stream(cfg.seed, t, i)) for i in range(cfg.n_rankings)])


def _level(cfg: SweepConfig, t: int) -> list[float]:
    inputs = noisy_list(cfg, t)
    return [
        weighted_mean_similarity(run_algorithm(a, inputs, cfg.merge_cfg), inputs, DistanceKind.FOOTRULE)
        for a in cfg.algorithms
    ]


def _worker_count(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get("RANKFUSE_THREADS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


def run_sweep(cfg: SweepConfig | None = None, workers: int | None = None,
              progress: Callable[[int], None] | None = None) -> SweepResult:
    """Run the full noise sweep; output does not depend on ``workers``."""
    cfg = cfg or SweepConfig()
    ts = range(1, cfg.iterations + 1)
    workers = min(_worker_count(workers), cfg.iterations)
    if workers == 1:
        rows = []
        for t in ts:
            rows.append(_level(cfg, t))
            if progress:
                progress(t)
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_level, [cfg] * cfg.iterations, ts))
    sigmas = cfg.sigmas().tolist()
    curves = {a: [(s, row[k]) for s, row in zip(sigmas, rows)] for k, a in enumerate(cfg.algorithms)}
    auc = {a: auc_trapezoid(pts) for a, pts in curves.items()}
    return SweepResult(cfg, curves, auc)
