"""Slow, literal implementations used as test oracles."""

import itertools
import math

from rankfuse.metrics import DistanceKind, distance, normalized_similarity
from rankfuse.rankings import Ranking, RankingList
from rankfuse.scores import merge_scores, score_vector


def total_distance(candidate, inputs, kind=DistanceKind.FOOTRULE):
    return sum(wr.weight * distance(wr.ranking, candidate, kind) for wr in inputs)


def exhaustive_median(inputs, kind=DistanceKind.FOOTRULE):
    """Best objective over all m! rankings and one ranking attaining it."""
    best, arg = math.inf, None
    for perm in itertools.permutations(sorted(inputs.universe)):
        cand = Ranking(perm)
        val = total_distance(cand, inputs, kind)
        if val < best:
            best, arg = val, cand
    return best, arg


def naive_aggregate(inputs, alpha=0.5, cap=720, kind=DistanceKind.FOOTRULE):
    """Direct transcription of the merge procedure on Python objects."""
    mean_w = sum(wr.weight for wr in inputs) / len(inputs)
    total_w = sum(wr.weight for wr in inputs)
    pool = [(wr.ranking, wr.weight) for wr in inputs]
    while len(pool) > 1:
        best = None
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                s = normalized_similarity(pool[i][0], pool[j][0], kind)
                if best is None or s > best[0] + 1e-12:
                    best = (s, i, j)
        _, i, j = best
        (ra, wa), (rb, wb) = pool[i], pool[j]
        merged = merge_scores(score_vector(ra), wa, score_vector(rb), wb).scores
        objs = sorted(merged, key=lambda o: (-merged[o], o))
        groups, cur = [], [objs[0]]
        for o in objs[1:]:
            if abs(merged[o] - merged[cur[-1]]) <= 1e-9 * max(1.0, abs(merged[o])):
                cur.append(o)
            else:
                groups.append(cur)
                cur = [o]
        groups.append(cur)
        n_cand = math.prod(math.factorial(len(g)) for g in groups)
        if n_cand > cap:
            chosen = Ranking(tuple(objs))
        else:
            cands = [Ranking(tuple(itertools.chain.from_iterable(c)))
                     for c in itertools.product(*(itertools.permutations(g) for g in groups))]
            scored = [(total_distance(c, inputs, kind), c.order) for c in cands]
            low = min(v for v, _ in scored)
            chosen = Ranking(min(o for v, o in scored if v <= low + 1e-9 * max(1.0, low)))
        fit = sum(wr.weight * normalized_similarity(chosen, wr.ranking, kind) for wr in inputs) / total_w
        weight = alpha * (wa + wb) / 2 + (1 - alpha) * fit * mean_w
        pool[i] = (chosen, weight)
        del pool[j]
    return pool[0]


def brute_kendall(a: Ranking, b: Ranking) -> int:
    pa = {o: k for k, o in enumerate(a.order)}
    pb = {o: k for k, o in enumerate(b.order)}
    objs = list(a.order)
    return sum(
        1
        for x, y in itertools.combinations(objs, 2)
        if (pa[x] - pa[y]) * (pb[x] - pb[y]) < 0
    )


def brute_footrule(a: Ranking, b: Ranking) -> int:
    pb = {o: k for k, o in enumerate(b.order)}
    return sum(abs(k - pb[o]) for k, o in enumerate(a.order))


def random_list(rng, n, m, weights=None):
    orders = [rng.permutation(m) + 1 for _ in range(n)]
    return RankingList.from_orders(orders, weights)
