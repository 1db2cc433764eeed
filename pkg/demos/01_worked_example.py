"""Merging two nearly identical rankings, step by step.

Two reviewers agree on everything except how to order the top pair and the
middle pair. Merging their position scores leaves two tie groups, so four
candidate consensus rankings are possible; we score each against the
original rankings and keep the best.
"""

from rankfuse import RankingList, aggregate, overall_score, score_vector
from rankfuse.merge import merge_candidates

inputs = RankingList.from_orders([[1, 2, 4, 3, 5], [2, 1, 3, 4, 5]])
m = inputs.m

print("overall score by position:", [overall_score(m, k) for k in range(1, m + 1)])
for wr in inputs:
    sv = score_vector(wr.ranking)
    print(f"  {wr.ranking}  ->  {dict(sorted(sv.scores.items()))}")

print("\ncandidates after resolving ties:")
for cand, objective in merge_candidates(inputs[0], inputs[1], inputs):
    print(f"  {cand}   total footrule distance {objective:g}")

res = aggregate(inputs)
print(f"\nconsensus {res.consensus}, objective {res.objective:g}, weight {res.weight:.3f}")
