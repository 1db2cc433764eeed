"""How the classical aggregators disagree on a small contested list.

Five voters rank six candidates. The positional methods (Borda, mean and
geometric rank) usually agree; the Markov-chain and order-statistic methods
can reorder the middle of the pack. The hierarchical merge is order
sensitive: voter five's lone first-place vote for 6 survives into the
consensus because it is merged in last, carrying its full weight of 1 against a
cluster of the other four whose weight has decayed to about 0.77.
"""

from rankfuse import RankingList, aggregate, run_baseline, weighted_total_distance
from rankfuse.baselines import BaselineKind

inputs = RankingList.from_orders([
    [1, 2, 3, 4, 5, 6],
    [2, 1, 4, 3, 6, 5],
    [3, 1, 2, 6, 4, 5],
    [1, 3, 2, 5, 6, 4],
    [6, 2, 1, 3, 4, 5],
])

rows = [("proposed", aggregate(inputs).consensus)]
rows += [(kind.value, run_baseline(kind, inputs)) for kind in BaselineKind]
for name, consensus in rows:
    print(f"{name:>10}  {consensus}   objective {weighted_total_distance(consensus, inputs):g}")
