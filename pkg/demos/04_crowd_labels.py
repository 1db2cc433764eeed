"""Weighting crowd workers by a consensus ranking of their quality.

We simulate 9 workers of mixed ability labelling 500 binary items, rank
the workers on four quality features measured against the majority vote,
fuse those four rankings, and let better-ranked workers count for more.
"""

import numpy as np

from rankfuse import run_pipeline
from rankfuse.crowd import planted_crowd

labels, gold, ability = planted_crowd(n_workers=9, n_items=500, seed=2, ability_range=(0.5, 0.9))
report = run_pipeline(labels, gold)

print(f"majority vote accuracy   {report.majority_accuracy:.3f}")
print(f"weighted vote accuracy   {report.accuracy:.3f}")

print("\nworkers from best to worst, with true ability:")
for w in report.consensus_workers:
    print(f"  {w:>3}  {ability[w]:.2f}  weight {report.worker_weights[w]:.3f}")

pos = {w: k for k, w in enumerate(report.consensus_workers)}
workers = sorted(ability)
rho = np.corrcoef(np.argsort(np.argsort([ability[w] for w in workers])),
                  np.argsort(np.argsort([-pos[w] for w in workers])))[0, 1]
print(f"\nrank correlation with true ability: {rho:.3f}")
