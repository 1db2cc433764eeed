"""A small noise sweep.

Every ranking in a list of 20 is a noisy copy of the identity; noise grows
from sigma=0.02 to 1.0. We track how close each method's consensus stays to
the noisy inputs and summarize each curve by its area.

The default sweep uses 50 levels 0.02 apart; here 10 levels 0.1 apart
cover the same range faster.
"""

from rankfuse import SweepConfig, run_sweep

cfg = SweepConfig(iterations=10, sigma_step=0.1, algorithms=("proposed", "borda", "mean", "geometric", "voting", "mc4"))
result = run_sweep(cfg)

print("sigma    " + "  ".join(f"{a:>9}" for a in result.curves))
n_levels = len(next(iter(result.curves.values())))
for i in range(n_levels):
    sigma = next(iter(result.curves.values()))[i][0]
    print(f"{sigma:5.2f}    " + "  ".join(f"{pts[i][1]:9.4f}" for pts in result.curves.values()))

print("\nAUC")
for algo, auc in sorted(result.auc.items(), key=lambda kv: -kv[1]):
    print(f"  {algo:>9}  {auc:.4f}")
