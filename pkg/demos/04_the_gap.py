"""The gap, stated with confidence intervals.

Run the best-behaved classical strategy and the quantum source at the same
size and seed lineage, wrap both empirical fractions in Hoeffding intervals
at failure probability 1e-6, and watch the intervals separate.
"""

import sys

from bellgame import (
    RunConfig,
    bell_gap_report,
    negotiation_strategy,
    quantum_experiment,
    run_experiment,
)

n = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
seed = 2024

classical = run_experiment(RunConfig(), negotiation_strategy(), n, seed)
quantum = quantum_experiment(n, seed)

report = bell_gap_report(classical, quantum)
print(report.to_text())
print()
if report.disjoint and report.sufficient_power:
    print("no censor-compliant classical strategy can close this gap:")
    print("anything that always agrees on equal settings is pinned at or above 5/9.")
else:
    print(f"try a larger n (ran with n={n}); the gap needs enough statistics to show.")
