"""Why the censor is the whole game.

If a wing may announce its setting, reproducing the target statistics is
trivial: both wings learn both settings after one round and sample the
joint law from shared randomness. The cheat strategy does exactly that.
With the censor on, its very first emission is caught by counterfactual
replay.
"""

from bellgame import (
    ExperimentAborted,
    RunConfig,
    cheat_strategy,
    run_experiment,
)

cheat = cheat_strategy()
n = 50_000

print(f"censor OFF, n={n}:")
stats = run_experiment(RunConfig(censor_enabled=False), cheat, n, master_seed=7)
eq_same, eq_diff = stats.equal_setting_counts()
print(f"  equal settings, different colors: {eq_diff}")
print(f"  overall same-color fraction: {stats.overall_same_float:.4f} (target: 0.5)")
print("  the 'impossible' statistics, reproduced classically, once settings leak.\n")

print("censor ON:")
try:
    run_experiment(RunConfig(), cheat, n, master_seed=7)
except ExperimentAborted as aborted:
    v = aborted.violation
    print(f"  aborted after {aborted.completed_runs} runs")
    print(f"  wing {v.wing.value} caught in round {v.round}:")
    print(f"    payload under setting {int(v.setting_a)}: {v.payload_a[:4].hex()}...")
    print(f"    payload under setting {int(v.setting_b)}: {v.payload_b[:4].hex()}...")
    print("  the payloads differ only because the setting differs: censored.")
