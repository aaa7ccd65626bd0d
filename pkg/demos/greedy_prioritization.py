"""
Additional-greedy prioritization
================================

GRK chases new kills, GRD chases new unique d-vectors and HYB-w blends the
two. We order a synthetic suite with each and score the orderings against
a handful of seeded faults.
"""

import numpy as np

import mutprio as mp

rng = np.random.default_rng(3)
n_tests, n_mutants, n_faults = 40, 300, 5
tests = tuple(f"t{i}" for i in range(n_tests))

kill = mp.KillMatrix(tests, tuple(f"m{j}" for j in range(n_mutants)), rng.random((n_tests, n_mutants)) < 0.06)

# faults behave like a few stubborn mutants: hard to reach, easy to miss
fault_cells = rng.random((n_tests, n_faults)) < 0.08
fault_cells[rng.integers(n_tests, size=n_faults), np.arange(n_faults)] = True
faults = mp.FaultMatrix(tests, tuple(f"f{j}" for j in range(n_faults)), fault_cells)

###############################################################################
# One ordering per technique, same seed for all.
configs = [mp.GreedyConfig("GRK"), mp.GreedyConfig("GRD")]
configs += [mp.GreedyConfig("HYB", w) for w in (0.1, 0.5, 0.9)]
configs.append(mp.GreedyConfig("RND"))

for cfg in configs:
    order = mp.prioritize_greedy(kill, cfg)
    print(
        f"{cfg.label:8s} first five {order.names(tests)[:5]}  "
        f"APFD {mp.apfd(order, faults).value:.3f}  "
        f"APMK {mp.apmk(order, kill).value:.3f}  "
        f"APMD {mp.apmd(order, kill).value:.3f}"
    )

###############################################################################
# The greedy loop resets once no remaining test adds anything. Here every
# mutant is killed by the first few tests, so the tail is ordered by a
# second (and third...) pass over what is left.
grk = mp.prioritize_greedy(kill, mp.GreedyConfig("GRK"))
seen = np.zeros(n_mutants, dtype=bool)
for rank, t in enumerate(grk.sequence[:12], start=1):
    gain = int(np.count_nonzero(kill.cells[t] & ~seen))
    seen |= kill.cells[t]
    print(f"rank {rank:2d}: {tests[t]:4s} +{gain} kills, {int(seen.sum())} total")
