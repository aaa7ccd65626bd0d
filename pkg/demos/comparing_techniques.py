"""
Comparing techniques over repeated runs
=======================================

Each technique is run many times with different seeds. Samples of APFD are
compared with the Mann-Whitney U test at alpha = 0.001 and the Vargha-Delaney
A12 effect size.
"""

import numpy as np

import mutprio as mp
from mutprio.rng import derive_seed

rng = np.random.default_rng(8)
n_tests, n_mutants = 60, 400
tests = tuple(f"t{i}" for i in range(n_tests))
kill = mp.KillMatrix(tests, tuple(f"m{j}" for j in range(n_mutants)), rng.random((n_tests, n_mutants)) < 0.04)
# two faults that the strongest killers tend to find
strength = kill.cells.sum(axis=1)
fault_cells = np.zeros((n_tests, 2), dtype=bool)
fault_cells[np.argsort(-strength)[:3], 0] = True
fault_cells[rng.integers(n_tests, size=4), 1] = True
faults = mp.FaultMatrix(tests, ("f1", "f2"), fault_cells)

###############################################################################
samples = {}
for k, tech in enumerate(("GRK", "GRD", "RND")):
    values = []
    for r in range(100):
        order = mp.prioritize_greedy(kill, mp.GreedyConfig(tech, seed=derive_seed(0, k, r)))
        values.append(mp.apfd(order, faults).value)
    samples[tech] = values
    print(f"{tech}: mean APFD {np.mean(values):.3f} (sd {np.std(values):.3f})")

###############################################################################
for a, b in (("GRK", "RND"), ("GRD", "RND"), ("GRK", "GRD")):
    v = mp.compare(samples[a], samples[b])
    print(f"{a} vs {b}: {v.outcome:9s} ({v.symbol})  p={v.p_value:.2e}  A12={v.a12:.2f}")

###############################################################################
# Across orderings, how closely does APMK track APFD?
apmk = [mp.apmk(mp.prioritize_greedy(kill, mp.GreedyConfig("RND", seed=s)), kill).value for s in range(100)]
apfd = [mp.apfd(mp.prioritize_greedy(kill, mp.GreedyConfig("RND", seed=s)), faults).value for s in range(100)]
print(f"Pearson {mp.pearson(apmk, apfd):.3f}, Spearman {mp.spearman(apmk, apfd):.3f}")
