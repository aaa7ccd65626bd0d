"""
Searching for orderings with NSGA-II
====================================

APMK and APMD pull in different directions: an ordering that kills fast
does not necessarily tell mutants apart fast. NSGA-II keeps the trade-off
as a Pareto front; MOK and MOD pick one end of it each.
"""

import numpy as np

import mutprio as mp

rng = np.random.default_rng(11)
n_tests, n_mutants = 15, 80
kill = mp.KillMatrix(
    tuple(f"t{i}" for i in range(n_tests)),
    tuple(f"m{j}" for j in range(n_mutants)),
    rng.random((n_tests, n_mutants)) < 0.1,
)

config = mp.MooConfig(population_size=40, max_evaluations=8000, seed=5)
front = mp.nsga2(kill, config)
print(f"{front.generations} generations, {front.evaluations} evaluations")

###############################################################################
# The final front, sorted by APMK.
for ordering, fit in sorted(front, key=lambda m: -m[1].apmk):
    print(f"APMK {fit.apmk:.4f}  APMD {fit.apmd:.4f}  starts {ordering.names(kill.tests)[:4]}")

###############################################################################
# MOK and MOD choose from the front; greedy orderings give a reference point.
for name, pick in (("MOK", mp.select_mok), ("MOD", mp.select_mod)):
    o = pick(front, mp.SplitMix64(1))
    print(name, round(mp.apmk(o, kill).value, 4), round(mp.apmd(o, kill).value, 4))
for tech in ("GRK", "GRD"):
    o = mp.prioritize_greedy(kill, mp.GreedyConfig(tech))
    print(tech, round(mp.apmk(o, kill).value, 4), round(mp.apmd(o, kill).value, 4))

###############################################################################
# Elitism: the best value of each objective never drops.
best_k = [f.apmk for f in front.best_history]
print("best APMK at generations 0, 10, 50, end:", [round(best_k[i], 4) for i in (0, 10, 50, -1)])
