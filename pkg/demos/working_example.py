"""
Killing versus distinguishing mutants
=====================================

A three-test, four-mutant suite where one test kills everything yet tells
none of the mutants apart.
"""

import mutprio as mp

kill = mp.parse_matrix(
    "test,m1,m2,m3,m4\n"
    "t1,1,1,1,1\n"
    "t2,0,0,1,1\n"
    "t3,0,1,0,1\n"
)
print(kill)

###############################################################################
# A d-vector is a mutant's kill outcomes over an ordered list of tests.
for j, name in enumerate(kill.mutants):
    print(name, mp.dvector(kill, [0, 1, 2], j))
print("original", mp.dvector(kill, [0, 1, 2], mp.ORIGINAL))

###############################################################################
# t1 alone already kills every mutant...
print("k-adequate {t1}:", mp.is_k_adequate(kill, [0]))

# ...but every mutant still shares one d-vector, so only the original
# stands apart.
state = mp.distinguishment_state(kill, [0])
print("classes under {t1}:", state.classes, "unique:", state.unique_count)

###############################################################################
# The whole suite gives all five members of M' their own d-vector.
print("d-adequate {t1,t2,t3}:", mp.is_d_adequate(kill, [0, 1, 2]))
for prefix in ([], [0], [0, 1], [0, 1, 2]):
    print(f"  {len(prefix)} tests -> {mp.unique_count(kill, prefix)} unique")

###############################################################################
# Full-suite grouping: no equivalent or duplicated mutants here.
report = mp.indistinguishable_groups(kill)
print(report.to_json(kill))

###############################################################################
# Prioritization metrics for the ordering t1, t2, t3.
order = mp.Ordering((0, 1, 2))
print("APMK", round(mp.apmk(order, kill).value, 4))
print("APMD", round(mp.apmd(order, kill).value, 4))
