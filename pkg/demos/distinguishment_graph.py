"""
Mutant Distinguishment Graph
============================

Nodes group mutants that no test tells apart; an edge runs from a node to
each node whose kill set is a minimal strict superset, labeled with the
tests that make the difference. Edges carrying fault-detecting tests are
drawn thicker.
"""

import mutprio as mp

kill = mp.parse_matrix("test,m1,m2,m3,m4\nt1,1,1,1,1\nt2,0,0,1,1\nt3,0,1,0,1\n")
t3 = kill.test_index("t3")  # assume t3 is the one that reveals the fault
graph = mp.build_mdg(kill, fault_tests={t3})

for node in graph.nodes:
    members = ["original" if m == mp.ORIGINAL else kill.mutants[m] for m in node.members]
    print(node.name, members, sorted(kill.tests[t] for t in node.kill_set))
for e in graph.edges:
    print(f"{graph.nodes[e.source].name} -> {graph.nodes[e.target].name}  "
          f"{[kill.tests[t] for t in e.tests]}  thickness {e.thickness:g}")

###############################################################################
# Every path between two nodes collects exactly the tests separating them.
d = graph.node_by_name("D")
for path in graph.paths(graph.root, d):
    print(" -> ".join(graph.nodes[i].name for i in path))
print("consistent:", mp.chain_consistency(graph, graph.root, d))

###############################################################################
# DOT text, ready for Graphviz.
print(mp.render_dot(graph))
