import numpy as np
import pydot
import pytest
from hypothesis import given, settings

import oracles
from conftest import kill_matrix, random_rows
from mutprio.adequacy import ORIGINAL, kills
from mutprio.mdg import build_mdg, chain_consistency, render_dot
from strategies import kill_matrices

T1, T2, T3 = 0, 1, 2


def named_edges(g):
    return {(g.nodes[e.source].name, g.nodes[e.target].name): e for e in g.edges}


def test_working_example_topology(fix_a):
    g = build_mdg(fix_a, fault_tests={T3})
    assert [(n.name, n.members) for n in g.nodes] == [
        ("Root", (ORIGINAL,)), ("A", (0,)), ("B", (1,)), ("C", (2,)), ("D", (3,))
    ]
    edges = named_edges(g)
    assert {k: e.tests for k, e in edges.items()} == {
        ("Root", "A"): (T1,), ("A", "B"): (T3,), ("A", "C"): (T2,), ("B", "D"): (T2,), ("C", "D"): (T3,)
    }
    thick = {k for k, e in edges.items() if e.fault_fraction == 1}
    assert thick == {("A", "B"), ("C", "D")}
    assert all(edges[k].fault_fraction == 0 for k in edges.keys() - thick)
    assert edges[("A", "B")].thickness == 10.0


def test_working_example_chains(fix_a):
    g = build_mdg(fix_a)
    root, b, d = 0, g.node_by_name("B"), g.node_by_name("D")
    assert chain_consistency(g, root, b)
    assert chain_consistency(g, root, d)
    assert sorted(map(tuple, g.paths(root, d))) == [(0, 1, 2, 4), (0, 1, 3, 4)]
    with pytest.raises(ValueError):
        chain_consistency(g, b, g.node_by_name("C"))


def test_root_collects_unkilled_mutants():
    km = kill_matrix([[0, 1, 0, 1], [0, 1, 0, 0]])
    g = build_mdg(km)
    assert g.nodes[0].members == (ORIGINAL, 0, 2)
    assert g.nodes[0].is_root
    assert not any(e.target == 0 for e in g.edges)


def test_incomparable_kill_sets_share_parent():
    km = kill_matrix([[1, 0], [0, 1]])
    g = build_mdg(km)
    assert {(e.source, e.target) for e in g.edges} == {(0, 1), (0, 2)}


@settings(max_examples=200, deadline=None)
@given(kill_matrices(max_tests=5, max_cols=8))
def test_edges_are_the_cover_relation(km):
    g = build_mdg(km)
    sets = [n.kill_set for n in g.nodes]
    assert len(set(sets)) == len(sets)
    assert {(e.source, e.target) for e in g.edges} == oracles.hasse_edges(sets)
    for e in g.edges:
        assert set(e.tests) == sets[e.target] - sets[e.source]


@settings(max_examples=100, deadline=None)
@given(kill_matrices(max_tests=5, max_cols=8))
def test_node_members_share_kill_sets(km):
    g = build_mdg(km)
    members = sorted(x for n in g.nodes for x in n.members)
    assert members == [ORIGINAL] + list(range(km.n_mutants))
    for n in g.nodes:
        for x in n.members:
            if x != ORIGINAL:
                assert n.kill_set == frozenset(t for t in range(km.n_tests) if km.cells[t, x])


def test_edge_tests_distinguish_endpoints():
    rng = np.random.default_rng(6)
    km = kill_matrix(random_rows(rng, 6, 15, 0.3))
    g = build_mdg(km)
    for e in g.edges:
        child = g.nodes[e.target].members[0]
        parent = g.nodes[e.source].members[0]
        for t in e.tests:
            assert kills(km, [t], child) and not kills(km, [t], parent)


def test_chain_consistency_on_random_graphs():
    rng = np.random.default_rng(12)
    for _ in range(30):
        g = build_mdg(kill_matrix(random_rows(rng, 6, 12, 0.35)))
        for x in range(len(g.nodes)):
            for y in range(len(g.nodes)):
                if x != y and g.reachable(x, y):
                    assert chain_consistency(g, x, y)


def test_dot_output(fix_a):
    dot = render_dot(build_mdg(fix_a, {T3}))
    (graph,) = pydot.graph_from_dot_data(dot)
    nodes = [n for n in graph.get_nodes() if n.get_name()[1:].isdigit()]
    assert len(nodes) == 5
    edges = graph.get_edges()
    assert len(edges) == 5
    widths = sorted(float(e.get("penwidth")) for e in edges)
    assert widths == [1, 1, 1, 10, 10]
    assert '"Root\\noriginal"' in dot


def test_dot_fault_override(fix_a):
    dot = render_dot(build_mdg(fix_a, {T3}), fault_tests={T2})
    (graph,) = pydot.graph_from_dot_data(dot)
    thick = {(e.get_source(), e.get_destination()) for e in graph.get_edges() if float(e.get("penwidth")) == 10}
    assert thick == {("n1", "n3"), ("n2", "n4")}
