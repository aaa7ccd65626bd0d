"""Mutant Distinguishment Graph construction and DOT rendering.

Nodes are the classes of M' sharing one full-suite d-vector; a node's kill
set is the set of tests killing its members. Edges form the Hasse diagram
of strict kill-set inclusion and are labeled with the tests that kill the
child but not the parent. Edge weight is the fraction of those tests that
detect the fault of interest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterator

import numpy as np

from .adequacy import ORIGINAL, extended_cells
from .model import KillMatrix


@dataclass(frozen=True)
class MdgNode:
    name: str
    members: tuple[int, ...]
    kill_set: frozenset[int]

    @property
    def is_root(self) -> bool:
        return not self.kill_set


@dataclass(frozen=True)
class MdgEdge:
    source: int
    target: int
    tests: tuple[int, ...]
    fault_fraction: float

    @property
    def thickness(self) -> float:
        return 1.0 + 9.0 * self.fault_fraction


@dataclass(frozen=True)
class Mdg:
    kill: KillMatrix
    nodes: tuple[MdgNode, ...]
    edges: tuple[MdgEdge, ...]
    root: int = 0

    def children(self, node: int) -> list[int]:
        return [e.target for e in self.edges if e.source == node]

    def edge(self, source: int, target: int) -> MdgEdge | None:
        for e in self.edges:
            if e.source == source and e.target == target:
                return e
        return None

    def node_by_name(self, name: str) -> int:
        for i, node in enumerate(self.nodes):
            if node.name == name:
                return i
        raise KeyError(name)

    def paths(self, source: int, target: int) -> Iterator[list[int]]:
        """Every directed path from ``source`` to ``target`` as a node list."""
        adj: dict[int, list[int]] = {}
        for e in self.edges:
            adj.setdefault(e.source, []).append(e.target)
        stack = [(source, [source])]
        while stack:
            node, path = stack.pop()
            if node == target:
                yield path
                continue
            for nxt in adj.get(node, ()):
                # kill sets grow strictly along edges, so prune non-supersets
                if self.nodes[nxt].kill_set <= self.nodes[target].kill_set:
                    stack.append((nxt, path + [nxt]))

    def reachable(self, source: int, target: int) -> bool:
        return next(self.paths(source, target), None) is not None


def _letters(k: int) -> str:
    name = ""
    k += 1
    while k:
        k, rem = divmod(k - 1, 26)
        name = chr(ord("A") + rem) + name
    return name


def build_mdg(kill: KillMatrix, fault_tests: Collection[int] = ()) -> Mdg:
    fault_tests = frozenset(int(t) for t in fault_tests)
    ext = extended_cells(kill)
    m = kill.n_mutants
    vectors, inverse = np.unique(ext.T, axis=0, return_inverse=True)
    inverse = inverse.ravel()

    groups: dict[int, list[int]] = {}
    for j, label in enumerate(inverse.tolist()):
        groups.setdefault(label, []).append(ORIGINAL if j == m else j)
    root_label = int(inverse[m])
    others = sorted((lab for lab in groups if lab != root_label), key=lambda lab: min(groups[lab]))
    labels = [root_label] + others

    nodes = [MdgNode("Root", tuple(sorted(groups[root_label])), frozenset())]
    for k, lab in enumerate(others):
        kill_set = frozenset(np.flatnonzero(vectors[lab]).tolist())
        nodes.append(MdgNode(_letters(k), tuple(groups[lab]), kill_set))

    sets = vectors[labels].astype(np.int32)  # node x test
    # subset[x, y]: kill_set(x) is a proper subset of kill_set(y)
    subset = (sets @ (1 - sets).T) == 0
    np.fill_diagonal(subset, False)
    s = subset.astype(np.int32)
    between = (s @ s) > 0
    hasse = subset & ~between

    edges = []
    for x, y in zip(*np.nonzero(hasse)):
        tests = tuple(sorted(nodes[y].kill_set - nodes[x].kill_set))
        frac = len(fault_tests.intersection(tests)) / len(tests)
        edges.append(MdgEdge(int(x), int(y), tests, frac))
    edges.sort(key=lambda e: (e.source, e.target))
    return Mdg(kill, tuple(nodes), tuple(edges), 0)


def chain_consistency(mdg: Mdg, x: int, y: int) -> bool:
    """Check that every path x -> y carries exactly kill_set(y) - kill_set(x)."""
    expected = mdg.nodes[y].kill_set - mdg.nodes[x].kill_set
    found = False
    for path in mdg.paths(x, y):
        found = True
        union: set[int] = set()
        for a, b in zip(path, path[1:]):
            union.update(mdg.edge(a, b).tests)
        if union != expected:
            return False
    if not found:
        raise ValueError(f"node {mdg.nodes[y].name} is not reachable from {mdg.nodes[x].name}")
    return True


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return '"' + escaped.replace("\n", "\\n") + '"'


def render_dot(mdg: Mdg, fault_tests: Collection[int] | None = None, original_name: str = "original") -> str:
    """DOT source for ``mdg``.

    Edge pen width is ``1 + 9 * fraction`` of fault-detecting tests on the
    edge; with ``fault_tests`` given the fractions are recomputed for it.
    """
    kill = mdg.kill
    lines = ["digraph MDG {", "  node [shape=box];"]
    for i, node in enumerate(mdg.nodes):
        names = [original_name if mm == ORIGINAL else kill.mutants[mm] for mm in node.members]
        label = node.name + "\n" + ", ".join(names)
        extra = ", style=bold" if node.is_root else ""
        lines.append(f"  n{i} [label={_quote(label)}{extra}];")
    for e in mdg.edges:
        frac = e.fault_fraction
        if fault_tests is not None:
            frac = len(frozenset(fault_tests).intersection(e.tests)) / len(e.tests)
        label = ",".join(kill.tests[t] for t in e.tests)
        width = 1.0 + 9.0 * frac
        lines.append(f"  n{e.source} -> n{e.target} [label={_quote(label)}, penwidth={width:g}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
