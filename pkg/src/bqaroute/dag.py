"""Gate-dependency DAG and deterministic topological ordering.

Edges are per-shared-qubit immediate-predecessor edges: (a, b) is present
iff a is the most recent earlier gate sharing a qubit with b on that qubit.
Their transitive closure equals program-order dependence on shared qubits.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .circuit import Circuit


@dataclass(frozen=True)
class GateDag:
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    frontier: frozenset[int]


def build_dag(c: Circuit) -> GateDag:
    """Dependency DAG of a circuit; frontier holds gates with no predecessor."""
    last_on_qubit: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()
    frontier: list[int] = []
    for g in c.gates:
        deps = {last_on_qubit[q] for q in g.qubits if q in last_on_qubit}
        if not deps:
            frontier.append(g.id)
        for d in deps:
            edges.add((d, g.id))
        for q in g.qubits:
            last_on_qubit[q] = g.id
    return GateDag(
        nodes=tuple(g.id for g in c.gates),
        edges=tuple(sorted(edges)),
        frontier=frozenset(frontier),
    )


def topo_order(d: GateDag) -> list[int]:
    """Kahn's algorithm with an ordered frontier: ties broken by smallest id.

    Raises ValueError if the edge set contains a cycle.
    """
    indeg = {n: 0 for n in d.nodes}
    succs: dict[int, list[int]] = {n: [] for n in d.nodes}
    for a, b in d.edges:
        indeg[b] += 1
        succs[a].append(b)
    ready = [n for n in d.nodes if indeg[n] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        n = heapq.heappop(ready)
        order.append(n)
        for s in succs[n]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(ready, s)
    if len(order) != len(d.nodes):
        raise ValueError("cycle detected in gate DAG")
    return order
