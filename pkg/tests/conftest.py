"""Shared test helpers: independent oracles and small random generators.

The oracles here deliberately avoid the library's own code paths: distances
via Floyd-Warshall instead of BFS, makespans via explicit gate start/end
intervals instead of clock folding, and shortest-path steps via exhaustive
path enumeration.
"""

import random

from bqaroute import Circuit, make_circuit


def floyd_warshall(n, edges):
    """All-pairs hop distances by the classic triple loop."""
    INF = float("inf")
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for a, b in edges:
        d[a][b] = d[b][a] = 1
    for k in range(n):
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            for j in range(n):
                if dik + d[k][j] < d[i][j]:
                    d[i][j] = dik + d[k][j]
    return d


def event_schedule(c: Circuit, chip, dur, log2phys=None):
    """Event-driven makespan oracle: each gate starts when all its operands
    are ready and occupies them for its duration. Returns (makespan, ready)."""
    l2p = list(range(chip.n)) if log2phys is None else list(log2phys)
    ready = [0.0] * chip.n
    makespan = 0.0
    for g in c.gates:
        phys = [l2p[q] for q in g.qubits]
        if g.is_two:
            dur_us = dur.swap_us(*phys) if g.label == "swap" else dur.cnot(*phys)
        else:
            dur_us = dur.single(phys[0])
        start = max(ready[p] for p in phys)
        end = start + dur_us
        for p in phys:
            ready[p] = end
        makespan = max(makespan, end)
    return makespan, ready


def enumerate_shortest_first_last(n, edges, dist, a, b):
    """First and last edges over ALL shortest paths from a to b, by explicit
    depth-first enumeration along distance-decreasing moves."""
    adj = {i: set() for i in range(n)}
    for x, y in edges:
        adj[x].add(y)
        adj[y].add(x)
    paths = []

    def walk(path):
        u = path[-1]
        if u == b:
            paths.append(list(path))
            return
        for v in adj[u]:
            if dist[v][b] == dist[u][b] - 1:
                walk(path + [v])

    walk([a])
    first = {tuple(sorted(p[:2])) for p in paths}
    last = {tuple(sorted(p[-2:])) for p in paths}
    return first | last


def random_connected_edges(rng: random.Random, n: int, extra: int = 3):
    """Random spanning tree plus a few extra edges."""
    nodes = list(range(n))
    rng.shuffle(nodes)
    edges = set()
    for i in range(1, n):
        edges.add(tuple(sorted((nodes[i], rng.choice(nodes[:i])))))
    for _ in range(extra):
        a, b = rng.sample(range(n), 2)
        edges.add(tuple(sorted((a, b))))
    return edges


def random_topo_order(rng: random.Random, c: Circuit):
    """Random valid topological order of a circuit's gates (randomized Kahn)."""
    succs = {g.id: [] for g in c.gates}
    last = {}
    for g in c.gates:
        for q in g.qubits:
            if q in last and last[q] != g.id:
                succs[last[q]].append(g.id)
            last[q] = g.id
    indeg = {g.id: 0 for g in c.gates}
    for k in succs:
        succs[k] = list(dict.fromkeys(succs[k]))
        for v in succs[k]:
            indeg[v] += 1
    ready = [gid for gid, d in indeg.items() if d == 0]
    out = []
    while ready:
        gid = ready.pop(rng.randrange(len(ready)))
        out.append(gid)
        for s in succs[gid]:
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)
    assert len(out) == len(c.gates)
    return out


def reorder_circuit(c: Circuit, order) -> Circuit:
    from bqaroute import Gate

    by_id = {g.id: g for g in c.gates}
    return Circuit(
        c.width,
        tuple(Gate(i, by_id[gid].label, by_id[gid].qubits) for i, gid in enumerate(order)),
    )


def rand_circuit(rng: random.Random, width: int, gates: int, p_cx: float) -> Circuit:
    """Plain-random circuit builder, independent of the workloads module."""
    ops = []
    for _ in range(gates):
        if rng.random() < p_cx and width >= 2:
            c, t = rng.sample(range(width), 2)
            ops.append(("cx", c, t))
        else:
            ops.append(("u", rng.randrange(width)))
    return make_circuit(width, ops)
