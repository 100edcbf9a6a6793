"""Physical chip model: coupling graph, gate durations, topology builders.

Chip file format (UTF-8, one directive per line, '#' starts a comment):

    qubits <N>                 header, must come first
    default_single_us <f>      fallback single-qubit gate time
    default_cnot_us <f>        fallback per-edge CNOT time
    swap_factor <f>            swap_us(e) = swap_factor * cnot_us(e), default 3.0
    edge <a> <b> [cnot_us]     coupling edge, optional per-edge CNOT time
    single <q> <f>             per-qubit single-gate time override

Built-in topologies are addressable as "linear:<n>", "ladder:<n>" and
"square:<r>x<c>"; they carry uniform default durations (0.1 us singles,
0.5 us CNOTs, swap factor 3) matching the 3-CNOT swap decomposition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from pathlib import Path

from .circuit import ParseError

DEFAULT_SINGLE_US = 0.1
DEFAULT_CNOT_US = 0.5
DEFAULT_SWAP_FACTOR = 3.0


class ChipError(ValueError):
    """Invalid chip description (bad topology, missing or non-positive durations)."""


def _canon(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class CouplingGraph:
    """Undirected, connected coupling graph with precomputed hop distances."""

    n: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[tuple[int, ...], ...]
    dist: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "CouplingGraph":
        if n < 1:
            raise ChipError(f"chip needs at least 1 qubit, got {n}")
        canon: set[tuple[int, int]] = set()
        for a, b in edges:
            if a == b:
                raise ChipError(f"self-loop on qubit {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ChipError(f"edge ({a},{b}) references unknown qubit (n={n})")
            canon.add(_canon(a, b))
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in canon:
            adj[a].append(b)
            adj[b].append(a)
        adjacency = tuple(tuple(sorted(ns)) for ns in adj)
        dist = tuple(_bfs_row(adjacency, src, n) for src in range(n))
        if n > 1 and any(d < 0 for d in dist[0]):
            raise ChipError("coupling graph is disconnected")
        return cls(n=n, edges=frozenset(canon), adjacency=adjacency, dist=dist)

    def has_edge(self, a: int, b: int) -> bool:
        return _canon(a, b) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def diameter(self) -> int:
        return max(max(row) for row in self.dist)


def _bfs_row(adjacency, src: int, n: int) -> tuple[int, ...]:
    row = [-1] * n
    row[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adjacency[u]:
            if row[v] < 0:
                row[v] = row[u] + 1
                q.append(v)
    return tuple(row)


@dataclass(frozen=True)
class DurationTable:
    """Per-qubit single-gate times and per-edge CNOT times, in microseconds.

    SWAP duration is derived, never stored: swap_us(e) = swap_factor * cnot_us(e).
    CNOT durations are direction-symmetric (keyed on canonical edges).
    """

    single_us_per_qubit: tuple[float, ...]
    cnot_us_per_edge: dict[tuple[int, int], float]
    swap_factor: float = DEFAULT_SWAP_FACTOR

    def __post_init__(self):
        if self.swap_factor <= 0:
            raise ChipError(f"swap_factor must be > 0, got {self.swap_factor}")
        for q, t in enumerate(self.single_us_per_qubit):
            if t <= 0:
                raise ChipError(f"single-gate time on qubit {q} must be > 0, got {t}")
        for e, t in self.cnot_us_per_edge.items():
            if t <= 0:
                raise ChipError(f"CNOT time on edge {e} must be > 0, got {t}")

    @classmethod
    def uniform(
        cls,
        graph: CouplingGraph,
        single_us: float = DEFAULT_SINGLE_US,
        cnot_us: float = DEFAULT_CNOT_US,
        swap_factor: float = DEFAULT_SWAP_FACTOR,
    ) -> "DurationTable":
        return cls(
            single_us_per_qubit=(single_us,) * graph.n,
            cnot_us_per_edge={e: cnot_us for e in graph.edges},
            swap_factor=swap_factor,
        )

    def single(self, q: int) -> float:
        return self.single_us_per_qubit[q]

    def cnot(self, a: int, b: int) -> float:
        try:
            return self.cnot_us_per_edge[_canon(a, b)]
        except KeyError:
            raise ChipError(f"no CNOT duration for edge ({a},{b})") from None

    def swap_us(self, a: int, b: int) -> float:
        return self.swap_factor * self.cnot(a, b)

    def with_swap_factor(self, factor: float) -> "DurationTable":
        return replace(self, swap_factor=factor)

    def scaled(self, factor: float) -> "DurationTable":
        """All durations multiplied by a common positive factor."""
        if factor <= 0:
            raise ChipError(f"scale factor must be > 0, got {factor}")
        return DurationTable(
            single_us_per_qubit=tuple(t * factor for t in self.single_us_per_qubit),
            cnot_us_per_edge={e: t * factor for e, t in self.cnot_us_per_edge.items()},
            swap_factor=self.swap_factor,
        )

    def validate_against(self, graph: CouplingGraph) -> None:
        if len(self.single_us_per_qubit) != graph.n:
            raise ChipError(
                f"single-gate table covers {len(self.single_us_per_qubit)} qubits, chip has {graph.n}"
            )
        if set(self.cnot_us_per_edge) != graph.edges:
            raise ChipError("CNOT duration table does not match the chip edge set")


def make_linear(n: int) -> CouplingGraph:
    """Path graph: qubits coupled one by one, first to last."""
    if n < 2:
        raise ChipError(f"linear topology needs n >= 2, got {n}")
    return CouplingGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_ladder(n: int) -> CouplingGraph:
    """Path folded in the middle: qubit i also coupled to qubit n-1-i."""
    if n < 4 or n % 2:
        raise ChipError(f"ladder topology needs even n >= 4, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(i, n - 1 - i) for i in range(n // 2)]
    return CouplingGraph.from_edges(n, edges)


def make_square(rows: int, cols: int) -> CouplingGraph:
    """Grid graph: qubit (r,c) = r*cols + c, coupled to its 4-neighborhood."""
    if rows < 2 or cols < 2:
        raise ChipError(f"square topology needs rows,cols >= 2, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((r * cols + c, r * cols + c + 1))
            if r + 1 < rows:
                edges.append((r * cols + c, (r + 1) * cols + c))
    return CouplingGraph.from_edges(rows * cols, edges)


def load_chip(text: str) -> tuple[CouplingGraph, DurationTable]:
    """Parse chip file text into a graph plus duration table."""
    n: int | None = None
    default_single: float | None = None
    default_cnot: float | None = None
    swap_factor = DEFAULT_SWAP_FACTOR
    edge_times: dict[tuple[int, int], float | None] = {}
    single_times: dict[int, float] = {}

    def parse_num(lineno, token, kind=float):
        try:
            return kind(token)
        except ValueError:
            raise ParseError(lineno, f"expected a number, got {token!r}") from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        if n is None:
            if key != "qubits" or len(tokens) != 2:
                raise ParseError(lineno, f"expected 'qubits <N>' header, got {line!r}")
            n = parse_num(lineno, tokens[1], int)
            if n < 1:
                raise ParseError(lineno, f"qubit count must be >= 1, got {n}")
            continue
        if key == "default_single_us" and len(tokens) == 2:
            default_single = parse_num(lineno, tokens[1])
        elif key == "default_cnot_us" and len(tokens) == 2:
            default_cnot = parse_num(lineno, tokens[1])
        elif key == "swap_factor" and len(tokens) == 2:
            swap_factor = parse_num(lineno, tokens[1])
        elif key == "edge" and len(tokens) in (3, 4):
            a = parse_num(lineno, tokens[1], int)
            b = parse_num(lineno, tokens[2], int)
            if not (0 <= a < n and 0 <= b < n):
                raise ParseError(lineno, f"edge ({a},{b}) references unknown qubit")
            t = parse_num(lineno, tokens[3]) if len(tokens) == 4 else None
            edge_times[_canon(a, b)] = t
        elif key == "single" and len(tokens) == 3:
            q = parse_num(lineno, tokens[1], int)
            if not 0 <= q < n:
                raise ParseError(lineno, f"qubit {q} out of range")
            single_times[q] = parse_num(lineno, tokens[2])
        else:
            raise ParseError(lineno, f"unrecognized chip directive {line!r}")
    if n is None:
        raise ParseError(1, "missing 'qubits <N>' header")

    graph = CouplingGraph.from_edges(n, edge_times.keys())
    cnot_us: dict[tuple[int, int], float] = {}
    for e, t in edge_times.items():
        if t is None:
            if default_cnot is None:
                raise ChipError(f"edge {e} has no CNOT time and no default_cnot_us was given")
            t = default_cnot
        cnot_us[e] = t
    singles = []
    for q in range(n):
        t = single_times.get(q, default_single)
        if t is None:
            raise ChipError(f"qubit {q} has no single-gate time and no default_single_us was given")
        singles.append(t)
    dur = DurationTable(tuple(singles), cnot_us, swap_factor)
    dur.validate_against(graph)
    return graph, dur


def chip_from_spec(
    spec: str,
    single_us: float = DEFAULT_SINGLE_US,
    cnot_us: float = DEFAULT_CNOT_US,
    swap_factor: float = DEFAULT_SWAP_FACTOR,
) -> tuple[CouplingGraph, DurationTable]:
    """Resolve a CLI chip reference: builtin "linear:<n>" / "ladder:<n>" /
    "square:<r>x<c>", or a path to a chip file."""
    kind, _, arg = spec.partition(":")
    if kind == "linear" and arg:
        graph = make_linear(int(arg))
    elif kind == "ladder" and arg:
        graph = make_ladder(int(arg))
    elif kind == "square" and arg:
        r, _, c = arg.partition("x")
        graph = make_square(int(r), int(c))
    else:
        return load_chip(Path(spec).read_text(encoding="utf-8"))
    return graph, DurationTable.uniform(graph, single_us, cnot_us, swap_factor)


def shortest_first_last_steps(g: CouplingGraph, a: int, b: int) -> list[tuple[int, int]]:
    """Candidate SWAP edges for routing a gate on (a, b): the first and last
    hops of all shortest paths between them.

    Every returned edge, used as a SWAP, reduces the hop distance between the
    gate's operands by exactly 1. Deduplicated, ordered by (min, max) qubit.
    """
    d = g.dist[a][b]
    if d <= 1:
        raise ChipError(f"qubits {a},{b} at distance {d} need no routing")
    out = set()
    for x in g.adjacency[a]:
        if g.dist[x][b] == d - 1:
            out.add(_canon(a, x))
    for y in g.adjacency[b]:
        if g.dist[a][y] == d - 1:
            out.add(_canon(y, b))
    return sorted(out)
