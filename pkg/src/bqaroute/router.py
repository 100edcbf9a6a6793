"""SWAP-insertion router driven by a busy-qubits-avoid heuristic.

Gates are consumed in a fixed topological order. A two-qubit gate whose
operands are not coupled under the current layout triggers the searcher: it
scores every first/last shortest-path step as a hypothetical SWAP and picks
the cheapest until the operands are adjacent. The score has two parts:

  front   busiest-to-average ratio of the per-qubit time spent in the
          current subcircuit, after the hypothetical SWAP. Low means the
          SWAP latency hides behind work already running on other qubits.
  backend mean number of SWAPs the next ``lookahead`` CNOT gates would
          still need under the hypothetical layout. Penalizes SWAPs that
          break couplings future gates rely on.

A greedy baseline (always move the control one step toward the target) is
included for comparison, plus a replay verifier for routed outputs.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .chip import ChipError, CouplingGraph, DurationTable, shortest_first_last_steps
from .circuit import INSERTED_SWAP, Circuit, Gate
from .clocks import QubitClocks, apply_single, apply_two
from .dag import build_dag, topo_order
from .layout import Layout

# Candidate totals closer than this are ties, resolved by smallest edge.
# Mirrors the 1e-9 us clock tolerance; keeps the argmin stable when all
# durations are scaled by a common factor (scores are scale-free ratios,
# float noise is ~1e-15).
SCORE_TIE_TOL = 1e-9


class RouterInternalError(RuntimeError):
    """Candidate generation failed to make progress (internal bug guard)."""


class VerificationError(ValueError):
    """Routed circuit does not replay to the original program."""


class Decision(enum.Enum):
    EXECUTABLE = "executable"
    NEEDS_ROUTING = "needs-routing"


def discriminate(gate: Gate, layout: Layout, chip: CouplingGraph) -> Decision:
    """Executable iff single-qubit or mapped onto a coupling edge."""
    if not gate.is_two:
        return Decision.EXECUTABLE
    pc, pt = layout.log2phys[gate.control], layout.log2phys[gate.target]
    return Decision.EXECUTABLE if chip.has_edge(pc, pt) else Decision.NEEDS_ROUTING


class SubcircuitTracker:
    """State of the current subcircuit: which qubits it touched and the
    clock snapshot at its start. A subcircuit closes when a blocking
    two-qubit gate is fully resolved."""

    __slots__ = ("index", "active", "start_clock")

    def __init__(self, n: int):
        self.index = 0
        self.active: set[int] = set()
        self.start_clock: tuple[float, ...] = (0.0,) * n

    def touch(self, *qubits: int) -> None:
        self.active.update(qubits)

    def close(self, clocks: QubitClocks) -> None:
        self.index += 1
        self.active = set()
        self.start_clock = clocks.t

    def with_touched(self, *qubits: int) -> "SubcircuitTracker":
        """Copy for hypothetical scoring; the original is never mutated."""
        new = SubcircuitTracker.__new__(SubcircuitTracker)
        new.index = self.index
        new.active = self.active | set(qubits)
        new.start_clock = self.start_clock
        return new


@dataclass(frozen=True)
class CostBreakdown:
    front: float
    backend: float
    total: float

    @classmethod
    def of(cls, front: float, backend: float) -> "CostBreakdown":
        return cls(front=front, backend=backend, total=front + backend)


@dataclass
class RouterConfig:
    """Routing knobs.

    lookahead        how many upcoming CNOTs the backend cost scores (0 disables).
    swap_factor      overrides the duration table's factor when set.
    initial_layout   explicit logical->physical placement; identity when None.
    front_mean_scope "chip" averages subcircuit times over every chip qubit
                     (idle qubits count as zeros, which is what makes busy
                     SWAPs expensive); "active" averages touched qubits only.
    front_time_base  "subcircuit" measures times from the subcircuit start;
                     "absolute" uses the raw accumulated clocks.
    """

    lookahead: int = 20
    swap_factor: float | None = None
    initial_layout: Sequence[int] | None = None
    front_mean_scope: str = "chip"
    front_time_base: str = "subcircuit"

    def __post_init__(self):
        if self.lookahead < 0:
            raise ValueError(f"lookahead must be >= 0, got {self.lookahead}")
        if self.front_mean_scope not in ("chip", "active"):
            raise ValueError(f"front_mean_scope must be 'chip' or 'active', got {self.front_mean_scope!r}")
        if self.front_time_base not in ("subcircuit", "absolute"):
            raise ValueError(f"front_time_base must be 'subcircuit' or 'absolute', got {self.front_time_base!r}")


def front_cost(
    clocks: QubitClocks,
    tracker: SubcircuitTracker,
    mean_scope: str = "chip",
    time_base: str = "subcircuit",
) -> float:
    """Busiest-to-average time ratio within the current subcircuit.

    Returns 1.0 in the degenerate all-zero (or empty) subcircuit.
    """
    if not tracker.active:
        return 1.0
    if time_base == "subcircuit":
        times = [clocks.t[q] - tracker.start_clock[q] for q in range(len(clocks.t))]
    else:
        times = list(clocks.t)
    peak = max(times[q] for q in tracker.active)
    if peak <= 0.0:
        return 1.0
    if mean_scope == "active":
        mean = sum(times[q] for q in tracker.active) / len(tracker.active)
    else:
        mean = sum(times) / len(times)
    return peak / mean


def backend_cost(
    layout: Layout,
    chip: CouplingGraph,
    future_cnots: Sequence[tuple[int, int]],
    n: int | None = None,
) -> float:
    """Mean SWAP need of the upcoming CNOTs under a (hypothetical) layout.

    A CNOT on logical (c, t) needs dist(position(c), position(t)) - 1 SWAPs.
    Returns 0.0 for an empty window.
    """
    window = future_cnots if n is None else future_cnots[:n]
    if not window:
        return 0.0
    l2p, dist = layout.log2phys, chip.dist
    total = sum(dist[l2p[c]][l2p[t]] - 1 for c, t in window)
    return total / len(window)


@dataclass
class RouterState:
    """Read-only bundle the searcher scores candidates against."""

    chip: CouplingGraph
    dur: DurationTable
    cfg: RouterConfig
    layout: Layout
    clocks: QubitClocks
    tracker: SubcircuitTracker
    future_cnots: list[tuple[int, int]] = field(default_factory=list)


def score_candidate(edge: tuple[int, int], state: RouterState) -> CostBreakdown:
    """Cost of hypothetically SWAPping on ``edge``. Pure: state is unchanged."""
    p0, p1 = edge
    clocks = apply_two(state.clocks, p0, p1, state.dur.swap_us(p0, p1))
    layout = state.layout.copy()
    layout.swap_phys(p0, p1)
    tracker = state.tracker.with_touched(p0, p1)
    front = front_cost(clocks, tracker, state.cfg.front_mean_scope, state.cfg.front_time_base)
    backend = backend_cost(layout, state.chip, state.future_cnots)
    return CostBreakdown.of(front, backend)


@dataclass(frozen=True)
class BlockingEvent:
    """One blocking two-qubit gate: operand distance when it became pending
    and the SWAPs inserted to resolve it (always distance - 1)."""

    gate_id: int
    distance: int
    swaps: int


@dataclass(frozen=True)
class RoutedResult:
    circuit: Circuit
    final_layout: Layout
    swap_count: int
    makespan_us: float
    subcircuit_count: int
    per_qubit_us: tuple[float, ...]
    blocking_events: tuple[BlockingEvent, ...]


def _choose_bqa(state: RouterState, pending: tuple[int, int]) -> tuple[int, int]:
    """Argmin of the combined cost over first/last shortest-path steps;
    ties go to the lexicographically smallest edge."""
    pc, pt = state.layout.log2phys[pending[0]], state.layout.log2phys[pending[1]]
    candidates = shortest_first_last_steps(state.chip, pc, pt)
    best_edge, best_total = candidates[0], score_candidate(candidates[0], state).total
    for edge in candidates[1:]:
        total = score_candidate(edge, state).total
        if total < best_total - SCORE_TIE_TOL:
            best_edge, best_total = edge, total
    return best_edge


def _choose_greedy(state: RouterState, pending: tuple[int, int]) -> tuple[int, int]:
    """Cost-blind baseline: move the control qubit along the smallest
    distance-decreasing edge."""
    pc, pt = state.layout.log2phys[pending[0]], state.layout.log2phys[pending[1]]
    d = state.chip.dist[pc][pt]
    steps = [
        (min(pc, x), max(pc, x))
        for x in state.chip.adjacency[pc]
        if state.chip.dist[x][pt] == d - 1
    ]
    return min(steps)


def _route(
    c: Circuit,
    chip: CouplingGraph,
    dur: DurationTable,
    cfg: RouterConfig,
    choose: Callable[[RouterState, tuple[int, int]], tuple[int, int]],
) -> RoutedResult:
    if c.width > chip.n:
        raise ChipError(f"circuit width {c.width} exceeds chip size {chip.n}")
    if cfg.swap_factor is not None:
        dur = dur.with_swap_factor(cfg.swap_factor)
    dur.validate_against(chip)
    if cfg.initial_layout is not None:
        layout = Layout.from_partial(cfg.initial_layout, chip.n)
    else:
        layout = Layout.identity(chip.n)

    by_id = {g.id: g for g in c.gates}
    order = [by_id[i] for i in topo_order(build_dag(c))]
    cx_positions = [k for k, g in enumerate(order) if g.label == "cx"]

    clocks = QubitClocks.zeros(chip.n)
    tracker = SubcircuitTracker(chip.n)
    out: list[Gate] = []
    swap_count = 0
    events: list[BlockingEvent] = []
    state = RouterState(chip=chip, dur=dur, cfg=cfg, layout=layout, clocks=clocks, tracker=tracker)

    def emit(label: str, qubits: tuple[int, ...], origin: str) -> None:
        out.append(Gate(len(out), label, qubits, origin))

    for k, g in enumerate(order):
        if not g.is_two:
            p = layout.log2phys[g.qubit]
            clocks = apply_single(clocks, p, dur)
            tracker.touch(p)
            emit(g.label, (p,), g.origin)
            continue
        pc, pt = layout.log2phys[g.control], layout.log2phys[g.target]
        if not chip.has_edge(pc, pt):
            dist0 = chip.dist[pc][pt]
            # Lookahead window: the next CNOTs after the pending gate, in the
            # same fixed topological order.
            lo = bisect_right(cx_positions, k)
            state.future_cnots = [
                (order[p].control, order[p].target)
                for p in cx_positions[lo : lo + cfg.lookahead]
            ]
            swaps_here = 0
            while not chip.has_edge(pc, pt):
                state.clocks = clocks
                edge = choose(state, (g.control, g.target))
                p0, p1 = edge
                clocks = apply_two(clocks, p0, p1, dur.swap_us(p0, p1))
                layout.swap_phys(p0, p1)
                tracker.touch(p0, p1)
                emit("swap", edge, INSERTED_SWAP)
                swap_count += 1
                swaps_here += 1
                if swaps_here > chip.n * chip.n:
                    raise RouterInternalError(
                        f"gate {g.id}: {swaps_here} SWAPs without resolving; "
                        "candidate generation is broken"
                    )
                pc, pt = layout.log2phys[g.control], layout.log2phys[g.target]
            events.append(BlockingEvent(gate_id=g.id, distance=dist0, swaps=swaps_here))
            tracker.close(clocks)
        dur_us = dur.swap_us(pc, pt) if g.label == "swap" else dur.cnot(pc, pt)
        clocks = apply_two(clocks, pc, pt, dur_us)
        tracker.touch(pc, pt)
        emit(g.label, (pc, pt), g.origin)

    return RoutedResult(
        circuit=Circuit(chip.n, tuple(out)),
        final_layout=layout,
        swap_count=swap_count,
        makespan_us=clocks.makespan,
        subcircuit_count=tracker.index,
        per_qubit_us=clocks.t,
        blocking_events=tuple(events),
    )


def route(
    c: Circuit,
    chip: CouplingGraph,
    dur: DurationTable,
    cfg: RouterConfig | None = None,
) -> RoutedResult:
    """Route with the busy-qubits-avoid heuristic."""
    return _route(c, chip, dur, cfg or RouterConfig(), _choose_bqa)


def route_greedy_baseline(
    c: Circuit,
    chip: CouplingGraph,
    dur: DurationTable,
    cfg: RouterConfig | None = None,
) -> RoutedResult:
    """Route with the cost-blind control-toward-target baseline."""
    return _route(c, chip, dur, cfg or RouterConfig(), _choose_greedy)


def verify_routed(
    original: Circuit,
    routed: Circuit,
    chip: CouplingGraph,
    initial_layout: Sequence[int] | None = None,
) -> list[int]:
    """Replay a routed circuit against the original program.

    "swap" gates are interpreted as relabelings of the tracking layout (on
    both sides, so originals containing swap gates stay comparable); every
    other routed gate, translated physical->logical, must reproduce the
    original's per-qubit gate streams in program order. Returns the final
    physical->logical mapping table.

    Raises VerificationError naming the first mismatch, or any two-qubit
    gate that sits off a coupling edge.
    """
    if initial_layout is not None:
        layout = Layout.from_partial(initial_layout, chip.n)
    else:
        layout = Layout.identity(chip.n)

    want: dict[int, list[tuple[str, tuple[int, ...]]]] = {q: [] for q in range(chip.n)}
    relabel = list(range(original.width))
    for g in original.gates:
        if g.label == "swap" and g.is_two:
            a, b = g.qubits
            relabel[a], relabel[b] = relabel[b], relabel[a]
            continue
        qubits = tuple(relabel[q] for q in g.qubits)
        for q in qubits:
            want[q].append((g.label, qubits))

    seen: dict[int, int] = {q: 0 for q in range(chip.n)}
    for g in routed.gates:
        if g.is_two and not chip.has_edge(*g.qubits):
            raise VerificationError(
                f"routed gate {g.id} ({g.label}) acts on uncoupled qubits {g.qubits}"
            )
        if g.label == "swap" and g.is_two:
            layout.swap_phys(*g.qubits)
            continue
        logical = tuple(layout.phys2log[p] for p in g.qubits)
        for lq in logical:
            pos = seen[lq]
            if pos >= len(want[lq]):
                raise VerificationError(
                    f"routed gate {g.id} ({g.label} on logical {logical}): "
                    f"qubit {lq} has no further gates in the original"
                )
            if want[lq][pos] != (g.label, logical):
                raise VerificationError(
                    f"routed gate {g.id}: expected {want[lq][pos]} on qubit {lq}, "
                    f"got ({g.label!r}, {logical})"
                )
        for lq in logical:
            seen[lq] += 1

    for q in range(chip.n):
        if seen[q] != len(want[q]):
            raise VerificationError(
                f"qubit {q}: routed circuit replays {seen[q]} of {len(want[q])} gates"
            )
    return list(layout.phys2log)
