"""Per-qubit time accumulation and the makespan simulator.

Single-qubit gates add their duration to one qubit's clock. Two-qubit gates
synchronize: both clocks become max(t_i, t_j) + duration. The makespan of a
circuit is the largest per-qubit clock after folding all gates; it is
invariant under any dependency-respecting reordering of the gate list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chip import CouplingGraph, DurationTable
from .circuit import Circuit
from .layout import Layout


class UnroutedGateError(ValueError):
    """A two-qubit gate landed on uncoupled physical qubits (unrouted input)."""


@dataclass(frozen=True)
class QubitClocks:
    """Accumulated busy time per physical qubit, in microseconds."""

    t: tuple[float, ...]

    @classmethod
    def zeros(cls, n: int) -> "QubitClocks":
        return cls((0.0,) * n)

    @property
    def makespan(self) -> float:
        return max(self.t, default=0.0)


def apply_single(clocks: QubitClocks, q: int, dur: DurationTable) -> QubitClocks:
    """Accumulate a single-qubit gate on q; other clocks unchanged."""
    if not 0 <= q < len(clocks.t):
        raise ValueError(f"qubit {q} out of range for {len(clocks.t)} clocks")
    t = list(clocks.t)
    t[q] += dur.single(q)
    return QubitClocks(tuple(t))


def apply_two(clocks: QubitClocks, i: int, j: int, dur_us: float) -> QubitClocks:
    """Accumulate a two-qubit gate: both clocks become max(t_i, t_j) + dur_us."""
    if i == j:
        raise ValueError(f"two-qubit accumulation needs distinct qubits, got {i},{j}")
    t = list(clocks.t)
    t[i] = t[j] = max(t[i], t[j]) + dur_us
    return QubitClocks(tuple(t))


@dataclass(frozen=True)
class ScheduleReport:
    makespan_us: float
    per_qubit_us: tuple[float, ...]


def simulate(
    c: Circuit,
    chip: CouplingGraph,
    dur: DurationTable,
    layout: Layout | None = None,
) -> ScheduleReport:
    """Fold the clock model over c's gates in program order.

    Gate qubits are mapped through ``layout`` (identity if None); every
    two-qubit gate must land on a chip edge. "swap"-labeled gates cost
    swap_us, other two-qubit gates cost cnot_us, singles cost single_us.
    """
    if layout is None:
        layout = Layout.identity(chip.n)
    if c.width > chip.n:
        raise ValueError(f"circuit width {c.width} exceeds chip size {chip.n}")
    clocks = QubitClocks.zeros(chip.n)
    for g in c.gates:
        if g.is_two:
            pi, pj = layout.log2phys[g.control], layout.log2phys[g.target]
            if not chip.has_edge(pi, pj):
                raise UnroutedGateError(
                    f"gate {g.id} ({g.label}) acts on uncoupled qubits ({pi},{pj})"
                )
            dur_us = dur.swap_us(pi, pj) if g.label == "swap" else dur.cnot(pi, pj)
            clocks = apply_two(clocks, pi, pj, dur_us)
        else:
            clocks = apply_single(clocks, layout.log2phys[g.qubit], dur)
    return ScheduleReport(makespan_us=clocks.makespan, per_qubit_us=clocks.t)
