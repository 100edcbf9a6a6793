"""bqaroute: SWAP-insertion routing that hides swap latency on idle qubits,
plus a per-qubit clock makespan simulator and experiment harness."""

from .chip import (
    CouplingGraph,
    ChipError,
    DurationTable,
    chip_from_spec,
    load_chip,
    make_ladder,
    make_linear,
    make_square,
    shortest_first_last_steps,
)
from .circuit import Circuit, Gate, ParseError, emit_circuit, make_circuit, parse_circuit
from .clocks import QubitClocks, ScheduleReport, UnroutedGateError, apply_single, apply_two, simulate
from .dag import GateDag, build_dag, topo_order
from .layout import Layout
from .router import (
    BlockingEvent,
    CostBreakdown,
    Decision,
    RoutedResult,
    RouterConfig,
    RouterInternalError,
    SubcircuitTracker,
    VerificationError,
    backend_cost,
    discriminate,
    front_cost,
    route,
    route_greedy_baseline,
    score_candidate,
    verify_routed,
)
from .workloads import RandomSpec, gen_benchmark, gen_random

__all__ = [
    "BlockingEvent",
    "Circuit",
    "ChipError",
    "CostBreakdown",
    "CouplingGraph",
    "Decision",
    "DurationTable",
    "Gate",
    "GateDag",
    "Layout",
    "ParseError",
    "QubitClocks",
    "RandomSpec",
    "RoutedResult",
    "RouterConfig",
    "RouterInternalError",
    "ScheduleReport",
    "SubcircuitTracker",
    "UnroutedGateError",
    "VerificationError",
    "apply_single",
    "apply_two",
    "backend_cost",
    "build_dag",
    "chip_from_spec",
    "discriminate",
    "emit_circuit",
    "front_cost",
    "gen_benchmark",
    "gen_random",
    "load_chip",
    "make_circuit",
    "make_ladder",
    "make_linear",
    "make_square",
    "parse_circuit",
    "route",
    "route_greedy_baseline",
    "score_candidate",
    "shortest_first_last_steps",
    "simulate",
    "topo_order",
    "verify_routed",
]
