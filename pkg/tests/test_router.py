"""Router: discriminator, cost model, routing loop, baseline, verifier."""

import random

import pytest

from bqaroute import (
    Circuit,
    ChipError,
    DurationTable,
    Decision,
    Gate,
    Layout,
    QubitClocks,
    RouterConfig,
    SubcircuitTracker,
    VerificationError,
    backend_cost,
    chip_from_spec,
    discriminate,
    emit_circuit,
    front_cost,
    make_circuit,
    make_ladder,
    make_linear,
    make_square,
    route,
    route_greedy_baseline,
    score_candidate,
    simulate,
    verify_routed,
)
from bqaroute.router import RouterState
from conftest import rand_circuit

FIG_A = [("u", 0), ("cx", 0, 1), ("cx", 0, 3)]
FIG_D = [("cx", 1, 3), ("cx", 0, 1)]


@pytest.fixture
def linear4():
    return chip_from_spec("linear:4")


def test_discriminate(linear4):
    graph, _ = linear4
    lay = Layout.identity(4)
    assert discriminate(Gate(0, "u", (3,)), lay, graph) is Decision.EXECUTABLE
    assert discriminate(Gate(0, "cx", (0, 1)), lay, graph) is Decision.EXECUTABLE
    assert discriminate(Gate(0, "cx", (0, 3)), lay, graph) is Decision.NEEDS_ROUTING


def _tracker_with(times):
    tr = SubcircuitTracker(len(times))
    tr.active = set(range(len(times)))
    return tr, QubitClocks(tuple(times))


def test_front_cost_examples():
    # chip size == active size, where the chip/active mean readings coincide
    tr, clocks = _tracker_with([2.0, 2.0])
    assert front_cost(clocks, tr) == 1.0
    tr, clocks = _tracker_with([3.0, 1.0])
    assert front_cost(clocks, tr) == 1.5
    tr, clocks = _tracker_with([0.0, 0.0, 0.0])
    assert front_cost(clocks, tr) == 1.0


def test_front_cost_empty_subcircuit_is_one():
    tr = SubcircuitTracker(4)
    assert front_cost(QubitClocks.zeros(4), tr) == 1.0


def test_front_cost_at_least_one():
    # qubits outside the active set have not advanced since the subcircuit
    # start, so their relative time is 0 in any reachable state
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(1, 10)
        tr = SubcircuitTracker(n)
        tr.active = {i for i in range(n) if rng.random() < 0.7} or {0}
        times = [rng.random() * rng.choice([0, 1, 5]) if q in tr.active else 0.0 for q in range(n)]
        for scope in ("chip", "active"):
            assert front_cost(QubitClocks(tuple(times)), tr, mean_scope=scope) >= 1.0


def test_front_cost_scopes_differ():
    # busy pair on a 4-qubit chip: idle zeros drag the chip-wide mean down
    tr = SubcircuitTracker(4)
    tr.active = {0, 1}
    clocks = QubitClocks((2.0, 2.0, 0.0, 0.0))
    assert front_cost(clocks, tr, mean_scope="active") == 1.0
    assert front_cost(clocks, tr, mean_scope="chip") == 2.0


def test_front_cost_time_base():
    tr = SubcircuitTracker(2)
    tr.active = {0, 1}
    tr.start_clock = (1.0, 1.0)
    clocks = QubitClocks((4.0, 2.0))
    assert front_cost(clocks, tr, time_base="subcircuit") == 3.0 / 2.0
    assert front_cost(clocks, tr, time_base="absolute") == 4.0 / 3.0


def test_backend_cost_examples(linear4):
    graph, _ = linear4
    lay = Layout.identity(4)
    assert backend_cost(lay, graph, [(0, 1)]) == 0.0
    assert backend_cost(lay, graph, [(0, 3), (1, 2)]) == 1.0
    assert backend_cost(lay, graph, []) == 0.0
    assert backend_cost(lay, graph, [(0, 3), (1, 2)], n=1) == 2.0


def test_backend_cost_fig_d_candidates(linear4):
    graph, _ = linear4
    # pending cx(1,3); future window holds cx(0,1)
    lay = Layout.identity(4)
    lay.swap_phys(1, 2)  # hypothetical SWAP(1,2): next CNOT lands on (0,2)
    assert backend_cost(lay, graph, [(0, 1)]) == 1.0
    lay = Layout.identity(4)
    lay.swap_phys(2, 3)  # hypothetical SWAP(2,3): next CNOT still coupled
    assert backend_cost(lay, graph, [(0, 1)]) == 0.0


def _fig_a_state(graph, dur):
    """State right before routing cx(0,3): u0 and cx(0,1) accumulated."""
    tr = SubcircuitTracker(4)
    tr.active = {0, 1}
    clocks = QubitClocks((0.6, 0.6, 0.0, 0.0))
    return RouterState(
        chip=graph, dur=dur, cfg=RouterConfig(), layout=Layout.identity(4),
        clocks=clocks, tracker=tr, future_cnots=[],
    )


def test_score_candidate_prefers_idle_qubits(linear4):
    graph, dur = linear4
    state = _fig_a_state(graph, dur)
    busy = score_candidate((0, 1), state)
    idle = score_candidate((2, 3), state)
    assert idle.total < busy.total
    # same ordering under non-uniform per-edge times
    dur2 = DurationTable((0.1,) * 4, {(0, 1): 0.540, (1, 2): 0.739, (2, 3): 0.675})
    state2 = _fig_a_state(graph, dur2)
    assert score_candidate((2, 3), state2).total < score_candidate((0, 1), state2).total


def test_score_candidate_idle_pair_empty_lookahead(linear4):
    graph, dur = linear4
    tr = SubcircuitTracker(4)
    state = RouterState(
        chip=graph, dur=dur, cfg=RouterConfig(), layout=Layout.identity(4),
        clocks=QubitClocks.zeros(4), tracker=tr, future_cnots=[],
    )
    got = score_candidate((2, 3), state)
    assert got.backend == 0.0
    assert got.total == got.front


def test_score_candidate_pure(linear4):
    graph, dur = linear4
    state = _fig_a_state(graph, dur)
    first = score_candidate((2, 3), state)
    second = score_candidate((2, 3), state)
    assert first == second
    assert state.clocks.t == (0.6, 0.6, 0.0, 0.0)
    assert state.layout == Layout.identity(4)
    assert state.tracker.active == {0, 1}


def test_cost_breakdown_total_exact(linear4):
    graph, dur = linear4
    got = score_candidate((2, 3), _fig_a_state(graph, dur))
    assert got.total == got.front + got.backend


def test_route_fig_d_single_swap(linear4):
    graph, dur = linear4
    result = route(make_circuit(4, FIG_D), graph, dur)
    assert result.swap_count == 1
    assert [(g.label, g.qubits) for g in result.circuit.gates] == [
        ("swap", (2, 3)),
        ("cx", (1, 2)),
        ("cx", (0, 1)),
    ]


def test_route_fig_a_hides_swaps(linear4):
    graph, dur = linear4
    result = route(make_circuit(4, FIG_A), graph, dur)
    assert result.makespan_us <= 3.6 + 1e-9
    assert result.swap_count == 2  # dist(0,3) - 1


def test_greedy_fig_d_two_swaps(linear4):
    graph, dur = linear4
    result = route_greedy_baseline(make_circuit(4, FIG_D), graph, dur)
    assert result.swap_count == 2


def test_routable_circuit_untouched(linear4):
    graph, dur = linear4
    c = make_circuit(4, [("u", 2), ("cx", 0, 1), ("cx", 2, 3), ("cx", 1, 2)])
    for strategy in (route, route_greedy_baseline):
        result = strategy(c, graph, dur)
        assert result.swap_count == 0
        assert result.subcircuit_count == 0
        assert result.circuit.signature() == c.signature()


def test_route_rejects_wide_circuit(linear4):
    graph, dur = linear4
    with pytest.raises(ChipError):
        route(make_circuit(5, [("cx", 0, 4)]), graph, dur)


def test_route_makespan_equals_simulate_exactly():
    rng = random.Random(17)
    for spec in ("linear:8", "ladder:8", "square:3x3"):
        graph, dur = chip_from_spec(spec)
        for _ in range(5):
            c = rand_circuit(rng, min(8, graph.n), 120, 0.5)
            for strategy in (route, route_greedy_baseline):
                result = strategy(c, graph, dur)
                assert simulate(result.circuit, graph, dur).makespan_us == result.makespan_us


def test_swaps_per_blocking_gate_equals_distance_minus_one():
    rng = random.Random(23)
    graph, dur = chip_from_spec("square:4x4")
    for _ in range(10):
        c = rand_circuit(rng, 16, 150, 0.6)
        result = route(c, graph, dur)
        assert result.blocking_events
        for ev in result.blocking_events:
            assert ev.swaps == ev.distance - 1
        assert sum(ev.swaps for ev in result.blocking_events) == result.swap_count
        assert len(result.blocking_events) == result.subcircuit_count


def test_route_deterministic(linear4):
    graph, dur = linear4
    c = rand_circuit(random.Random(5), 4, 60, 0.6)
    a, b = route(c, graph, dur), route(c, graph, dur)
    assert emit_circuit(a.circuit) == emit_circuit(b.circuit)
    assert a.per_qubit_us == b.per_qubit_us
    assert a.final_layout == b.final_layout


def test_route_scale_invariant_swap_sequence():
    rng = random.Random(29)
    graph, dur = chip_from_spec("ladder:10")
    for _ in range(5):
        c = rand_circuit(rng, 10, 150, 0.7)
        base = route(c, graph, dur)
        scaled = route(c, graph, dur.scaled(7.3))
        swaps = lambda r: [g.qubits for g in r.circuit.gates if g.label == "swap"]
        assert swaps(base) == swaps(scaled)


def test_route_with_explicit_initial_layout(linear4):
    graph, dur = linear4
    c = make_circuit(4, [("cx", 0, 1)])
    cfg = RouterConfig(initial_layout=[3, 2, 1, 0])
    result = route(c, graph, dur, cfg)
    assert result.swap_count == 0
    assert result.circuit.gates[0].qubits == (3, 2)
    assert verify_routed(c, result.circuit, graph, initial_layout=[3, 2, 1, 0]) == [3, 2, 1, 0]


def test_lookahead_zero_disables_backend(linear4):
    graph, dur = linear4
    c = make_circuit(4, FIG_D)
    result = route(c, graph, dur, RouterConfig(lookahead=0))
    assert verify_routed(c, result.circuit, graph)


def test_verify_fig_f():
    graph, _ = chip_from_spec("linear:4")
    original = make_circuit(4, FIG_D)
    routed = make_circuit(4, [("swap", 2, 3), ("cx", 1, 2), ("cx", 0, 1)])
    assert verify_routed(original, routed, graph) == [0, 1, 3, 2]


def test_verify_catches_deleted_swap():
    graph, _ = chip_from_spec("linear:4")
    original = make_circuit(4, FIG_D)
    routed = make_circuit(4, [("cx", 1, 2), ("cx", 0, 1)])  # swap dropped
    with pytest.raises(VerificationError):
        verify_routed(original, routed, graph)


def test_verify_identity_for_swap_free():
    graph, _ = chip_from_spec("linear:4")
    c = make_circuit(4, [("u", 0), ("cx", 1, 2), ("cx", 2, 3)])
    assert verify_routed(c, c, graph) == [0, 1, 2, 3]


def test_verify_rejects_off_edge():
    graph, _ = chip_from_spec("linear:4")
    c = make_circuit(4, [("cx", 0, 3)])
    with pytest.raises(VerificationError, match="uncoupled"):
        verify_routed(c, c, graph)


def test_verify_catches_mutated_gate():
    graph, _ = chip_from_spec("linear:4")
    original = make_circuit(4, [("cx", 0, 1), ("u", 2)])
    mutated = make_circuit(4, [("cx", 1, 0), ("u", 2)])  # control/target flipped
    with pytest.raises(VerificationError):
        verify_routed(original, mutated, graph)


def test_verify_catches_extra_gate():
    graph, _ = chip_from_spec("linear:4")
    original = make_circuit(4, [("cx", 0, 1)])
    extra = make_circuit(4, [("cx", 0, 1), ("u", 0)])
    with pytest.raises(VerificationError):
        verify_routed(original, extra, graph)


def test_route_then_verify_many_random():
    rng = random.Random(31)
    chips = [
        (make_linear(12), 12),
        (make_ladder(12), 12),
        (make_square(3, 4), 12),
    ]
    for graph, n in chips:
        dur = DurationTable.uniform(graph)
        for _ in range(15):
            width = rng.randint(2, n)
            c = rand_circuit(rng, width, rng.randint(1, 200), rng.random())
            for strategy in (route, route_greedy_baseline):
                result = strategy(c, graph, dur)
                for g in result.circuit.gates:
                    if g.is_two:
                        assert graph.has_edge(*g.qubits)
                verify_routed(c, result.circuit, graph)


def test_route_input_with_swap_labels():
    # swap gates in the input program are routed like any two-qubit gate
    graph, dur = chip_from_spec("linear:4")
    c = make_circuit(4, [("swap", 0, 2), ("cx", 0, 1)])
    result = route(c, graph, dur)
    for g in result.circuit.gates:
        if g.is_two:
            assert graph.has_edge(*g.qubits)
    verify_routed(c, result.circuit, graph)


def test_bqa_beats_greedy_in_median():
    from statistics import median

    graph, dur = chip_from_spec("linear:12")
    rng = random.Random(37)
    bqa, greedy = [], []
    for _ in range(20):
        c = rand_circuit(rng, 12, 300, 0.5)
        bqa.append(route(c, graph, dur).makespan_us)
        greedy.append(route_greedy_baseline(c, graph, dur).makespan_us)
    assert median(bqa) <= median(greedy)
