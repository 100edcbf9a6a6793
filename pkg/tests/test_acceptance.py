"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines live.
Every criterion carries its stated tolerance and wall-clock budget.
"""

import random
import time
from statistics import median

from bqaroute import (
    RandomSpec,
    chip_from_spec,
    emit_circuit,
    gen_random,
    make_circuit,
    route,
    route_greedy_baseline,
    simulate,
    verify_routed,
)
from conftest import event_schedule, rand_circuit, random_topo_order, reorder_circuit

CLOCK_TOL = 1e-9


def _criterion(name: str, budget_s: float, body):
    t0 = time.perf_counter()
    try:
        body()
    except Exception:
        print(f"\nACCEPTANCE {name}: FAIL")
        raise
    elapsed = time.perf_counter() - t0
    assert elapsed < budget_s, f"{name}: {elapsed:.1f}s exceeds the {budget_s:.0f}s budget"
    print(f"\nACCEPTANCE {name}: PASS ({elapsed:.1f}s < {budget_s:.0f}s)")


def test_fig1_golden_cases():
    def body():
        graph, dur = chip_from_spec("linear:4")  # uniform 0.1 / 0.5 / swap 1.5

        # (i) hiding the SWAPs beats the 3.6 us serial-chain schedule;
        #     the inferior all-on-the-busy-path insertion scores 4.1.
        result = route(make_circuit(4, [("u", 0), ("cx", 0, 1), ("cx", 0, 3)]), graph, dur)
        assert result.makespan_us <= 3.6 + CLOCK_TOL
        inferior = make_circuit(
            4, [("u", 0), ("cx", 0, 1), ("swap", 0, 1), ("swap", 1, 2), ("cx", 2, 3)]
        )
        assert abs(simulate(inferior, graph, dur).makespan_us - 4.1) <= CLOCK_TOL

        # (ii) lookahead avoids the coupling-breaking SWAP: 1 vs greedy's 2.
        c = make_circuit(4, [("cx", 1, 3), ("cx", 0, 1)])
        assert route(c, graph, dur).swap_count == 1
        assert route_greedy_baseline(c, graph, dur).swap_count == 2

    _criterion("fig1-golden-cases", 1.0, body)


def test_clock_oracle_equivalence():
    def body():
        chips = [chip_from_spec(s) for s in ("linear:16", "ladder:16", "square:4x4")]
        rng = random.Random(2024)
        for seed in range(200):
            graph, dur = chips[seed % 3]
            width = 4 + seed % 13
            c = gen_random(RandomSpec(width, 250, 0.1 + 0.1 * (seed % 9), seed))
            routed = route(c, graph, dur).circuit

            got = simulate(routed, graph, dur)
            makespan, ready = event_schedule(routed, graph, dur)
            assert got.makespan_us == makespan
            assert list(got.per_qubit_us) == ready

            for _ in range(10):
                reordered = reorder_circuit(routed, random_topo_order(rng, routed))
                assert abs(simulate(reordered, graph, dur).makespan_us - makespan) <= CLOCK_TOL

    _criterion("clock-oracle-equivalence", 30.0, body)


def test_routing_validity_and_semantics():
    def body():
        gate_sizes = (200, 400, 600, 800, 1000)
        for spec in ("linear:16", "ladder:16", "square:4x4"):
            graph, dur = chip_from_spec(spec)
            for seed in range(200):
                width = 4 + (3 * seed) % 13  # 4..16
                p_cx = 0.1 + 0.1 * (seed % 9)
                c = gen_random(RandomSpec(width, gate_sizes[seed % 5], p_cx, seed))
                result = route(c, graph, dur)
                for g in result.circuit.gates:
                    if g.is_two:
                        assert graph.has_edge(*g.qubits)
                verify_routed(c, result.circuit, graph)
                for ev in result.blocking_events:
                    assert ev.swaps == ev.distance - 1

    _criterion("routing-validity-semantics", 120.0, body)


def test_heuristic_quality():
    def body():
        graph, dur = chip_from_spec("linear:16")
        advantage = {}
        for p_cx in (0.1, 0.9):
            bqa, greedy = [], []
            for seed in range(100):
                c = gen_random(RandomSpec(16, 950, p_cx, seed))
                bqa.append(route(c, graph, dur).makespan_us)
                greedy.append(route_greedy_baseline(c, graph, dur).makespan_us)
            assert median(bqa) <= median(greedy), f"p_cx={p_cx}"
            advantage[p_cx] = median(greedy) - median(bqa)
        assert advantage[0.9] >= advantage[0.1]

    _criterion("heuristic-quality", 300.0, body)


def test_topology_and_gate_count_trends():
    def body():
        def mean_makespan(chip_spec, gates):
            graph, dur = chip_from_spec(chip_spec)
            vals = [
                route(gen_random(RandomSpec(16, gates, 0.5, seed)), graph, dur).makespan_us
                for seed in range(20)
            ]
            return sum(vals) / len(vals)

        square = mean_makespan("square:4x4", 950)
        ladder = mean_makespan("ladder:16", 950)
        linear = mean_makespan("linear:16", 950)
        assert square <= ladder <= linear

        means = [mean_makespan("linear:16", g) for g in (200, 400, 600, 800, 1000)]
        assert all(a <= b for a, b in zip(means, means[1:]))

    _criterion("topology-and-gate-count-trends", 300.0, body)


def test_determinism_and_scale_invariance():
    def body():
        rng = random.Random(7)
        for spec in ("linear:16", "ladder:16", "square:4x4"):
            graph, dur = chip_from_spec(spec)
            for _ in range(3):
                c = rand_circuit(rng, 16, 300, 0.6)
                a, b = route(c, graph, dur), route(c, graph, dur)
                assert emit_circuit(a.circuit) == emit_circuit(b.circuit)
                assert a.per_qubit_us == b.per_qubit_us
                assert a.final_layout == b.final_layout

                scaled = route(c, graph, dur.scaled(7.3))
                swaps = lambda r: [g.qubits for g in r.circuit.gates if g.label == "swap"]
                assert swaps(a) == swaps(scaled)

    _criterion("determinism-and-scale-invariance", 60.0, body)
