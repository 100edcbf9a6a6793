"""Command-line surface: route single circuits, sweep experiment axes,
verify routed outputs, and generate workloads.

Exit codes: 0 success, 1 input parse/validation failure, 2 internal
invariant violation.

Sweep CSV schema v1 (documented, versioned):
    axis,value,seed,strategy,makespan_us,swap_count,subcircuits,route_ms
route_ms is wall-clock and excluded from determinism guarantees.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path

from .chip import (
    DEFAULT_CNOT_US,
    DEFAULT_SINGLE_US,
    DEFAULT_SWAP_FACTOR,
    chip_from_spec,
)
from .circuit import Circuit, emit_circuit, parse_circuit
from .clocks import simulate
from .router import (
    RouterConfig,
    RouterInternalError,
    RoutedResult,
    route,
    route_greedy_baseline,
    verify_routed,
)
from .workloads import BENCHMARK_NAMES, RandomSpec, gen_benchmark, gen_random

SWEEP_CSV_HEADER = ["axis", "value", "seed", "strategy", "makespan_us", "swap_count", "subcircuits", "route_ms"]

STRATEGIES = {"bqa": route, "greedy": route_greedy_baseline}


def _parse_random(arg: str) -> RandomSpec:
    parts = arg.split(",")
    if len(parts) != 4:
        raise ValueError(f"--random wants 'qubits,gates,p_cx,seed', got {arg!r}")
    return RandomSpec(qubits=int(parts[0]), gates=int(parts[1]), p_cx=float(parts[2]), seed=int(parts[3]))


def _parse_layout(arg: str) -> list[int] | None:
    if arg == "identity":
        return None
    return [int(t) for t in arg.split(",")]


def _load_input(args) -> tuple[Circuit, str]:
    if args.random is not None:
        spec = _parse_random(args.random)
        return gen_random(spec), f"random:{args.random}"
    if args.infile is None:
        raise ValueError("one of --in or --random is required")
    return parse_circuit(Path(args.infile).read_text(encoding="utf-8")), args.infile


def _resolve_chip(spec: str, args):
    factor = args.swap_factor if args.swap_factor is not None else DEFAULT_SWAP_FACTOR
    return chip_from_spec(spec, args.single_us, args.cnot_us, factor)


def _chip_for_qubits(family: str, n: int) -> str:
    """Expand a topology family name to a concrete chip spec of n qubits."""
    if ":" in family:
        return family
    if family in ("linear", "ladder"):
        return f"{family}:{n}"
    if family == "square":
        r = math.isqrt(n)
        if r * r != n:
            raise ValueError(f"square family needs a perfect-square qubit count, got {n}")
        return f"square:{r}x{r}"
    raise ValueError(f"unknown topology family {family!r}")


def build_report(
    source: str,
    circuit: Circuit,
    chip_spec: str,
    strategy: str,
    cfg: RouterConfig,
    result: RoutedResult,
    route_ms: float,
) -> dict:
    layout_echo = "identity" if cfg.initial_layout is None else list(cfg.initial_layout)
    return {
        "input": {
            "source": source,
            "width": circuit.width,
            "gate_counts": circuit.counts_by_label(),
        },
        "chip": chip_spec,
        "config": {
            "strategy": strategy,
            "lookahead": cfg.lookahead,
            "swap_factor": cfg.swap_factor if cfg.swap_factor is not None else DEFAULT_SWAP_FACTOR,
            "initial_layout": layout_echo,
        },
        "results": {
            "makespan_us": result.makespan_us,
            "swap_count": result.swap_count,
            "subcircuit_count": result.subcircuit_count,
            "per_qubit_us": list(result.per_qubit_us),
            "final_mapping": list(result.final_layout.phys2log),
        },
        "timing": {"route_ms": route_ms},
    }


def cmd_route(args) -> int:
    circuit, source = _load_input(args)
    graph, dur = _resolve_chip(args.chip, args)
    cfg = RouterConfig(
        lookahead=args.lookahead,
        swap_factor=args.swap_factor,
        initial_layout=_parse_layout(args.initial_layout),
    )
    t0 = time.perf_counter()
    result = STRATEGIES[args.strategy](circuit, graph, dur, cfg)
    route_ms = (time.perf_counter() - t0) * 1e3
    report = build_report(source, circuit, args.chip, args.strategy, cfg, result, route_ms)
    if args.out:
        Path(args.out).write_text(emit_circuit(result.circuit), encoding="utf-8")
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    print(
        f"{args.strategy}: makespan {result.makespan_us:.6g} us, "
        f"{result.swap_count} swaps, {result.subcircuit_count} subcircuits"
    )
    return 0


def cmd_sweep(args) -> int:
    values = args.values.split(",")
    strategies = args.strategies.split(",")
    for s in strategies:
        if s not in STRATEGIES:
            raise ValueError(f"unknown strategy {s!r}")
    cfg = RouterConfig(lookahead=args.lookahead, swap_factor=args.swap_factor)
    rows = []
    for value in values:
        qubits, gates, p_cx, chip_spec = args.qubits, args.gates, args.p_cx, args.chip
        if args.axis == "p_cx":
            p_cx = float(value)
        elif args.axis == "gates":
            gates = int(value)
        elif args.axis == "qubits":
            qubits = int(value)
            chip_spec = _chip_for_qubits(args.chip, qubits)
        elif args.axis == "topology":
            chip_spec = value
        else:
            raise ValueError(f"unknown axis {args.axis!r}")
        graph, dur = _resolve_chip(chip_spec, args)
        for rep in range(args.repeats):
            seed = args.seed0 + rep
            circuit = gen_random(RandomSpec(qubits=qubits, gates=gates, p_cx=p_cx, seed=seed))
            for strategy in strategies:
                t0 = time.perf_counter()
                result = STRATEGIES[strategy](circuit, graph, dur, cfg)
                route_ms = (time.perf_counter() - t0) * 1e3
                rows.append(
                    [args.axis, value, seed, strategy,
                     repr(result.makespan_us), result.swap_count,
                     result.subcircuit_count, f"{route_ms:.3f}"]
                )
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(SWEEP_CSV_HEADER)
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    if args.out:
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_simulate(args) -> int:
    circuit, source = _load_input(args)
    graph, dur = _resolve_chip(args.chip, args)
    rep = simulate(circuit, graph, dur)
    if args.report:
        payload = {
            "input": {"source": source, "width": circuit.width,
                      "gate_counts": circuit.counts_by_label()},
            "chip": args.chip,
            "results": {"makespan_us": rep.makespan_us, "per_qubit_us": list(rep.per_qubit_us)},
        }
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"makespan_us {rep.makespan_us!r}")
    return 0


def cmd_verify(args) -> int:
    original = parse_circuit(Path(args.original).read_text(encoding="utf-8"))
    routed = parse_circuit(Path(args.routed).read_text(encoding="utf-8"))
    graph, _ = chip_from_spec(args.chip)
    mapping = verify_routed(original, routed, graph, _parse_layout(args.initial_layout))
    print(f"ok, final mapping (phys->log): {mapping}")
    return 0


def cmd_gen(args) -> int:
    if args.random is not None:
        circuit = gen_random(_parse_random(args.random))
    elif args.benchmark is not None:
        circuit = gen_benchmark(args.benchmark, args.qubits, args.seed)
    else:
        raise ValueError("one of --random or --benchmark is required")
    text = emit_circuit(circuit)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(circuit.gates)} gates to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _add_chip_flags(p) -> None:
    p.add_argument("--chip", required=True, help="chip file or linear:<n> | ladder:<n> | square:<r>x<c>")
    p.add_argument("--single-us", type=float, default=DEFAULT_SINGLE_US,
                   help="single-gate time for builtin topologies")
    p.add_argument("--cnot-us", type=float, default=DEFAULT_CNOT_US,
                   help="CNOT time for builtin topologies")
    p.add_argument("--swap-factor", type=float, default=None,
                   help=f"swap_us = factor * cnot_us (default {DEFAULT_SWAP_FACTOR})")
    p.add_argument("--lookahead", type=int, default=20, help="CNOTs scored by the backend cost")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bqaroute", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("route", help="insert SWAPs so every two-qubit gate is coupled")
    p.add_argument("--in", dest="infile", help="circuit file")
    p.add_argument("--random", help="qubits,gates,p_cx,seed instead of --in")
    _add_chip_flags(p)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="bqa")
    p.add_argument("--initial-layout", default="identity", help="'identity' or comma-separated log->phys")
    p.add_argument("--out", help="routed circuit file")
    p.add_argument("--report", help="routing report JSON file")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("sweep", help="run seeded experiment sweeps, emit CSV")
    p.add_argument("--axis", required=True, choices=["p_cx", "gates", "qubits", "topology"])
    p.add_argument("--values", required=True, help="comma-separated axis values")
    p.add_argument("--qubits", type=int, default=16)
    p.add_argument("--gates", type=int, default=950)
    p.add_argument("--p-cx", type=float, default=0.5)
    _add_chip_flags(p)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--seed0", type=int, default=0)
    p.add_argument("--strategies", default="bqa,greedy")
    p.add_argument("--out", help="CSV file (stdout if omitted)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="makespan of an already-routed circuit file")
    p.add_argument("--in", dest="infile", help="routed circuit file (physical indices)")
    p.add_argument("--random", help=argparse.SUPPRESS)
    _add_chip_flags(p)
    p.add_argument("--report", help="schedule report JSON file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="replay a routed circuit against its original")
    p.add_argument("--original", required=True)
    p.add_argument("--routed", required=True)
    p.add_argument("--chip", required=True)
    p.add_argument("--initial-layout", default="identity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate workload circuit files")
    p.add_argument("--random", help="qubits,gates,p_cx,seed")
    p.add_argument("--benchmark", choices=BENCHMARK_NAMES)
    p.add_argument("--qubits", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output circuit file (stdout if omitted)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RouterInternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
