"""qiskit transpiler baseline, scored through the bqaroute CLI.

Transpiles circuits at optimization levels 0-3 against the same coupling
map, normalizes the output to {generic single, cx, swap}, exports it to the
circuit file format with physical indices, and scores it by invoking
``bqaroute simulate`` as a subprocess, so the baseline and the router share
one timing model, never two.

The primary tool is consumed only through its external interfaces: the CLI
and the circuit/chip file formats. qiskit is optional; when it is missing
or a transpile fails, the row is emitted with the failure in its ``error``
column instead of aborting the batch (CSV schema v1 plus ``error``).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import shutil
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

CSV_HEADER = ["axis", "value", "seed", "strategy", "makespan_us", "swap_count",
              "subcircuits", "route_ms", "error"]

LEVELS = (0, 1, 2, 3)


class HarnessError(RuntimeError):
    pass


@dataclass
class BaselineRow:
    axis: str
    value: str
    seed: int
    strategy: str
    makespan_us: float | None = None
    swap_count: int | None = None
    subcircuits: int | None = None
    route_ms: float | None = None
    error: str = ""

    def as_csv(self) -> list:
        def opt(v, fmt=str):
            return "" if v is None else fmt(v)

        return [self.axis, self.value, self.seed, self.strategy,
                opt(self.makespan_us, repr), opt(self.swap_count),
                opt(self.subcircuits), opt(self.route_ms, lambda v: f"{v:.3f}"),
                self.error]


# ---------------------------------------------------------------------------
# circuit / chip file formats (the primary tool's external interfaces)

@dataclass
class SimpleCircuit:
    width: int
    gates: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)


def parse_circuit_file(text: str) -> SimpleCircuit:
    width = None
    gates = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if width is None:
            if tokens[0] != "qubits":
                raise HarnessError(f"expected 'qubits <N>' header, got {line!r}")
            width = int(tokens[1])
            continue
        gates.append((tokens[0], tuple(int(t) for t in tokens[1:])))
    if width is None:
        raise HarnessError("missing 'qubits <N>' header")
    return SimpleCircuit(width, gates)


def emit_circuit_file(c: SimpleCircuit) -> str:
    lines = [f"qubits {c.width}"]
    for label, qubits in c.gates:
        lines.append(f"{label} " + " ".join(str(q) for q in qubits))
    return "\n".join(lines) + "\n"


def chip_edges(spec: str) -> tuple[int, list[tuple[int, int]]]:
    """Edge list of a builtin chip spec or chip file, matching the primary
    tool's topology definitions."""
    kind, _, arg = spec.partition(":")
    if kind == "linear" and arg:
        n = int(arg)
        return n, [(i, i + 1) for i in range(n - 1)]
    if kind == "ladder" and arg:
        n = int(arg)
        edges = {(i, i + 1) for i in range(n - 1)}
        edges |= {tuple(sorted((i, n - 1 - i))) for i in range(n // 2)}
        return n, sorted(edges)
    if kind == "square" and arg:
        r, _, c = arg.partition("x")
        rows, cols = int(r), int(c)
        edges = []
        for i in range(rows):
            for j in range(cols):
                if j + 1 < cols:
                    edges.append((i * cols + j, i * cols + j + 1))
                if i + 1 < rows:
                    edges.append((i * cols + j, (i + 1) * cols + j))
        return rows * cols, edges
    # chip file
    n = None
    edges = []
    for raw in Path(spec).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None and tokens[0] == "qubits":
            n = int(tokens[1])
        elif tokens[0] == "edge":
            edges.append((int(tokens[1]), int(tokens[2])))
    if n is None:
        raise HarnessError(f"chip file {spec!r} has no 'qubits' header")
    return n, edges


# ---------------------------------------------------------------------------
# primary CLI subprocess driver

def primary_command() -> list[str]:
    exe = shutil.which("bqaroute")
    if exe:
        return [exe]
    return [sys.executable, "-m", "bqaroute.cli"]


def _run_primary(args: list[str]) -> str:
    proc = subprocess.run(primary_command() + args, capture_output=True, text=True)
    if proc.returncode != 0:
        raise HarnessError(
            f"bqaroute {' '.join(args)} failed ({proc.returncode}): {proc.stderr.strip()}"
        )
    return proc.stdout


def score_circuit_file(path: Path, chip_spec: str) -> float:
    """Makespan of an already-routed circuit file via the primary simulate
    path; raises if any two-qubit gate is off a coupling edge."""
    with tempfile.TemporaryDirectory() as td:
        report = Path(td) / "sim.json"
        _run_primary(["simulate", "--in", str(path), "--chip", chip_spec,
                      "--report", str(report)])
        return json.loads(report.read_text())["results"]["makespan_us"]


def generate_random_file(path: Path, qubits: int, gates: int, p_cx: float, seed: int) -> None:
    _run_primary(["gen", "--random", f"{qubits},{gates},{p_cx},{seed}", "--out", str(path)])


def route_with_primary(path: Path, chip_spec: str, workdir: Path, strategy: str = "bqa") -> dict:
    report = workdir / f"{path.stem}.{strategy}.json"
    _run_primary(["route", "--in", str(path), "--chip", chip_spec,
                  "--strategy", strategy, "--report", str(report)])
    return json.loads(report.read_text())


# ---------------------------------------------------------------------------
# qiskit side

def _require_qiskit():
    try:
        from qiskit import QuantumCircuit, transpile  # noqa: F401
        from qiskit.transpiler import CouplingMap  # noqa: F401
    except ImportError as exc:
        raise HarnessError(f"qiskit-not-installed ({exc})") from exc
    return QuantumCircuit, transpile, CouplingMap


def to_qiskit(c: SimpleCircuit):
    """Circuit file -> qiskit circuit. Generic singles become small concrete
    rotations so the optimizer treats them as real work."""
    QuantumCircuit, _, _ = _require_qiskit()
    qc = QuantumCircuit(c.width)
    for i, (label, qubits) in enumerate(c.gates):
        if label == "cx":
            qc.cx(*qubits)
        elif label == "swap":
            qc.swap(*qubits)
        else:
            qc.u(0.1 + 0.01 * (i % 7), 0.2, 0.3, qubits[0])
    return qc


def from_qiskit(qc) -> SimpleCircuit:
    """Transpiled qiskit circuit -> circuit file gates with physical indices.

    Accepts {1q ops, cx, swap}; barriers/measures are dropped. Raises
    HarnessError on anything else (caller may re-transpile to the basis).
    """
    out = SimpleCircuit(qc.num_qubits)
    for inst in qc.data:
        name = inst.operation.name
        qubits = tuple(qc.find_bit(q).index for q in inst.qubits)
        if name in ("barrier", "measure", "delay"):
            continue
        if name == "cx" and len(qubits) == 2:
            out.gates.append(("cx", qubits))
        elif name == "swap" and len(qubits) == 2:
            out.gates.append(("swap", qubits))
        elif len(qubits) == 1:
            out.gates.append(("u", qubits))
        else:
            raise HarnessError(f"gate {name!r} on {qubits} is outside the {{u, cx, swap}} basis")
    return out


def transpile_to_chip(c: SimpleCircuit, chip_spec: str, level: int, seed: int = 0):
    """Transpile at the given optimization level against the chip's coupling
    map, normalized to {u, cx, swap}. Returns (SimpleCircuit, elapsed_ms)."""
    _, transpile, CouplingMap = _require_qiskit()
    n, edges = chip_edges(chip_spec)
    cm = CouplingMap()
    for q in range(n):
        cm.add_physical_qubit(q)
    for a, b in edges:
        cm.add_edge(a, b)
        cm.add_edge(b, a)
    qc = to_qiskit(c)
    t0 = time.perf_counter()
    tr = transpile(qc, coupling_map=cm, optimization_level=level,
                   basis_gates=["u", "cx", "swap"], seed_transpiler=seed)
    elapsed_ms = (time.perf_counter() - t0) * 1e3
    exported = from_qiskit(tr)
    if exported.width < n:
        exported.width = n
    return exported, elapsed_ms


def run_baseline(
    circuit_file: Path,
    chip_spec: str,
    levels=LEVELS,
    seed: int = 0,
    axis: str = "file",
    value: str | None = None,
) -> list[BaselineRow]:
    """Transpile one circuit at each level and score it through the primary
    CLI. Failures surface as rows with the error column set."""
    value = value if value is not None else circuit_file.name
    circuit = parse_circuit_file(Path(circuit_file).read_text(encoding="utf-8"))
    rows = []
    for level in levels:
        row = BaselineRow(axis=axis, value=value, seed=seed, strategy=f"qiskit-l{level}")
        try:
            exported, elapsed_ms = transpile_to_chip(circuit, chip_spec, level, seed)
            with tempfile.TemporaryDirectory() as td:
                out = Path(td) / "baseline.qc"
                out.write_text(emit_circuit_file(exported), encoding="utf-8")
                row.makespan_us = score_circuit_file(out, chip_spec)
            row.swap_count = sum(1 for label, _ in exported.gates if label == "swap")
            row.route_ms = elapsed_ms
        except HarnessError as exc:
            row.error = str(exc)
        rows.append(row)
    return rows


def compare(
    chip_spec: str = "linear:16",
    qubits: int = 16,
    gates: int = 950,
    p_values=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
    seeds=range(10),
    levels=LEVELS,
) -> tuple[list[BaselineRow], float | None]:
    """Head-to-head protocol: random circuits per (p_cx, seed), routed by the
    primary and transpiled by qiskit, all scored by one clock model.

    Returns (rows, geometric-mean makespan ratio bqa / qiskit-l3), the ratio
    None when no level-3 pair completed.
    """
    rows: list[BaselineRow] = []
    log_ratios: list[float] = []
    with tempfile.TemporaryDirectory() as td:
        workdir = Path(td)
        for p_cx in p_values:
            for seed in seeds:
                circuit_file = workdir / f"p{p_cx}_s{seed}.qc"
                generate_random_file(circuit_file, qubits, gates, p_cx, seed)
                report = route_with_primary(circuit_file, chip_spec, workdir)
                res = report["results"]
                rows.append(BaselineRow(
                    axis="p_cx", value=str(p_cx), seed=seed, strategy="bqa",
                    makespan_us=res["makespan_us"], swap_count=res["swap_count"],
                    subcircuits=res["subcircuit_count"],
                    route_ms=report["timing"]["route_ms"],
                ))
                level_rows = run_baseline(circuit_file, chip_spec, levels, seed,
                                          axis="p_cx", value=str(p_cx))
                rows.extend(level_rows)
                l3 = next((r for r in level_rows if r.strategy == "qiskit-l3"), None)
                if l3 and l3.makespan_us:
                    log_ratios.append(math.log(res["makespan_us"] / l3.makespan_us))
    geomean = math.exp(sum(log_ratios) / len(log_ratios)) if log_ratios else None
    return rows, geomean


def write_rows(rows: list[BaselineRow], out) -> None:
    writer = csv.writer(out)
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_csv())


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="qiskit-baseline", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="transpile one circuit file at levels 0-3 and score it")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--chip", required=True)
    p.add_argument("--levels", default="0,1,2,3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV file (stdout if omitted)")

    p = sub.add_parser("compare", help="sweep protocol: bqa vs qiskit levels, one scorer")
    p.add_argument("--chip", default="linear:16")
    p.add_argument("--qubits", type=int, default=16)
    p.add_argument("--gates", type=int, default=950)
    p.add_argument("--p-values", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--levels", default="0,1,2,3")
    p.add_argument("--out", help="CSV file (stdout if omitted)")

    args = parser.parse_args(argv)
    levels = [int(t) for t in args.levels.split(",")]
    try:
        if args.command == "run":
            rows = run_baseline(Path(args.infile), args.chip, levels, args.seed)
            geomean = None
        else:
            p_values = [float(t) for t in args.p_values.split(",")]
            rows, geomean = compare(args.chip, args.qubits, args.gates,
                                    p_values, range(args.repeats), levels)
    except (HarnessError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_rows(rows, fh)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        write_rows(rows, sys.stdout)

    errors = sum(1 for r in rows if r.error)
    if errors:
        print(f"WARNING: {errors}/{len(rows)} rows skipped (see error column)", file=sys.stderr)
    if geomean is not None:
        print(f"geometric-mean makespan ratio bqa/qiskit-l3 = {geomean:.3f}")
        if geomean > 1.0:
            print("WARNING: ratio above 1.0 (non-blocking; version-dependent)", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
