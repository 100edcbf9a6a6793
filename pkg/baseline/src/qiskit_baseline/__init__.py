"""qiskit transpiler baseline harness for bqaroute."""

from .harness import BaselineRow, chip_edges, compare, run_baseline, score_circuit_file

__all__ = ["BaselineRow", "chip_edges", "compare", "run_baseline", "score_circuit_file"]
