"""Evaluation inputs: seeded random gate sequences and benchmark circuits.

Random streams use numpy's PCG64 generator so that a (spec, seed) pair is
reproducible anywhere. Draw order per gate, documented for portability:

    r = rng.random()                    # gate kind: CNOT iff r < p_cx
    CNOT:   c = rng.integers(0, q);  t = rng.integers(0, q - 1), bumped past c
    single: rng.integers(0, q)

The named benchmarks are structural stand-ins: they reproduce the routing-
relevant shape (CNOT density and connectivity pattern) of multi-controlled
AND/OR ladders, repeated oracle+diffusion rounds, and square random-matching
volume circuits. They are not functionally correct oracle implementations,
so absolute times are comparable only within this tool.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, make_circuit

BENCHMARK_NAMES = ("and", "or", "grover", "qv")


@dataclass(frozen=True)
class RandomSpec:
    """Parameters of a random gate sequence."""

    qubits: int
    gates: int
    p_cx: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.p_cx <= 1.0:
            raise ValueError(f"p_cx must be in [0,1], got {self.p_cx}")
        if self.qubits < 1:
            raise ValueError(f"qubits must be >= 1, got {self.qubits}")
        if self.p_cx > 0 and self.qubits < 2:
            raise ValueError("CNOTs need at least 2 qubits")
        if self.gates < 0:
            raise ValueError(f"gates must be >= 0, got {self.gates}")


def gen_random(spec: RandomSpec) -> Circuit:
    """Exactly spec.gates gates; each is a cx on a uniform ordered pair of
    distinct qubits with probability p_cx, else a u on a uniform qubit."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    ops: list[tuple] = []
    for _ in range(spec.gates):
        if rng.random() < spec.p_cx:
            c = int(rng.integers(0, spec.qubits))
            t = int(rng.integers(0, spec.qubits - 1))
            if t >= c:
                t += 1
            ops.append(("cx", c, t))
        else:
            ops.append(("u", int(rng.integers(0, spec.qubits))))
    return make_circuit(spec.qubits, ops)


def _ladder(n: int) -> list[tuple]:
    return [("cx", i, i + 1) for i in range(n - 1)]


def gen_benchmark(name: str, qubits: int, seed: int = 0) -> Circuit:
    """Deterministic benchmark circuit of the given family.

    and     singles on the inputs, a CNOT chain onto the last qubit, a
            single there, and the uncomputing reverse chain.
    or      the same ladder wrapped in negation layers on every qubit.
    grover  round(pi/4 * sqrt(2^n)) rounds of full CNOT ladder + singles.
    qv      ``qubits`` layers; each layer pairs qubits by a seeded random
            perfect matching and plays 3 cx + 4 u per pair. Needs even n.
    """
    if name not in BENCHMARK_NAMES:
        raise ValueError(f"unknown benchmark {name!r}, expected one of {BENCHMARK_NAMES}")
    if qubits < 2:
        raise ValueError(f"benchmarks need at least 2 qubits, got {qubits}")
    if name == "and":
        ops = [("u", i) for i in range(qubits - 1)]
        ops += _ladder(qubits)
        ops.append(("u", qubits - 1))
        ops += reversed(_ladder(qubits))
        return make_circuit(qubits, ops)
    if name == "or":
        ops = [("u", i) for i in range(qubits)]
        ops += _ladder(qubits)
        ops.append(("u", qubits - 1))
        ops += reversed(_ladder(qubits))
        ops += [("u", i) for i in range(qubits)]
        return make_circuit(qubits, ops)
    if name == "grover":
        rounds = max(1, math.floor(math.pi / 4 * math.sqrt(2**qubits)))
        ops = []
        for _ in range(rounds):
            ops += _ladder(qubits)
            ops += [("u", i) for i in range(qubits)]
        return make_circuit(qubits, ops)
    # qv
    if qubits % 2:
        raise ValueError(f"qv needs an even qubit count, got {qubits}")
    rng = np.random.Generator(np.random.PCG64(seed))
    ops = []
    for _ in range(qubits):
        perm = [int(q) for q in rng.permutation(qubits)]
        for i in range(0, qubits, 2):
            a, b = perm[i], perm[i + 1]
            ops += [("u", a), ("u", b), ("cx", a, b), ("cx", b, a), ("cx", a, b), ("u", a), ("u", b)]
    return make_circuit(qubits, ops)
