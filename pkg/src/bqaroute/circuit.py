"""Logical circuit representation and the line-based circuit file format.

File format (UTF-8, one item per line):

    qubits <N>            header, must come first
    <label> <q>           single-qubit gate, any label (e.g. "u", "h")
    <label> <q1> <q2>     two-qubit gate, label must be "cx" or "swap"
    # comment             '#' starts a comment, blank lines are ignored

Single-qubit gate parameters are not modeled: routing only needs gate
structure, and all single-qubit gates share one duration per qubit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

ORIGINAL = "original"
INSERTED_SWAP = "inserted-swap"

TWO_QUBIT_LABELS = ("cx", "swap")


class ParseError(ValueError):
    """Malformed circuit or chip text; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Gate:
    """One gate: a label plus the qubit indices it acts on.

    Two-qubit gates store ``(control, target)``. ``origin`` distinguishes
    gates of the input program from SWAPs added by the router.
    """

    id: int
    label: str
    qubits: tuple[int, ...]
    origin: str = ORIGINAL

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"gate id must be non-negative, got {self.id}")
        if len(self.qubits) not in (1, 2):
            raise ValueError(f"gate acts on 1 or 2 qubits, got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        if len(self.qubits) == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"control == target ({self.qubits[0]}) in gate {self.id}")
        if self.origin not in (ORIGINAL, INSERTED_SWAP):
            raise ValueError(f"unknown gate origin {self.origin!r}")

    @property
    def is_two(self) -> bool:
        return len(self.qubits) == 2

    @property
    def qubit(self) -> int:
        return self.qubits[0]

    @property
    def control(self) -> int:
        return self.qubits[0]

    @property
    def target(self) -> int:
        return self.qubits[1]


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over ``width`` qubits; order is program order."""

    width: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        ids = set()
        for g in self.gates:
            if g.id in ids:
                raise ValueError(f"duplicate gate id {g.id}")
            ids.add(g.id)
            if max(g.qubits) >= self.width:
                raise ValueError(
                    f"gate {g.id} touches qubit {max(g.qubits)} but width is {self.width}"
                )

    def signature(self) -> tuple:
        """Structure key ignoring gate ids and origin (for round-trip checks)."""
        return (self.width, tuple((g.label, g.qubits) for g in self.gates))

    def counts_by_label(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for g in self.gates:
            out[g.label] = out.get(g.label, 0) + 1
        return out


def make_circuit(width: int, ops: Iterable[tuple]) -> Circuit:
    """Build a Circuit from ``("u", 0)`` / ``("cx", 0, 1)`` tuples, ids in order."""
    gates = [Gate(i, op[0], tuple(op[1:])) for i, op in enumerate(ops)]
    return Circuit(width, tuple(gates))


def parse_circuit(text: str) -> Circuit:
    """Parse circuit file text. Unknown labels are accepted for single-qubit
    lines; two-qubit lines must use "cx" or "swap"."""
    width: int | None = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if width is None:
            if tokens[0] != "qubits" or len(tokens) != 2:
                raise ParseError(lineno, f"expected 'qubits <N>' header, got {line!r}")
            try:
                width = int(tokens[1])
            except ValueError:
                raise ParseError(lineno, f"qubit count is not an integer: {tokens[1]!r}") from None
            if width < 1:
                raise ParseError(lineno, f"qubit count must be >= 1, got {width}")
            continue
        label = tokens[0]
        try:
            qubits = tuple(int(t) for t in tokens[1:])
        except ValueError:
            raise ParseError(lineno, f"non-integer qubit index in {line!r}") from None
        if len(qubits) == 1:
            pass
        elif len(qubits) == 2:
            if label not in TWO_QUBIT_LABELS:
                raise ParseError(lineno, f"two-qubit label must be one of {TWO_QUBIT_LABELS}, got {label!r}")
            if qubits[0] == qubits[1]:
                raise ParseError(lineno, f"control == target ({qubits[0]})")
        else:
            raise ParseError(lineno, f"expected 1 or 2 qubit indices, got {line!r}")
        for q in qubits:
            if q < 0 or q >= width:
                raise ParseError(lineno, f"qubit index {q} out of range for width {width}")
        gates.append(Gate(len(gates), label, qubits))
    if width is None:
        raise ParseError(1, "missing 'qubits <N>' header")
    return Circuit(width, tuple(gates))


def emit_circuit(c: Circuit) -> str:
    """Emit circuit file text; parse_circuit(emit_circuit(c)) == c up to gate ids."""
    lines = [f"qubits {c.width}"]
    for g in c.gates:
        lines.append(f"{g.label} " + " ".join(str(q) for q in g.qubits))
    return "\n".join(lines) + "\n"
