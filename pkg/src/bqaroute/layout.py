"""Logical<->physical qubit mapping table.

The router corrects this table in place as SWAPs are inserted; its final
state relabels measurement outcomes instead of swapping qubits back.
"""

from __future__ import annotations

from typing import Sequence


class Layout:
    """Mutually inverse logical->physical / physical->logical bijections.

    Always full-chip-sized: a circuit narrower than the chip gets padding
    logical indices so SWAPs stay well-defined on untouched qubits.
    """

    __slots__ = ("log2phys", "phys2log")

    def __init__(self, log2phys: Sequence[int]):
        n = len(log2phys)
        if sorted(log2phys) != list(range(n)):
            raise ValueError(f"layout is not a permutation: {list(log2phys)}")
        self.log2phys = list(log2phys)
        self.phys2log = [0] * n
        for lq, pq in enumerate(self.log2phys):
            self.phys2log[pq] = lq

    @classmethod
    def identity(cls, n: int) -> "Layout":
        return cls(range(n))

    @classmethod
    def from_partial(cls, log2phys: Sequence[int], n: int) -> "Layout":
        """Extend a width-sized placement to a full n-qubit bijection; padding
        logicals take the remaining physical qubits in ascending order."""
        if len(log2phys) > n:
            raise ValueError(f"initial layout places {len(log2phys)} qubits on a {n}-qubit chip")
        taken = set(log2phys)
        free = [p for p in range(n) if p not in taken]
        return cls(list(log2phys) + free)

    def copy(self) -> "Layout":
        new = Layout.__new__(Layout)
        new.log2phys = self.log2phys.copy()
        new.phys2log = self.phys2log.copy()
        return new

    def swap_phys(self, p0: int, p1: int) -> None:
        """Exchange the logical qubits sitting on physical p0 and p1."""
        l0, l1 = self.phys2log[p0], self.phys2log[p1]
        self.phys2log[p0], self.phys2log[p1] = l1, l0
        self.log2phys[l0], self.log2phys[l1] = p1, p0
        assert all(self.phys2log[self.log2phys[q]] == q for q in range(len(self.log2phys)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Layout) and self.log2phys == other.log2phys

    def __repr__(self) -> str:
        return f"Layout(log2phys={self.log2phys})"
