"""
Invertibility sequences: bit i (1-based) is set iff M_i is invertible
"""
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, List, Tuple


@dataclass(frozen=True)
class InvertibilitySequence:
    bits: Tuple[bool, ...]

    @classmethod
    def from_bits(cls, bits: Iterable[bool]) -> "InvertibilitySequence":
        return cls(tuple(bool(b) for b in bits))

    @classmethod
    def from_string(cls, text: str) -> "InvertibilitySequence":
        if set(text) - {'0', '1'}:
            raise ValueError(f"invertibility sequence must be a 0/1 string, got {text!r}")
        return cls(tuple(ch == '1' for ch in text))

    @property
    def n(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, order: int) -> bool:
        """Invertibility of M_order, 1-based"""
        if not 1 <= order <= self.n:
            raise IndexError(f"order {order} outside 1..{self.n}")
        return self.bits[order - 1]

    @property
    def singular_orders(self) -> List[int]:
        return [i for i, bit in enumerate(self.bits, start=1) if not bit]

    def runs(self) -> List[Tuple[int, int]]:
        """Run-length pairs (bit, count), leftmost first"""
        return [(int(bit), sum(1 for _ in group)) for bit, group in groupby(self.bits)]

    def to_string(self) -> str:
        return ''.join('1' if bit else '0' for bit in self.bits)

    def first_difference(self, other: "InvertibilitySequence") -> int:
        """Smallest order where the two sequences disagree, 0 if none"""
        for i, (a, b) in enumerate(zip(self.bits, other.bits), start=1):
            if a != b:
                return i
        if self.n != other.n:
            return min(self.n, other.n) + 1
        return 0

    def __str__(self) -> str:
        return self.to_string()
