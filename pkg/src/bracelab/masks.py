"""Subsets of a finite brace stored as bit sets."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable

import numpy as np


class SubsetMask:
    """Bit set over element ids ``0..n-1``; bit i is set iff element i belongs.

    Masks are immutable and compare by bits (and n). Ordering used for
    canonical listings is ``sort_key``: size first, then the bits read as an
    integer.
    """

    __slots__ = ("n", "bits", "__dict__")

    def __init__(self, n: int, bits: int):
        if bits >> n:
            raise ValueError(f"bits beyond element range {n}")
        self.n = n
        self.bits = bits

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> "SubsetMask":
        bits = 0
        for e in elements:
            e = int(e)
            if not 0 <= e < n:
                raise ValueError(f"element {e} out of range for order {n}")
            bits |= 1 << e
        return cls(n, bits)

    @classmethod
    def from_bool(cls, flags: np.ndarray) -> "SubsetMask":
        flags = np.asarray(flags, dtype=bool)
        packed = np.packbits(flags, bitorder="little")
        return cls(len(flags), int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def full(cls, n: int) -> "SubsetMask":
        return cls(n, (1 << n) - 1)

    @classmethod
    def zero(cls, n: int) -> "SubsetMask":
        """The mask holding only the identity element 0."""
        return cls(n, 1)

    @classmethod
    def empty(cls, n: int) -> "SubsetMask":
        return cls(n, 0)

    @cached_property
    def elements(self) -> np.ndarray:
        """Sorted element ids as an int array."""
        return np.flatnonzero(self.as_bool())

    def as_bool(self) -> np.ndarray:
        nbytes = (self.n + 7) // 8
        raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.n].astype(bool)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, e: int) -> bool:
        return bool(self.bits >> int(e) & 1)

    def __iter__(self):
        return iter(int(e) for e in self.elements)

    def _same(self, other: "SubsetMask") -> None:
        if self.n != other.n:
            raise ValueError("masks over different braces")

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._same(other)
        return SubsetMask(self.n, self.bits & other.bits)

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._same(other)
        return SubsetMask(self.n, self.bits | other.bits)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        self._same(other)
        return SubsetMask(self.n, self.bits & ~other.bits)

    def __le__(self, other: "SubsetMask") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "SubsetMask") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "SubsetMask") -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        return isinstance(other, SubsetMask) and (self.n, self.bits) == (other.n, other.bits)

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    @property
    def sort_key(self) -> tuple[int, int]:
        return (len(self), self.bits)

    def is_full(self) -> bool:
        return self.bits == (1 << self.n) - 1

    def is_trivial(self) -> bool:
        return self.bits == 1

    def __repr__(self) -> str:
        els = list(self)
        shown = els if len(els) <= 12 else els[:12] + ["..."]
        return f"SubsetMask(n={self.n}, size={len(els)}, {shown})"
