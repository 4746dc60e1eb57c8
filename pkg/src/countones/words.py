"""Fixed-width unsigned machine words with wraparound arithmetic.

The value domain everything else in this package builds on: unsigned
integers of an explicit bit width between 1 and 64.  Incrementing the
all-ones word yields zero and decrementing zero yields all-ones.  The only
logical connectives are AND and OR; shifts, complement and wider arithmetic
are deliberately absent from the model (the reference popcounts in
:mod:`countones.programs` use them, but only as host-level oracles).

Words are immutable, so they can be shared freely between concurrent
executions.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_WIDTH = 64

__all__ = [
    "MAX_WIDTH",
    "Word",
    "popcount_naive",
    "wrap_inc",
    "wrap_dec",
    "bit_and",
    "bit_or",
    "msb_prefix",
]


@dataclass(frozen=True, slots=True)
class Word:
    """An unsigned ``width``-bit value; ``value`` is reduced mod ``2**width``."""

    width: int
    value: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be 1..{MAX_WIDTH}, got {self.width}")
        object.__setattr__(self, "value", self.value & ((1 << self.width) - 1))

    @classmethod
    def from_bits(cls, bits: str) -> Word:
        """Parse an MSB-first bit string: ``"101111"`` -> width 6, value 47."""
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(len(bits), int(bits, 2))

    def to_bits(self) -> str:
        """MSB-first bit string, zero-padded to the full width."""
        return format(self.value, f"0{self.width}b")

    def is_all_ones(self) -> bool:
        return self.value == (1 << self.width) - 1


def popcount_naive(x: Word) -> int:
    """Count one bits by inspecting every bit.

    This is the ground-truth oracle: every counting program and every fancier
    popcount routine in this package is checked against it, so it must stay
    independent of the ``x AND (x-1)`` trick and of any table or fold.
    """
    v = x.value
    count = 0
    while v:
        count += v & 1
        v >>= 1
    return count


def wrap_inc(x: Word) -> Word:
    """``(value + 1) mod 2**width``; the all-ones word wraps to zero."""
    return Word(x.width, (x.value + 1) & ((1 << x.width) - 1))


def wrap_dec(x: Word) -> Word:
    """``(value - 1) mod 2**width``; zero wraps to the all-ones word."""
    return Word(x.width, (x.value - 1) & ((1 << x.width) - 1))


def _check_widths(a: Word, b: Word) -> None:
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")


def bit_and(a: Word, b: Word) -> Word:
    """Bitwise conjunction; operands must have equal widths."""
    _check_widths(a, b)
    return Word(a.width, a.value & b.value)


def bit_or(a: Word, b: Word) -> Word:
    """Bitwise disjunction; operands must have equal widths."""
    _check_widths(a, b)
    return Word(a.width, a.value | b.value)


def msb_prefix(x: Word, k: int) -> str:
    """The ``k`` most significant bits of ``x`` as an MSB-first string.

    ``k = 0`` yields the empty string; ``k > width`` is a contract violation.
    """
    if not 0 <= k <= x.width:
        raise ValueError(f"prefix length {k} out of range 0..{x.width}")
    return x.to_bits()[:k]
