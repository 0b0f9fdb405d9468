"""Exact bit strings, dyadic rationals and seeded bit sources.

Every orbit value produced by this package is a dyadic rational k/2^e, so
all arithmetic on the main path is done with Python integers and never
rounds. Floats appear only when a value is exported or fed to an entropy.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

import numpy as np


@total_ordering
@dataclass(frozen=True)
class DyadicRational:
    """The non-negative number ``numerator / 2**exponent``, kept canonical.

    Canonical means ``exponent == 0`` or ``numerator`` is odd, so two equal
    values always compare equal field by field.
    """

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        num, exp = int(self.numerator), int(self.exponent)
        if num < 0:
            raise ValueError(f"dyadic numerator must be non-negative, got {num}")
        if exp < 0:
            raise ValueError(f"dyadic exponent must be non-negative, got {exp}")
        if num == 0:
            exp = 0
        elif exp:
            shift = min((num & -num).bit_length() - 1, exp)
            num >>= shift
            exp -= shift
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def power_of_two(cls, k: int) -> "DyadicRational":
        """2**k for any integer k."""
        return cls(1 << k, 0) if k >= 0 else cls(1, -k)

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        """Inverse of ``str``: accepts ``"n/2^e"`` or a bare integer."""
        m = re.fullmatch(r"\s*(\d+)\s*(?:/\s*2\^(\d+))?\s*", text)
        if m is None:
            raise ValueError(f"not a dyadic rational: {text!r}")
        return cls(int(m.group(1)), int(m.group(2) or 0))

    def _aligned(self, other: "DyadicRational") -> tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        return (self.numerator << (e - self.exponent),
                other.numerator << (e - other.exponent), e)

    def __add__(self, other):
        if not isinstance(other, DyadicRational):
            return NotImplemented
        a, b, e = self._aligned(other)
        return DyadicRational(a + b, e)

    def __sub__(self, other):
        if not isinstance(other, DyadicRational):
            return NotImplemented
        a, b, e = self._aligned(other)
        if a < b:
            raise ValueError("dyadic subtraction would go negative")
        return DyadicRational(a - b, e)

    def __mul__(self, other):
        if isinstance(other, int):
            return DyadicRational(self.numerator * other, self.exponent)
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return DyadicRational(self.numerator * other.numerator,
                              self.exponent + other.exponent)

    __rmul__ = __mul__

    def __lt__(self, other):
        if not isinstance(other, DyadicRational):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return a < b

    def __float__(self) -> float:
        num, exp = self.numerator, self.exponent
        # keep 64 significant bits so huge numerators do not overflow int->float
        excess = num.bit_length() - 64
        if excess > 0:
            num >>= excess
            exp -= excess
        return math.ldexp(float(num), -exp)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"


ZERO = DyadicRational(0)
ONE = DyadicRational(1)
HALF = DyadicRational(1, 1)


def dyadic_add(a: DyadicRational, b: DyadicRational) -> DyadicRational:
    return a + b


@dataclass(frozen=True)
class BitString:
    """Finite 0/1 string ``xi_1 ... xi_N``; ``xi_1`` is the most significant digit."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ValueError("bit string must have length >= 1")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not an ASCII 0/1 string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_int(cls, value: int, n: int) -> "BitString":
        if not 0 <= value < (1 << n):
            raise ValueError(f"{value} does not fit in {n} bits")
        return cls(tuple((value >> (n - 1 - k)) & 1 for k in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        """Integer j = sum_k bits_k 2^(N-k)."""
        return int(str(self), 2)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, k):
        return self.bits[k]

    def __iter__(self):
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def bitstring_to_dyadic(xi: BitString) -> DyadicRational:
    """sum_k xi_k 2^-k, i.e. the binary fraction 0.xi_1...xi_N."""
    return DyadicRational(xi.value, xi.n)


def initial_value(xi: BitString) -> DyadicRational:
    """Binary fraction 0.xi_1...xi_N 1, the midpoint of the dyadic cell of xi."""
    return DyadicRational(2 * xi.value + 1, xi.n + 1)


def complement(xi: BitString) -> BitString:
    return BitString(tuple(1 - b for b in xi.bits))


class RandomBitSource:
    """Seeded stream of fair bits backed by numpy's PCG64.

    ``stream`` is a spawn key: sources with the same seed and different
    streams are statistically independent, which is how concurrent workers
    should split one seed. A source is single-owner; do not share it.
    """

    def __init__(self, seed: int, stream: Sequence[int] = ()):
        self.seed = int(seed)
        self.stream = tuple(int(s) for s in stream)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.stream)
        self._rng = np.random.Generator(np.random.PCG64(seq))

    def bits(self, count: int) -> np.ndarray:
        return self._rng.integers(0, 2, size=count, dtype=np.uint8)

    def __repr__(self) -> str:
        return f"RandomBitSource(seed={self.seed}, stream={self.stream})"


def random_bitstring(n: int, src: RandomBitSource) -> BitString:
    if n < 1:
        raise ValueError(f"bit string length must be >= 1, got {n}")
    return BitString(tuple(src.bits(n).tolist()))


def bits_to_int(bits: Iterable[int]) -> int:
    """Big-endian integer from a bit iterable (fast path for long streams)."""
    arr = np.fromiter(bits, dtype=np.uint8)
    if arr.size == 0:
        return 0
    pad = (-arr.size) % 8
    packed = np.packbits(np.concatenate([np.zeros(pad, np.uint8), arr]))
    return int.from_bytes(packed.tobytes(), "big")
