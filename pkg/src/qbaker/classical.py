"""Classical baker's transformation and its Bernoulli-shift symbolic dynamics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .dyadic import HALF, ONE, BitString, DyadicRational, RandomBitSource, bits_to_int
from .orbit import CLASSICAL_EXTENDED, CLASSICAL_TRUNCATED, DigitStreamValues, OrbitSeries

# extra continuation digits kept past the last observed step in extended mode
DEFAULT_GUARD_BITS = 64


@dataclass(frozen=True)
class ClassicalPoint:
    q: DyadicRational
    p: DyadicRational

    def __post_init__(self):
        for name in ("q", "p"):
            if getattr(self, name) > ONE:
                raise ValueError(f"{name} outside [0, 1]: {getattr(self, name)}")


def baker_step(pt: ClassicalPoint) -> ClassicalPoint:
    """(2q, p/2) for q <= 1/2, otherwise (2q - 1, (p + 1)/2)."""
    if pt.q <= HALF:
        return ClassicalPoint(pt.q * 2, pt.p * HALF)
    return ClassicalPoint(pt.q * 2 - ONE, (pt.p + ONE) * HALF)


def baker_step_inverse(pt: ClassicalPoint) -> ClassicalPoint:
    """Inverse of :func:`baker_step` away from the cut lines q = 1/2, p in {0, 1}."""
    if pt.p < HALF:
        return ClassicalPoint(pt.q * HALF, pt.p * 2)
    return ClassicalPoint((pt.q + ONE) * HALF, pt.p * 2 - ONE)


@dataclass(frozen=True)
class SymbolicString:
    """Two-sided string ``... xi_-1 xi_0 . xi_1 xi_2 ...`` truncated on both sides.

    ``past`` is stored nearest-the-dot first: ``past[0] = xi_0``,
    ``past[1] = xi_-1``. ``future[0] = xi_1``.
    """

    past: tuple[int, ...]
    future: tuple[int, ...]

    def decode(self) -> ClassicalPoint:
        q = DyadicRational(bits_to_int(self.future), len(self.future))
        # p = sum_k xi_-k 2^(-k-1) = 0.xi_0 xi_-1 ...
        p = DyadicRational(bits_to_int(self.past), len(self.past))
        return ClassicalPoint(q, p)

    def __str__(self) -> str:
        left = "".join(map(str, reversed(self.past)))
        return f"{left}.{''.join(map(str, self.future))}"


def symbolic_shift(s: SymbolicString) -> SymbolicString:
    """Move the dot one place to the right."""
    if not s.future:
        raise IndexError("symbolic expansion exhausted: no future digits left to shift")
    return SymbolicString((s.future[0],) + s.past, s.future[1:])


@dataclass(frozen=True)
class ClassicalOrbitMode:
    """How the digit stream continues after ``xi_1 ... xi_N 1``.

    ``truncated``: all zeros, so the point is exactly the dyadic r_0.
    ``extended``: fresh seeded random digits, a generic real point that
    agrees with r_0 on its first N+1 digits.
    """

    kind: Literal["truncated", "extended"] = "truncated"
    seed: int | None = None
    guard_bits: int = DEFAULT_GUARD_BITS

    def __post_init__(self):
        if self.kind not in ("truncated", "extended"):
            raise ValueError(f"unknown classical mode {self.kind!r}")
        if self.kind == "extended" and self.seed is None:
            raise ValueError("extended mode needs a seed")

    @classmethod
    def truncated(cls) -> "ClassicalOrbitMode":
        return cls("truncated")

    @classmethod
    def extended(cls, seed: int, guard_bits: int = DEFAULT_GUARD_BITS) -> "ClassicalOrbitMode":
        return cls("extended", seed, guard_bits)

    def source(self, n: int) -> RandomBitSource:
        # stream key separates continuation digits from the initial string draw
        return RandomBitSource(self.seed, stream=(n, 1))


def classical_q_orbit(xi: BitString, n_max: int, mode: ClassicalOrbitMode) -> OrbitSeries:
    """q_n = sum_k s_{n+k} 2^-k for the digit stream s = xi, 1, continuation."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    head = (xi.value << 1) | 1
    length = xi.n + 1
    if mode.kind == "extended":
        extra = n_max + mode.guard_bits
        tail = bits_to_int(mode.source(xi.n).bits(extra).tolist())
        head = (head << extra) | tail
        length += extra
        provenance = CLASSICAL_EXTENDED
    else:
        provenance = CLASSICAL_TRUNCATED
    values = DigitStreamValues(head, length, n_max + 1)
    meta = {"N": xi.n, "xi": str(xi), "classical_mode": mode.kind}
    if mode.kind == "extended":
        meta["continuation_seed"] = mode.seed
    return OrbitSeries(values, provenance, meta)
