"""Closed-form mean position of the quantum baker's map.

r_n = <xi| T^n q T^-n |xi> depends on n only through m mod 4 and p, where
n = m N + p, so every value is an O(N) integer computation and the orbit is
periodic with period 4N. Nothing here touches a 2^N-dimensional vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dyadic import BitString, DyadicRational, initial_value
from .orbit import QUANTUM, OrbitSeries

# single-step amplitude prefactor (1 - i)/2
STEP_PHASE = (1 - 1j) / 2
# N cap for the complex matrix-element route; magnitudes scale like 2^(n/2)
MAX_ELEMENT_QUBITS = 16
# N cap for the exact 2^N-term summation route
MAX_SUM_QUBITS = 14


@dataclass(frozen=True)
class RegimeDecomposition:
    m: int
    p: int

    @classmethod
    def of(cls, n: int, big_n: int) -> "RegimeDecomposition":
        m, p = divmod(n, big_n)
        return cls(m, p)

    def compose(self, big_n: int) -> int:
        return self.m * big_n + self.p


def a_power_abs_sq(n: int, same_index: bool) -> int:
    """|(A^n)_{kj}|^2 for A = [[1, i], [i, 1]], as an exact integer.

    Equals 2^n cos^2(n pi/4) on the diagonal and 2^n sin^2(n pi/4) off it.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    r = n % 4
    if r == 0:
        return (1 << n) if same_index else 0
    if r == 2:
        return 0 if same_index else (1 << n)
    return 1 << (n - 1)


_A = np.array([[1, 1j], [1j, 1]])


def _a_power(n: int) -> np.ndarray:
    return np.linalg.matrix_power(_A, n)


def t_power_element(xi: BitString, zeta: BitString, n: int) -> complex:
    """<xi| T^n |zeta> from the four-branch product formula (floating point)."""
    big_n = xi.n
    if zeta.n != big_n:
        raise ValueError(f"length mismatch: {xi.n} vs {zeta.n}")
    if big_n > MAX_ELEMENT_QUBITS:
        raise ValueError(f"t_power_element supports N <= {MAX_ELEMENT_QUBITS}")
    if n < 0:
        raise ValueError("n must be >= 0")
    x, z = xi.bits, zeta.bits
    pref = STEP_PHASE ** n
    if n < big_n:
        if any(x[n + k] != z[k] for k in range(big_n - n)):
            return 0j
        amp = pref
        for l in range(n):
            amp *= _A[x[l], z[big_n - n + l]]
        return complex(amp)
    m, p = divmod(n, big_n)
    am = _a_power(m)
    amp = pref
    if p == 0:
        for k in range(big_n):
            amp *= am[x[k], z[k]]
        return complex(amp)
    am1 = _a_power(m + 1)
    for k in range(p):
        amp *= am1[x[k], z[big_n - p + k]]
    for l in range(big_n - p):
        amp *= am[x[p + l], z[l]]
    return complex(amp)


def t_power_matrix(big_n: int, n: int) -> np.ndarray:
    """Full 2^N x 2^N matrix of :func:`t_power_element` (small N only)."""
    dim = 1 << big_n
    strings = [BitString.from_int(j, big_n) for j in range(dim)]
    out = np.empty((dim, dim), dtype=complex)
    for a, xa in enumerate(strings):
        for b, zb in enumerate(strings):
            out[a, b] = t_power_element(xa, zb, n)
    return out


def _low_bits(x: int, count: int) -> int:
    return x & ((1 << count) - 1)


def mean_position(xi: BitString, n: int) -> DyadicRational:
    """Exact r_n for the basis state |xi>, any N and any n >= 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return initial_value(xi)
    big_n = xi.n
    x = xi.value
    x_c = (1 << big_n) - 1 - x  # complement string
    m, p = divmod(n, big_n)
    if p == 0:
        return mean_position_at_period(xi, m)
    denom = big_n + 1
    r = m % 4
    if r in (0, 2):
        # sum_{k=1}^{N-p} s_{p+k} 2^-k + 2^p / 2^(N+1)
        src = x if r == 0 else x_c
        tail = _low_bits(src, big_n - p)
        return DyadicRational((tail << (p + 1)) + (1 << p), denom)
    # sum_{k=N-p+1}^{N} s_{k-(N-p)} 2^-k + (2^N - 2^p + 1) / 2^(N+1)
    src = x_c if r == 1 else x
    head = src >> (big_n - p)
    return DyadicRational(2 * head + (1 << big_n) - (1 << p) + 1, denom)


def mean_position_at_period(xi: BitString, m: int) -> DyadicRational:
    """r_n at n = m N. With m = 0 this reproduces the initial value."""
    if m < 0:
        raise ValueError("m must be >= 0")
    r = m % 4
    if r in (1, 3):
        return DyadicRational(1, 1)
    x = xi.value
    src = x if r == 0 else (1 << xi.n) - 1 - x
    return DyadicRational(2 * src + 1, xi.n + 1)


def mean_position_from_sum(xi: BitString, n: int) -> Fraction:
    """r_n by brute summation over all 2^N basis labels j, exact rationals.

    Uses only the |A^k|^2 integer table, i.e. the general product form of the
    mean position before any case analysis on m mod 4 is done.
    """
    big_n = xi.n
    if big_n > MAX_SUM_QUBITS:
        raise ValueError(f"summation route supports N <= {MAX_SUM_QUBITS}")
    x = xi.bits
    total = 0
    for j in range(1 << big_n):
        jb = [(j >> (big_n - 1 - k)) & 1 for k in range(big_n)]
        if n < big_n:
            if any(x[n + k] != jb[k] for k in range(big_n - n)):
                continue
            weight = 1  # |A_{xy}|^2 = 1
        else:
            m, p = divmod(n, big_n)
            weight = 1
            for k in range(p):
                weight *= a_power_abs_sq(m + 1, x[k] == jb[big_n - p + k])
            for l in range(big_n - p):
                weight *= a_power_abs_sq(m, x[p + l] == jb[l])
            if weight == 0:
                continue
        total += (2 * j + 1) * weight
    # q_j = (2j+1)/2^(N+1); |((1-i)/2)^n|^2 = 2^-n
    return Fraction(total, 1 << (big_n + 1 + n))


def quantum_orbit(xi: BitString, n_max: int) -> OrbitSeries:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    values = [mean_position(xi, n) for n in range(n_max + 1)]
    return OrbitSeries(values, QUANTUM, {"N": xi.n, "xi": str(xi)})
