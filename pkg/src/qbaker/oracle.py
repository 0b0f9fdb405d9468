"""Brute-force dense matrices for the quantized baker's map on N qubits.

Basis label j = sum_k j_k 2^(N-k), so qubit 1 is the most significant index
bit and ``np.kron`` order matches qubit order. Everything here is O(D^2) or
O(D^3) with D = 2^N; it exists to check the closed forms, not to replace them.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .dyadic import BitString

MAX_QUBITS = 12
MAX_ORACLE_QUBITS = 10
MAX_ORACLE_STEPS = 64

STRUCTURAL_TOL = 1e-10
CROSS_MODULE_TOL = 1e-9


def _check_qubits(n: int, cap: int = MAX_QUBITS, low: int = 1) -> None:
    if not low <= n <= cap:
        raise ValueError(f"qubit count {n} outside supported range [{low}, {cap}]")


def qft(n: int) -> np.ndarray:
    """F_N |j> = D^-1/2 sum_xi exp(2 pi i xi j / D) |xi>."""
    _check_qubits(n, low=0)
    dim = 1 << n
    idx = np.arange(dim)
    return np.exp(2j * np.pi * np.outer(idx, idx) / dim) / np.sqrt(dim)


def antiperiodic_qft(n: int) -> np.ndarray:
    """Fourier matrix on the half-integer grid: exp(2 pi i (xi+1/2)(j+1/2)/D)/sqrt(D).

    This is the transform adapted to position eigenvalues (j + 1/2)/D. For
    n = 0 it is the 1x1 phase i, which fixes the overall phase of T.
    """
    _check_qubits(n, low=0)
    dim = 1 << n
    half = np.arange(dim) + 0.5
    return np.exp(2j * np.pi * np.outer(half, half) / dim) / np.sqrt(dim)


def partial_fourier(m: int, n: int, antiperiodic: bool = False) -> np.ndarray:
    """G_m = I on the first m qubits, Fourier transform on the last N - m."""
    _check_qubits(n)
    if not 0 <= m <= n:
        raise ValueError(f"partial Fourier index m={m} outside [0, {n}]")
    fourier = antiperiodic_qft(n - m) if antiperiodic else qft(n - m)
    return np.kron(np.eye(1 << m), fourier)


def bit_reversal(n: int) -> np.ndarray:
    """Permutation |j_1 ... j_N> -> |j_N ... j_1>."""
    dim = 1 << n
    perm = np.zeros((dim, dim))
    for j in range(dim):
        rev = int(format(j, f"0{n}b")[::-1], 2)
        perm[rev, j] = 1.0
    return perm


def dot_state_basis(m: int, n: int) -> np.ndarray:
    """Columns are the states |xi_1..xi_{N-m} . xi_{N-m+1}..xi_N>.

    Each is G_m applied to the reordered ket |xi_{N-m+1}..xi_N xi_{N-m}..xi_1>,
    with the antiperiodic Fourier factor.
    """
    dim = 1 << n
    perm = np.zeros((dim, dim))
    for col in range(dim):
        bits = format(col, f"0{n}b")
        row = bits[n - m:] + bits[:n - m][::-1]
        perm[int(row, 2), col] = 1.0
    return partial_fourier(m, n, antiperiodic=True) @ perm


def baker_unitary(n: int) -> np.ndarray:
    """Quantum baker's map T as a dense matrix.

    T sends |.xi_1..xi_N> to |xi_1.xi_2..xi_N>, i.e. T = B_{N-1} B_N^-1 in
    dot-state bases. The dot-state labels run opposite to the position
    labels, hence the conjugation by the bit reversal.
    """
    _check_qubits(n)
    rev = bit_reversal(n)
    t = dot_state_basis(n - 1, n) @ dot_state_basis(n, n).conj().T
    return rev @ t @ rev


def position_eigenvalues(n: int) -> np.ndarray:
    dim = 1 << n
    return (np.arange(dim) + 0.5) / dim


def position_operator(n: int) -> np.ndarray:
    _check_qubits(n)
    return np.diag(position_eigenvalues(n)).astype(complex)


def momentum_operator(n: int) -> np.ndarray:
    f = qft(n)
    return f @ position_operator(n) @ f.conj().T


def weyl_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Displacement unitaries (U, V) with U V = exp(2 pi i / D) V U.

    U = exp(2 pi i q) kicks momentum. V = exp(-2 pi i p) translates position
    forward by one grid step; with p = F q F* it is the sign that yields the
    commutation phase +2 pi / D. Both exponentials are taken on the
    eigenbasis, so no general matrix exponential is needed.
    """
    _check_qubits(n)
    phases = np.exp(2j * np.pi * position_eigenvalues(n))
    u = np.diag(phases)
    f = qft(n)
    v = f @ np.diag(phases.conj()) @ f.conj().T
    return u, v


def weyl_phase(n: int) -> complex:
    return np.exp(2j * np.pi / (1 << n))


def vacuum_state(n: int) -> np.ndarray:
    _check_qubits(n)
    q = position_eigenvalues(n)
    psi = np.exp(-q ** 2 / 2).astype(complex)
    return psi / np.linalg.norm(psi)


@dataclass(frozen=True)
class CoherentState:
    x: int
    v: int
    vector: np.ndarray

    @property
    def alpha(self) -> complex:
        return complex(self.x, self.v)


def coherent_state(x: int, v: int, n: int) -> CoherentState:
    """C exp(2 pi i q v) exp(-2 pi i p x) |psi_0>, normalized."""
    _check_qubits(n)
    q = position_eigenvalues(n)
    f = qft(n)
    psi = vacuum_state(n)
    # exp(-2 pi i p x) = F exp(-2 pi i q x) F*
    psi = f @ (np.exp(-2j * np.pi * q * x) * (f.conj().T @ psi))
    psi = np.exp(2j * np.pi * q * v) * psi
    return CoherentState(int(x), int(v), psi / np.linalg.norm(psi))


def _evolved_probabilities(state: np.ndarray, t: np.ndarray, steps: int) -> np.ndarray:
    # T^-n |psi> = (T*)^n |psi>
    t_dag = t.conj().T
    for _ in range(steps):
        state = t_dag @ state
    return np.abs(state) ** 2


def _check_steps(steps: int) -> None:
    if not 0 <= steps <= MAX_ORACLE_STEPS:
        raise ValueError(f"oracle steps {steps} outside [0, {MAX_ORACLE_STEPS}]")


def oracle_mean_position(xi: BitString, n: int, t: np.ndarray | None = None) -> float:
    """sum_j q_j |<xi|T^n|j>|^2 by repeated dense multiplication."""
    _check_qubits(xi.n, MAX_ORACLE_QUBITS)
    _check_steps(n)
    if t is None:
        t = baker_unitary(xi.n)
    state = np.zeros(1 << xi.n, dtype=complex)
    state[xi.value] = 1.0
    probs = _evolved_probabilities(state, t, n)
    return float(probs @ position_eigenvalues(xi.n))


def oracle_mean_positions(n: int, steps: int, t: np.ndarray | None = None) -> np.ndarray:
    """r_s for every basis string at once: array of shape (steps + 1, 2^N)."""
    _check_qubits(n, MAX_ORACLE_QUBITS)
    _check_steps(steps)
    if t is None:
        t = baker_unitary(n)
    q = position_eigenvalues(n)
    dim = 1 << n
    power = np.eye(dim, dtype=complex)
    out = np.empty((steps + 1, dim))
    for s in range(steps + 1):
        out[s] = (np.abs(power) ** 2) @ q
        power = power @ t
    return out


def oracle_coherent_mean(x: int, v: int, n: int, big_n: int) -> float:
    """<alpha| T^n q T^-n |alpha>; no closed form exists for comparison."""
    _check_qubits(big_n, MAX_ORACLE_QUBITS)
    _check_steps(n)
    state = coherent_state(x, v, big_n).vector
    probs = _evolved_probabilities(state, baker_unitary(big_n), n)
    return float(probs @ position_eigenvalues(big_n))


def max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def unitarity_residual(u: np.ndarray) -> float:
    return max_abs(u.conj().T @ u - np.eye(u.shape[0]))


def dump_operator_csv(op: np.ndarray, handle) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(("row", "col", "re", "im"))
    for (r, c), val in np.ndenumerate(op):
        writer.writerow((r, c, repr(float(val.real)), repr(float(val.imag))))
