"""Entropic chaos degree of a scalar orbit on [0, 1].

Bin occupation is counted exactly (integer counts over a window of W
steps); probabilities are count/W. Floats enter only when logarithms are
taken, so two orbits with identical bin sequences give bit-identical D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .dyadic import ONE, DyadicRational
from .orbit import OrbitSeries

DEFAULT_WINDOW = 100
DEFAULT_BINS = 100
DEFAULT_LOG_BASE = 2.0


@dataclass(frozen=True)
class Partition:
    """K equal bins [k/K, (k+1)/K), the last one closed at 1."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("partition needs at least one bin")

    def index(self, x: DyadicRational) -> int:
        return bin_index(x, self.k)

    def edges(self) -> list[Fraction]:
        return [Fraction(i, self.k) for i in range(self.k + 1)]


def bin_index(x: DyadicRational, k: int) -> int:
    """floor(K x) clamped to K - 1, by integer arithmetic on the dyadic value."""
    if x > ONE:
        raise ValueError(f"value {x} outside [0, 1]")
    return min((k * x.numerator) >> x.exponent, k - 1)


def orbit_bins(orbit: OrbitSeries | Sequence[DyadicRational], partition: Partition) -> np.ndarray:
    return np.fromiter((bin_index(v, partition.k) for v in orbit), dtype=np.int64,
                       count=len(orbit))


@dataclass(frozen=True)
class BinnedDistribution:
    counts: np.ndarray  # shape (K,), sums to window
    start: int
    window: int

    @property
    def k(self) -> int:
        return self.counts.shape[0]

    def probabilities(self) -> list[Fraction]:
        return [Fraction(int(c), self.window) for c in self.counts]

    def as_array(self) -> np.ndarray:
        return self.counts / self.window


@dataclass(frozen=True)
class JointDistribution:
    counts: np.ndarray  # shape (K, K); counts[i, j] = #{k: x_k in B_i, x_{k+1} in B_j}
    start: int
    window: int

    @property
    def k(self) -> int:
        return self.counts.shape[0]

    def probability(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.counts[i, j]), self.window)

    def row_marginal(self) -> np.ndarray:
        return self.counts.sum(axis=1)


def _check_window(length: int, start: int, window: int, lookahead: int) -> None:
    if window < 1:
        raise ValueError("window length must be >= 1")
    if start < 0 or start + window - 1 + lookahead >= length:
        raise ValueError(
            f"window [{start}, {start + window - 1 + lookahead}] exceeds orbit of length {length}")


def marginal_from_bins(bins: np.ndarray, start: int, window: int, k: int) -> BinnedDistribution:
    _check_window(len(bins), start, window, 0)
    counts = np.bincount(bins[start:start + window], minlength=k)
    return BinnedDistribution(counts, start, window)


def joint_from_bins(bins: np.ndarray, start: int, window: int, k: int) -> JointDistribution:
    _check_window(len(bins), start, window, 1)
    src = bins[start:start + window]
    dst = bins[start + 1:start + window + 1]
    counts = np.bincount(src * k + dst, minlength=k * k).reshape(k, k)
    return JointDistribution(counts, start, window)


def empirical_marginal(orbit: OrbitSeries, n: int, window: int,
                       partition: Partition) -> BinnedDistribution:
    """p_i = #{k in [n, n+W-1]: x_k in B_i} / W."""
    _check_window(len(orbit), n, window, 0)
    bins = orbit_bins(orbit[n:n + window], partition)
    return BinnedDistribution(np.bincount(bins, minlength=partition.k), n, window)


def empirical_joint(orbit: OrbitSeries, n: int, window: int,
                    partition: Partition) -> JointDistribution:
    """p_ij = #{k in [n, n+W-1]: x_k in B_i, x_{k+1} in B_j} / W."""
    _check_window(len(orbit), n, window, 1)
    bins = orbit_bins(orbit[n:n + window + 1], partition)
    joint = joint_from_bins(bins, 0, window, partition.k)
    return JointDistribution(joint.counts, n, window)


def _check_pair(joint: JointDistribution, marginal: BinnedDistribution) -> None:
    if (joint.start, joint.window, joint.k) != (marginal.start, marginal.window, marginal.k):
        raise ValueError("joint and marginal distributions come from different windows")
    if not np.array_equal(joint.row_marginal(), marginal.counts):
        raise ValueError("joint row sums do not reproduce the marginal")


@dataclass(frozen=True)
class ChannelMatrix:
    """Column-stochastic transition matrix; column i is the law of the next bin given bin i.

    Columns with p_i = 0 are undefined and never used.
    """

    joint_counts: np.ndarray
    marginal_counts: np.ndarray

    @property
    def defined(self) -> np.ndarray:
        return self.marginal_counts > 0

    def column(self, i: int) -> list[Fraction]:
        c = int(self.marginal_counts[i])
        if c == 0:
            raise ValueError(f"channel column {i} undefined (p_i = 0)")
        return [Fraction(int(v), c) for v in self.joint_counts[i]]

    def as_array(self) -> np.ndarray:
        """Float matrix indexed [j, i]; undefined columns are NaN."""
        out = np.full(self.joint_counts.shape, np.nan)
        ok = self.defined
        out[:, ok] = (self.joint_counts[ok] / self.marginal_counts[ok, None]).T
        return out

    def apply(self, p: np.ndarray) -> np.ndarray:
        """Push a distribution through the defined columns."""
        mat = np.nan_to_num(self.as_array())
        return mat @ np.asarray(p, dtype=float)


def channel(joint: JointDistribution, marginal: BinnedDistribution) -> ChannelMatrix:
    _check_pair(joint, marginal)
    return ChannelMatrix(joint.counts, marginal.counts)


def _log(x: float, base: float) -> float:
    return math.log(x) if base == math.e else math.log(x) / math.log(base)


def _check_base(base: float) -> None:
    if not (base > 0 and base != 1):
        raise ValueError(f"invalid log base {base}")


def chaos_degree(joint: JointDistribution, marginal: BinnedDistribution,
                 base: float = DEFAULT_LOG_BASE) -> float:
    """D = sum_{ij, p_ij > 0} p_ij log(p_i / p_ij)."""
    _check_pair(joint, marginal)
    _check_base(base)
    w = joint.window
    total = 0.0
    rows, cols = np.nonzero(joint.counts)
    for i, j in zip(rows.tolist(), cols.tolist()):
        c_ij = int(joint.counts[i, j])
        c_i = int(marginal.counts[i])
        if c_ij != c_i:
            total += c_ij * _log(c_i / c_ij, base)
    return total / w


def shannon_entropy(p: Iterable[float], base: float = DEFAULT_LOG_BASE) -> float:
    return -sum(x * _log(x, base) for x in p if x > 0)


def chaos_degree_channel_form(joint: JointDistribution, marginal: BinnedDistribution,
                              base: float = DEFAULT_LOG_BASE) -> float:
    """D = sum_i p_i S(Lambda* delta_i): mean entropy of the channel columns."""
    lam = channel(joint, marginal)
    p = marginal.as_array()
    total = 0.0
    for i in np.flatnonzero(lam.defined):
        total += p[i] * shannon_entropy([float(v) for v in lam.column(int(i))], base)
    return total


def chaos_degree_series(orbit: OrbitSeries | np.ndarray, window: int, partition: Partition,
                        base: float = DEFAULT_LOG_BASE) -> list[tuple[int, float]]:
    """Sliding-window D at every start n in [0, len - W - 1].

    ``orbit`` may be an :class:`OrbitSeries` or a precomputed bin array.
    """
    bins = orbit if isinstance(orbit, np.ndarray) else orbit_bins(orbit, partition)
    if window < 1:
        raise ValueError("window length must be >= 1")
    if len(bins) < window + 1:
        raise ValueError(f"orbit of length {len(bins)} too short for window {window}")
    k = partition.k
    out = []
    for n in range(len(bins) - window):
        marginal = marginal_from_bins(bins, n, window, k)
        joint = joint_from_bins(bins, n, window, k)
        out.append((n, chaos_degree(joint, marginal, base)))
    return out


def chaos_degree_at(bins: np.ndarray, start: int, window: int, k: int,
                    base: float = DEFAULT_LOG_BASE) -> float:
    return chaos_degree(joint_from_bins(bins, start, window, k),
                        marginal_from_bins(bins, start, window, k), base)


def sup_over_partitions(orbit: OrbitSeries, n: int, window: int, k_list: Sequence[int],
                        base: float = DEFAULT_LOG_BASE) -> tuple[int, float, dict[int, float]]:
    """Largest D over the uniform partitions in ``k_list``; returns (K*, D*, D per K)."""
    if not k_list:
        raise ValueError("k_list must be nonempty")
    segment = orbit[n:n + window + 1]
    if len(segment) < window + 1:
        raise ValueError("window exceeds orbit")
    per_k = {}
    for k in k_list:
        bins = orbit_bins(segment, Partition(k))
        per_k[k] = chaos_degree_at(bins, 0, window, k, base)
    best = max(per_k, key=lambda k: (per_k[k], -k))
    return best, per_k[best], per_k
