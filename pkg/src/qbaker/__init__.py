"""Quantum and classical baker's map: exact mean-position orbits and chaos degree."""

from .chaos import (
    BinnedDistribution,
    ChannelMatrix,
    JointDistribution,
    Partition,
    bin_index,
    channel,
    chaos_degree,
    chaos_degree_channel_form,
    chaos_degree_series,
    empirical_joint,
    empirical_marginal,
    sup_over_partitions,
)
from .classical import (
    ClassicalOrbitMode,
    ClassicalPoint,
    SymbolicString,
    baker_step,
    baker_step_inverse,
    classical_q_orbit,
    symbolic_shift,
)
from .closedform import (
    RegimeDecomposition,
    a_power_abs_sq,
    mean_position,
    quantum_orbit,
    t_power_element,
)
from .dyadic import (
    BitString,
    DyadicRational,
    RandomBitSource,
    bitstring_to_dyadic,
    complement,
    dyadic_add,
    initial_value,
    random_bitstring,
)
from .orbit import OrbitSeries

__version__ = "0.1.0"
