"""Thermal entanglement of two transmons coupled through a tunable coupler."""

__version__ = "0.1.0"

from .circuit import (  # noqa: E402
    CircuitParams,
    CircuitTopology,
    CouplingSet,
    JunctionPair,
    TransmonMode,
    capacitance_matrix,
    check_hierarchy,
    coupling_strengths,
    transmon_frequency,
    tunable_josephson_energy,
)
from .effective_model import (  # noqa: E402
    EffectiveTwoQubit,
    ThreeModeSpins,
    analytic_eigensystem,
    effective_hamiltonian,
    numeric_eigensystem,
    swt_reduce,
)
from .entanglement import (  # noqa: E402
    PureState4,
    concurrence_pure,
    concurrence_thermal,
    concurrence_wootters,
    critical_temperature,
)
from .thermal import DensityMatrix, gibbs_state, partition_function, xstate_elements  # noqa: E402
