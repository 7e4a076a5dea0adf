"""Two-particle finite-dimensional quantum channels: states, coupling, measurement,
tomography and entanglement classification."""
from .classify import (
    Classification,
    DegeneracyProfile,
    classify_state,
    degeneracy_profile,
    disentanglement_residual,
    entanglement_entropy,
    entropy_sweep,
    ppt_min_eigenvalue,
    von_neumann_entropy,
)
from .coupling import (
    CoupledBasis,
    clebsch_gordan,
    coupled_basis,
    coupled_mixture,
    coupled_pure,
    paraqubit_family,
    paraqutrit_d_family,
    product_manifold_state,
)
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .ladder import completed_family, ladder_operators, tomography_family
from .matcore import Dims, eig_hermitian, partial_trace, partial_transpose, tensor
from .measurement import (
    born_probabilities,
    conditional_and_marginals,
    joint_distribution,
    reduce_general,
    reduce_qubit,
    sample_counts,
)
from .states import (
    classical_correlated_mix,
    epr_state,
    pure_from_vector,
    qubit_mixed,
    qubit_pure,
    validate,
)
from .tomography import TomographySeries, qubit_bloch_tomography, reconstruct, simulate_series

__version__ = "0.1.0"
