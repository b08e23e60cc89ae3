"""Entanglement measures built on the fidelity of separability.

The central object is a solver that decomposes a mixed state into pure
states whose weighted separability fidelities sum to the state's own,
yielding the geometric measure, the closest separable state, and the
Bures and Groverian measures along the way. Two-qubit closed forms in
terms of the concurrence serve as exact cross-checks throughout.
"""

from .geometric import ClosestProductResult, fs_pure_bipartite, fs_pure_multipartite
from .linalg import (
    eig_hermitian,
    haar_random_unitary,
    partial_trace,
    random_density_matrix,
    sqrt_psd,
    tensor_product,
)
from .measures import (
    MeasureReport,
    binary_entropy,
    bures_measure_2q,
    concurrence,
    entanglement_of_formation_2q,
    er_lower_bound,
    fidelity,
    fs_2q,
    geometric_measure_2q,
    groverian_measure,
    relative_entropy,
    report_all,
    von_neumann_entropy,
)
from .roof import (
    ConvexSetResult,
    ConvexSetSpec,
    RoofResult,
    align_decomposition,
    closest_separable_from,
    convex_set_fidelity,
    solve_generalized_roof,
    solve_roof,
    stationarity_residual,
    two_qubit_schmidt_uniformity,
)
from .states import (
    Decomposition,
    DensityMatrix,
    ProductVector,
    PureState,
    SeparableEnsemble,
    StateValidationError,
    assemble,
    bell_state,
    decomposition_from_unitary,
    ghz_state,
    gvp_closest_separable,
    gvp_state,
    purify,
    w_state,
)
from .stateio import StateFormatError, loads, dumps, read_state, write_state

__version__ = "0.1.0"

__all__ = [
    "ClosestProductResult",
    "ConvexSetResult",
    "ConvexSetSpec",
    "Decomposition",
    "DensityMatrix",
    "MeasureReport",
    "ProductVector",
    "PureState",
    "RoofResult",
    "SeparableEnsemble",
    "StateFormatError",
    "StateValidationError",
    "align_decomposition",
    "assemble",
    "bell_state",
    "binary_entropy",
    "bures_measure_2q",
    "closest_separable_from",
    "concurrence",
    "convex_set_fidelity",
    "decomposition_from_unitary",
    "dumps",
    "eig_hermitian",
    "entanglement_of_formation_2q",
    "er_lower_bound",
    "fidelity",
    "fs_2q",
    "fs_pure_bipartite",
    "fs_pure_multipartite",
    "geometric_measure_2q",
    "ghz_state",
    "groverian_measure",
    "gvp_closest_separable",
    "gvp_state",
    "haar_random_unitary",
    "loads",
    "partial_trace",
    "purify",
    "random_density_matrix",
    "read_state",
    "relative_entropy",
    "report_all",
    "solve_generalized_roof",
    "solve_roof",
    "sqrt_psd",
    "stationarity_residual",
    "tensor_product",
    "two_qubit_schmidt_uniformity",
    "von_neumann_entropy",
    "w_state",
    "write_state",
]
