"""Entropic measures of nonclassical correlation for multipartite density matrices.

``D`` is the minimum Shannon entropy of local product-basis measurement
outcomes minus the von Neumann entropy (estimated by randomized search,
always an upper bound). ``G`` is the exact value of an eigenvalue
partitioning game. Negativity is included as the separability baseline.
"""

from qcorr.entropy import binary_entropy, shannon, vn_entropy
from qcorr.errors import ConvergenceError, InvalidStateError, ParseError, PartitionBudgetExceeded, QCorrError
from qcorr.linalg import DensityMatrix, hermitian_eig, kron, partial_trace, partial_transpose
from qcorr.measure_d import DEstimate, LocalBasis, estimate_D, projected_distribution, random_local_basis
from qcorr.measure_g import GResult, F_k, compute_G, enumerate_partitions, mimic_spectrum, partition_count
from qcorr.negativity import Bipartition, negativity, negativity_extremes
from qcorr.states import (
    StateSpec,
    bell_mixture,
    classical_state,
    horodecki_2x4,
    pseudo_ghz,
    pseudo_pure,
    sigma_p,
)
from qcorr.textio import load_density, save_density

__version__ = "0.1.0"

__all__ = [
    "bell_mixture",
    "binary_entropy",
    "Bipartition",
    "classical_state",
    "compute_G",
    "ConvergenceError",
    "DensityMatrix",
    "DEstimate",
    "enumerate_partitions",
    "estimate_D",
    "F_k",
    "GResult",
    "hermitian_eig",
    "horodecki_2x4",
    "InvalidStateError",
    "kron",
    "load_density",
    "LocalBasis",
    "mimic_spectrum",
    "negativity",
    "negativity_extremes",
    "ParseError",
    "partial_trace",
    "partial_transpose",
    "partition_count",
    "PartitionBudgetExceeded",
    "projected_distribution",
    "pseudo_ghz",
    "pseudo_pure",
    "QCorrError",
    "random_local_basis",
    "save_density",
    "shannon",
    "sigma_p",
    "StateSpec",
    "vn_entropy",
]
