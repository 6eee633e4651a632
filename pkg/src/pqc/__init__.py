"""Private quantum channels as finite unitary ensembles, and the regular
polytopes whose vertex frames mirror them."""

__version__ = "0.1.0"

from .channels import (
    PqcReport,
    apply,
    decrypt,
    encrypt,
    epsilon_of,
    haar_average_estimate,
    is_complete,
    pqc_report,
)
from .ensembles import (
    UnitaryEnsemble,
    complex_rotation,
    gell_mann_ensemble,
    get_ensemble,
    pauli_ensemble,
    polyhedral_ensemble,
    random_subensemble,
    weyl_ensemble,
)
from .linalg import (
    DensityMatrix,
    PureState,
    adjoint,
    hermitian_eigenvalues,
    matmul,
    random_density,
    random_haar_unitary,
    schatten_norm,
    von_neumann_entropy,
)
from .polytopes import (
    Hypervector,
    IsotropyReport,
    Polytope,
    edge_graph,
    hypervector_of,
    platonic,
    regular_4polytope,
    so3_rotation,
    verify_isotropy,
)
from .qft import (
    CorrespondenceRow,
    HypervectorPartition,
    correspondence_report,
    extended_qft_map,
    hypervector_partition,
    qft_matrix,
)
