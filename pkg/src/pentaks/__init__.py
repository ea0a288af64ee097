"""Pentagram operators, contextuality bounds and derived paradoxes."""

from ._kernels import available_backends, backend_name, get_backend
from .errors import (
    CollapseError,
    DegeneracyError,
    DomainError,
    NoViolationError,
    NotApplicableError,
    PentaksError,
    SearchFailedError,
    SingularFamilyError,
    ValidationError,
)
from .magic import (
    CanonicalDecomposition,
    TailoredPentagram,
    aligned_pentagram,
    canonical_decompose,
    concurrence,
    concurrence_two_qubit,
    from_magic_basis,
    tailor_pentagram,
    to_magic_basis,
)
from .orthograph import (
    ClassicalMaxResult,
    KSAssignment,
    OrthogonalityGraph,
    cabello18,
    classical_max,
    graph_from_json,
    graph_to_json,
    induced_pentagons,
    pentagon_cycle_order,
    realize_ks_subgraph,
    statevector_from_json,
    statevector_to_json,
    validate_graph,
)
from .paradoxes import (
    GameStats,
    HardyGraph,
    HardyParams,
    av_game,
    hardy_construct,
    hardy_maximize,
    ks_identity_residual,
    ks_probability,
    maximize_ks_probability,
)
from .pentagram3 import (
    Pentagram,
    PentagramParams,
    build_family,
    characteristic_cubic,
    closed_form_overlap_sum,
    degenerate_pentagram,
    max_eigenvalue_over_family,
    min_overlap_sum_scan,
    overlap_sum,
    regular_pentagram,
    spectrum_curve,
    spectrum_from_overlap_sum,
    violation_cone_angle,
)
from .pentagram4 import (
    ConjectureReport,
    Pentagram4Class,
    cabello_pentagon_spectra,
    conjecture_scan,
    entangled_regular,
    haar_states,
    separable_regular,
)
from .spectral import (
    GOLDEN_MEAN,
    HermitianOperator,
    Spectrum,
    StateVector,
    cubic_roots,
    eigensystem,
    orthogonal_complement_3d,
)

__version__ = "0.1.0"
