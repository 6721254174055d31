"""contextia: numerical toolkit for the pentagon noncontextuality inequality.

The package builds explicit quantum scenarios that beat the classical
pentagon bound of 2, enumerates the noncontextual hidden-variable side
exhaustively, and verifies numerically that the normalized trace can never
produce a violation — including every step of that argument's proof.
"""

from .constructions import (
    EPSILON_MAX,
    KCBS_CLASSICAL_BOUND,
    KCBS_QUANTUM_VALUE,
    MatrixUnitSystem,
    PentagonScenario,
    UmbrellaFamily,
    alignment_unitary,
    conjugate_scenario,
    kcbs_pentagon,
    kcbs_vectors,
    matrix_units,
    mixture_state,
    typeiii_projections,
    umbrella_adjacent_overlap,
    umbrella_critical_angle,
    umbrella_family,
)
from .errors import (
    CapacityError,
    ConstructionError,
    ContextiaError,
    ValidationError,
    VerificationError,
)
from .exclusivity import (
    ENUMERATION_CAP,
    ExclusivityGraph,
    assignment_to_mask,
    complete_graph,
    count_assignments,
    cycle_graph,
    enumerate_assignments_01,
    graph_from_edges,
    is_valid_assignment,
    mask_to_assignment,
    noncontextual_bound,
    pm_cycle_min,
)
from .hvm import (
    HiddenVariableModel,
    ModelPrediction,
    hvm_predict,
    hvm_random,
    pm_model_value,
    pm_random_measure,
)
from .linalg import (
    DEFAULT_TOL,
    RANK_TOL,
    DensityState,
    Projection,
    dagger,
    ensure_unit_vector,
    ensure_unitary,
    haar_unitary,
    hermitian_defect,
    hermitian_eigen,
    max_abs,
    projection_join,
    projection_meet,
    rank1_projection,
    state_value,
)
from .serialize import (
    dumps_canonical,
    graph_from_json,
    graph_to_json,
    matrix_from_json,
    matrix_to_json,
    model_from_json,
    model_to_json,
    scenario_from_json,
    scenario_to_json,
)
from .tracial import (
    CheckReport,
    TracialState,
    derive_seeds,
    full_campaign,
    modularity_campaign,
    proof_chain_campaign,
    random_pentagon,
    reports_to_csv,
    sample_ranks,
    trace_bound_campaign,
    tracial_value,
    verify_dim2_no_violation,
    verify_proof_chain,
    verify_trace_bound,
    verify_trace_modularity,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CheckReport",
    "ConstructionError",
    "ContextiaError",
    "DEFAULT_TOL",
    "DensityState",
    "ENUMERATION_CAP",
    "EPSILON_MAX",
    "ExclusivityGraph",
    "HiddenVariableModel",
    "KCBS_CLASSICAL_BOUND",
    "KCBS_QUANTUM_VALUE",
    "MatrixUnitSystem",
    "ModelPrediction",
    "PentagonScenario",
    "Projection",
    "RANK_TOL",
    "TracialState",
    "UmbrellaFamily",
    "ValidationError",
    "VerificationError",
    "alignment_unitary",
    "assignment_to_mask",
    "complete_graph",
    "conjugate_scenario",
    "count_assignments",
    "cycle_graph",
    "dagger",
    "derive_seeds",
    "dumps_canonical",
    "ensure_unit_vector",
    "ensure_unitary",
    "enumerate_assignments_01",
    "full_campaign",
    "graph_from_edges",
    "graph_from_json",
    "graph_to_json",
    "haar_unitary",
    "hermitian_defect",
    "hermitian_eigen",
    "hvm_predict",
    "hvm_random",
    "is_valid_assignment",
    "kcbs_pentagon",
    "kcbs_vectors",
    "mask_to_assignment",
    "matrix_from_json",
    "matrix_to_json",
    "matrix_units",
    "max_abs",
    "mixture_state",
    "model_from_json",
    "model_to_json",
    "modularity_campaign",
    "noncontextual_bound",
    "pm_cycle_min",
    "pm_model_value",
    "pm_random_measure",
    "proof_chain_campaign",
    "projection_join",
    "projection_meet",
    "random_pentagon",
    "rank1_projection",
    "reports_to_csv",
    "sample_ranks",
    "scenario_from_json",
    "scenario_to_json",
    "state_value",
    "trace_bound_campaign",
    "tracial_value",
    "typeiii_projections",
    "umbrella_adjacent_overlap",
    "umbrella_critical_angle",
    "umbrella_family",
    "verify_dim2_no_violation",
    "verify_proof_chain",
    "verify_trace_bound",
    "verify_trace_modularity",
]
