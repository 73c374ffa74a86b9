"""Cayley graphs over S_n with star-plus-adjacent generator sets, internally
disjoint path structures on vertex triples, and the packing bound they certify.
"""

from .certify import (
    Certificate,
    emit,
    load,
    load_text,
    make_certificate,
    save,
    verify_certificate,
)
from .construct import CaseTrace, build_structure
from .flows import (
    CutResult,
    Path,
    PathFamily,
    StepCounter,
    disjoint_set_paths,
    k_fan,
    local_connectivity,
    max_internally_disjoint_paths,
    min_vertex_cut,
    shortest_path,
    vertex_connectivity,
)
from .errors import (
    CertificateError,
    ConstructionFailed,
    DegreeMismatch,
    DegreeOutOfRange,
    DegreeTooSmall,
    DuplicateVertices,
    InsufficientConnectivity,
    InvalidPermutation,
    InvalidStructure,
    OracleScaleExceeded,
    RankOutOfRange,
    SameCopy,
    SchemaError,
    TripathsError,
    VersionMismatch,
    WrongFamily,
)
from .graphs import (
    AdjacencyView,
    CayleyGraph,
    View,
    build,
    common_neighbors,
    copy_of,
    copy_union,
    cross_edges,
    delete_copies,
    full_view,
    outside_neighbors,
    spanning_intra_view,
    to_dot,
    to_edgelist,
)
from .lemmas import LemmaRow, run_lemma_suite
from .pairing import (
    LowerBoundReport,
    OmegaPathSet,
    UpperBoundReport,
    formula_value,
    max_triple_common_neighbors,
    optimal_split,
    pair_structure,
    pairing_capacity,
    pi3_lower,
    pi3_upper,
    sample_triples,
)
from .perms import (
    Family,
    GeneratorSet,
    Permutation,
    Transposition,
    apply_generator,
    compose,
    generator_set,
    identity,
    inverse,
    parse_family,
    parse_permutation,
    permutation_text,
    rank,
    unrank,
)
from .tripod import (
    Budget,
    StructureTarget,
    TripodFailure,
    TripodStructure,
    exact_pi,
    solve_tripod,
    standard_target,
    verify_tripod,
)
from .verification import (
    check_disjoint_set_paths,
    check_fan,
    check_internally_disjoint,
    check_omega_path_set,
    check_tripod,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyView",
    "Budget",
    "CaseTrace",
    "CayleyGraph",
    "Certificate",
    "CertificateError",
    "ConstructionFailed",
    "CutResult",
    "DegreeMismatch",
    "DegreeOutOfRange",
    "DegreeTooSmall",
    "DuplicateVertices",
    "Family",
    "GeneratorSet",
    "InsufficientConnectivity",
    "InvalidPermutation",
    "InvalidStructure",
    "LemmaRow",
    "LowerBoundReport",
    "OmegaPathSet",
    "OracleScaleExceeded",
    "Path",
    "PathFamily",
    "Permutation",
    "RankOutOfRange",
    "SameCopy",
    "SchemaError",
    "StepCounter",
    "StructureTarget",
    "Transposition",
    "TripathsError",
    "TripodFailure",
    "TripodStructure",
    "UpperBoundReport",
    "VersionMismatch",
    "View",
    "WrongFamily",
    "apply_generator",
    "build",
    "build_structure",
    "check_disjoint_set_paths",
    "check_fan",
    "check_internally_disjoint",
    "check_omega_path_set",
    "check_tripod",
    "common_neighbors",
    "compose",
    "copy_of",
    "copy_union",
    "cross_edges",
    "delete_copies",
    "disjoint_set_paths",
    "emit",
    "exact_pi",
    "formula_value",
    "full_view",
    "generator_set",
    "identity",
    "inverse",
    "k_fan",
    "load",
    "load_text",
    "local_connectivity",
    "make_certificate",
    "max_internally_disjoint_paths",
    "max_triple_common_neighbors",
    "min_vertex_cut",
    "optimal_split",
    "outside_neighbors",
    "pair_structure",
    "pairing_capacity",
    "parse_family",
    "parse_permutation",
    "permutation_text",
    "pi3_lower",
    "pi3_upper",
    "rank",
    "run_lemma_suite",
    "sample_triples",
    "save",
    "shortest_path",
    "solve_tripod",
    "spanning_intra_view",
    "standard_target",
    "to_dot",
    "to_edgelist",
    "unrank",
    "verify_certificate",
    "verify_tripod",
    "vertex_connectivity",
]
