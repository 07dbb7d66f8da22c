"""Exact tau-tilting pairs, g/c-matrices and brick labels for quiver algebras."""

from .algebra import AlgebraPresentation, Quiver, Relation, build_algebra, parse_algebra
from .bricks import BrickCertificate, brick_for_slot, trace_quotient, x_matrix
from .endo import is_brick
from .errors import (
    BrickTestInconclusive,
    BrickVerificationFailed,
    CutoffReached,
    DecompositionInconclusive,
    InvalidRelation,
    MutationVerificationFailed,
    NonIntegral,
    NotAdmissible,
    NotProjective,
    ParseError,
    TautiltError,
)
from .explorer import (
    AnalysisReport,
    LongBrickSearch,
    analyze,
    export_dot,
    export_json,
    find_long_brick,
    graph_payload,
)
from .gc import (
    c_matrix,
    c_vectors,
    g_matrix,
    inner_product,
    is_sign_coherent,
    verify_ar_formula,
)
from .pairs import (
    ExchangeGraph,
    TauTiltingPair,
    exchange_graph,
    initial_pair,
    is_tau_rigid_pair,
    mutate,
)
from .reps import (
    ModuleMap,
    Representation,
    cokernel,
    composition_length,
    d_matrix,
    decompose,
    dimension_vector,
    direct_sum,
    fac_contains,
    g_vector,
    hom_dim,
    hom_space,
    image,
    injective,
    is_isomorphic,
    kernel,
    min_proj_presentation,
    nakayama,
    projective,
    radical,
    simple,
    sub_contains,
    tau,
    top,
    transpose_rep,
    zero_rep,
)

__version__ = "0.1.0"
