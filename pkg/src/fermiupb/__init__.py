"""Exterior algebra, FUPB constructions and a verifier for fermionic product bases."""

from .constructions import (
    CandidateSet,
    compose_bipartite_fupb,
    dual_fupb,
    fupb_c4,
    hyperplane_fupb,
    pad_fupb,
    pentagon_upb,
    slater_basis,
    vandermonde_gfupb,
)
from .exterior import (
    Factorization,
    NVector,
    basis_nvector,
    factorize,
    gram_inner_product,
    hodge_dual,
    inner_product,
    interior_product,
    is_decomposable,
    ket,
    plucker_relations,
    plucker_residual,
    slater_decomposition,
    support,
    wedge_expand,
    wedge_product,
)
from .scalars import EXACT, FLOAT, ExactComplex
from .search import SearchConfig, SearchResult, search_decomposable
from .subspace import Subspace, complement, project, span
from .verifier import (
    ClaimViolation,
    VerificationReport,
    ces_max_dim,
    certify_dim1,
    certify_pencil_m4,
    check_independence,
    check_orthogonality,
    gfupb_min_cardinality,
    tensor_upb_bounds,
    verify_candidate,
)

__version__ = "0.1.0"
