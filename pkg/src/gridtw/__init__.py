"""Treewidth / grid-minor machinery for geometric intersection graphs."""

from .multigraph import (
    CapExceeded,
    GraphError,
    LoopedGraph,
    Multigraph,
    contract_edge,
    contract_edge_set,
    dist,
    is_solid,
    quotient_multi,
    with_loops,
)
from .minors import MinorWitness, check_witness, is_minor_brute
from .models import (
    CContractionModel,
    CertificateError,
    ContractionModel,
    MinorModel,
    STAR,
    Violation,
    cdist_witness_check,
    compose_models,
    model_from_witness,
    threaded_path,
    validate_c_contraction,
    validate_contraction_model,
    validate_distance_minor,
    validate_minor_model,
    witness_from_model,
)
from .treewidth import (
    TreeDecomposition,
    lift_decomposition,
    treewidth_exact,
    treewidth_lower,
    treewidth_upper,
    validate_decomposition,
)
from .grids import (
    GridGraph,
    PartialTriangulation,
    bg_exact_small,
    bg_lower,
    grid_model_from_triangulation,
    make_grid,
    make_partial_triangulation,
)
from .transfer import central_band_cells, grid_transfer, transferred_side
from .geometry import (
    Arrangement,
    DegeneracyError,
    Polysegment,
    build_arrangement,
    perturb_general_position,
    segment_crossings,
    xi,
)
from .polygons import SimplePolygon, fatness, geodesic_path, min_enclosing_circle
from .planarize import (
    PlanarizationBundle,
    chain_grid_side,
    grid_chain_report,
    intersection_graph,
    planarize,
    validate_bundle,
)
from .bodymodels import (
    ContactPointSet,
    HypothesisViolation,
    contact_points,
    model_fat_convex,
    model_rho_convex,
)
from .vertexcover import (
    WinWinOutcome,
    vc_brute,
    vc_dp,
    winwin_vertex_cover,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "CContractionModel",
    "CapExceeded",
    "CertificateError",
    "ContactPointSet",
    "ContractionModel",
    "DegeneracyError",
    "GraphError",
    "GridGraph",
    "HypothesisViolation",
    "LoopedGraph",
    "MinorModel",
    "MinorWitness",
    "Multigraph",
    "PartialTriangulation",
    "PlanarizationBundle",
    "Polysegment",
    "STAR",
    "SimplePolygon",
    "TreeDecomposition",
    "Violation",
    "WinWinOutcome",
    "bg_exact_small",
    "bg_lower",
    "build_arrangement",
    "cdist_witness_check",
    "central_band_cells",
    "chain_grid_side",
    "check_witness",
    "compose_models",
    "contact_points",
    "contract_edge",
    "contract_edge_set",
    "dist",
    "fatness",
    "geodesic_path",
    "grid_chain_report",
    "grid_model_from_triangulation",
    "grid_transfer",
    "intersection_graph",
    "is_minor_brute",
    "is_solid",
    "lift_decomposition",
    "make_grid",
    "make_partial_triangulation",
    "min_enclosing_circle",
    "model_fat_convex",
    "model_from_witness",
    "model_rho_convex",
    "perturb_general_position",
    "planarize",
    "quotient_multi",
    "segment_crossings",
    "threaded_path",
    "transferred_side",
    "treewidth_exact",
    "treewidth_lower",
    "treewidth_upper",
    "validate_bundle",
    "validate_c_contraction",
    "validate_contraction_model",
    "validate_decomposition",
    "validate_distance_minor",
    "validate_minor_model",
    "vc_brute",
    "vc_dp",
    "winwin_vertex_cover",
    "with_loops",
    "witness_from_model",
    "xi",
]
