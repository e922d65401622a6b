"""
resonant_blocks package.

Colored Cayley graphs of Z^m x| Z/2, the blocks they define, their exact characteristic
polynomials and the checks built on them.
"""
from .rb_blocks import BlockMatrix, block_mass, build_matrix, charpoly_block, charpoly_matrix, scalar_part, translate_block
from .rb_certify import (
    Certificate,
    SpecializationEvidence,
    Verdict,
    certify_irreducible,
    check_certificate,
    parity_test,
    separation_check,
    specialization_tree,
)
from .rb_common import RBCommon
from .rb_config_mgr import RBConfigManager, RunConfig, VerifyConfig
from .rb_errors import (
    BadMassError,
    DimensionMismatchError,
    DisconnectedGraphError,
    GraphFileError,
    NonPositiveXiError,
    NotDegenerateError,
    OddExponentError,
    PolynomialParseError,
    ResonantBlocksError,
    VariableUniverseError,
)
from .rb_geometry import (
    RealizationClass,
    RealizationVerdict,
    avoidable_constraint,
    build_system,
    geometric_edge,
    random_generic_sites,
    realize_vertices,
    solve_realization,
)
from .rb_graphs import (
    CircuitKind,
    ColoredGraph,
    ResonanceClass,
    canonical_form,
    circuit_kind,
    complete_closure,
    encoding_graph,
    enumerate_graphs,
    is_allowable,
    is_resonant,
    project_components,
    rank_and_degeneracy,
    read_graph_file,
    relation_basis,
    relation_circuit,
)
from .rb_json_encoder import JSONEncoder
from .rb_lattice import Edge, EdgeColor, GroupElement, QuadForm, TangentialSites, cmap, edge_between, kenergy, mass
from .rb_logging import RBLogger
from .rb_multipoly import MultiPoly, eliminate_roots, eval_numeric, specialize
from .rb_spectral import SpectrumReport, eigenvalues_at, homogeneity_check, search_elliptic, translation_check
from .validation_schema import yaml_config_validation

__all__ = [
    "BadMassError",
    "BlockMatrix",
    "Certificate",
    "CircuitKind",
    "ColoredGraph",
    "DimensionMismatchError",
    "DisconnectedGraphError",
    "Edge",
    "EdgeColor",
    "GraphFileError",
    "GroupElement",
    "JSONEncoder",
    "MultiPoly",
    "NonPositiveXiError",
    "NotDegenerateError",
    "OddExponentError",
    "PolynomialParseError",
    "QuadForm",
    "RBCommon",
    "RBConfigManager",
    "RBLogger",
    "RealizationClass",
    "RealizationVerdict",
    "ResonanceClass",
    "ResonantBlocksError",
    "RunConfig",
    "SpecializationEvidence",
    "SpectrumReport",
    "TangentialSites",
    "VariableUniverseError",
    "Verdict",
    "VerifyConfig",
    "avoidable_constraint",
    "block_mass",
    "build_matrix",
    "build_system",
    "canonical_form",
    "certify_irreducible",
    "charpoly_block",
    "charpoly_matrix",
    "check_certificate",
    "circuit_kind",
    "cmap",
    "complete_closure",
    "edge_between",
    "eigenvalues_at",
    "eliminate_roots",
    "encoding_graph",
    "enumerate_graphs",
    "eval_numeric",
    "geometric_edge",
    "homogeneity_check",
    "is_allowable",
    "is_resonant",
    "kenergy",
    "mass",
    "parity_test",
    "project_components",
    "random_generic_sites",
    "rank_and_degeneracy",
    "read_graph_file",
    "realize_vertices",
    "relation_basis",
    "relation_circuit",
    "scalar_part",
    "search_elliptic",
    "separation_check",
    "solve_realization",
    "specialization_tree",
    "specialize",
    "translate_block",
    "translation_check",
    "yaml_config_validation",
]
