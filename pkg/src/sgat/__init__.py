"""sgat — succinct graph & formula specifications with approximation schemes.

A library and CLI for working with two kinds of succinct instance
descriptions — hierarchical cell-based specifications and finite periodic
specifications — of graphs and Boolean formulas, together with
partial-expansion approximation schemes (independent set, vertex cover,
max-cut, MAX-SAT) whose running time is polynomial in the description
size rather than in the (possibly astronomically larger) expanded object
size. Solutions are first-class objects supporting size reporting,
per-vertex membership queries, bounded-memory streaming, and re-emission
as a succinct specification.
"""

from __future__ import annotations

from .errors import (
    BudgetExceededError,
    ConstraintError,
    GuaranteeFailureError,
    SolverInapplicableError,
)
from .spec_core import (
    ADDRESS_SEP,
    PIN_PREFIX,
    TRI_TEXT,
    BoolRelation,
    Cell,
    FormulaCall,
    FormulaCell,
    FPNFormula,
    FPNLiteral,
    FPNSpec,
    LFormula,
    LSpec,
    Nonterminal,
    ParseError,
    SFormula,
    ValidationReport,
    Violation,
    detect_format,
    parse_document,
    parse_fpn,
    parse_fpn_formula,
    parse_lformula,
    parse_lspec,
    parse_sformula,
    serialize_fpn,
    serialize_fpn_formula,
    serialize_lformula,
    serialize_lspec,
    serialize_sformula,
    validate_document,
    validate_fpn,
    validate_fpn_formula,
    validate_lformula,
    validate_lspec,
    validate_sformula,
)
from .expansion import (
    DEFAULT_EXPAND_BUDGET,
    CountVector,
    DepthCounter,
    ExpandedGraph,
    FormulaDepthCounter,
    ResolvedAddress,
    count_expansion,
    count_formula_expansion,
    count_fpn_formula_clauses,
    expand,
    expand_formula,
    expand_fpn,
    expand_fpn_formula,
    formula_level_restriction,
    fpn_formula_narrowness,
    fpn_narrowness,
    fpn_vertex_name,
    level_restriction,
    parse_fpn_vertex_name,
    resolve_address,
    serialize_expanded_graph,
)
from .partial_expansion import (
    FormulaPieces,
    FpnFormulaPieces,
    Interval,
    MiddleRun,
    OverlapDecomposition,
    PartialExpansion,
    SlabDecomposition,
    formula_head,
    formula_kernel,
    formula_pieces,
    fpn_formula_interval,
    fpn_formula_pieces,
    fpn_interval_graph,
    fpn_overlap_slabs,
    fpn_slabs,
    partial_expand,
    truncated_expand,
    truncated_expand_formula,
    truncated_vertex_count,
)
from .base_solvers import (
    DEFAULT_EXACT_BUDGET,
    MaxSatResult,
    baker_mis,
    baker_vc,
    exact_maxcut,
    exact_maxsat,
    exact_mis,
    exact_vc,
    maxcut_value,
    mis_size,
    planarity_check,
    vc_size,
)
from .approx_schemes import (
    DEFAULT_PIECE_BUDGET,
    ApproxSolution,
    epsilon_to_l,
    fpn_maxcut,
    fpn_maxsat,
    fpn_mis,
    fpn_vc,
    h_maxcut,
    h_maxsat,
    h_mis,
    h_vc,
)
from .solution_repr import (
    VerificationReport,
    emit_solution_lspec,
    iter_solution,
    query,
    solution_size,
    stream_solution,
    verify_solution,
)
from .generators import (
    GenerationError,
    bintree_spec,
    chain_triangles_spec,
    example4_lformula,
    fpn_ladder,
    fpn_path,
    rand_1level_lformula,
    rand_1level_lspec,
    rand_fpn,
    rand_fpn_formula,
    rand_planar_graph,
    tri_spec,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "BudgetExceededError",
    "ConstraintError",
    "GuaranteeFailureError",
    "SolverInapplicableError",
    "ParseError",
    "GenerationError",
    # document model
    "ADDRESS_SEP",
    "PIN_PREFIX",
    "TRI_TEXT",
    "BoolRelation",
    "Cell",
    "FormulaCall",
    "FormulaCell",
    "FPNFormula",
    "FPNLiteral",
    "FPNSpec",
    "LFormula",
    "LSpec",
    "Nonterminal",
    "SFormula",
    "ValidationReport",
    "Violation",
    "detect_format",
    "parse_document",
    "parse_fpn",
    "parse_fpn_formula",
    "parse_lformula",
    "parse_lspec",
    "parse_sformula",
    "serialize_fpn",
    "serialize_fpn_formula",
    "serialize_lformula",
    "serialize_lspec",
    "serialize_sformula",
    "validate_document",
    "validate_fpn",
    "validate_fpn_formula",
    "validate_lformula",
    "validate_lspec",
    "validate_sformula",
    # expansion
    "DEFAULT_EXPAND_BUDGET",
    "CountVector",
    "DepthCounter",
    "ExpandedGraph",
    "FormulaDepthCounter",
    "ResolvedAddress",
    "count_expansion",
    "count_formula_expansion",
    "count_fpn_formula_clauses",
    "expand",
    "expand_formula",
    "expand_fpn",
    "expand_fpn_formula",
    "formula_level_restriction",
    "fpn_formula_narrowness",
    "fpn_narrowness",
    "fpn_vertex_name",
    "level_restriction",
    "parse_fpn_vertex_name",
    "resolve_address",
    "serialize_expanded_graph",
    # partial expansion
    "FormulaPieces",
    "FpnFormulaPieces",
    "Interval",
    "MiddleRun",
    "OverlapDecomposition",
    "PartialExpansion",
    "SlabDecomposition",
    "formula_head",
    "formula_kernel",
    "formula_pieces",
    "fpn_formula_interval",
    "fpn_formula_pieces",
    "fpn_interval_graph",
    "fpn_overlap_slabs",
    "fpn_slabs",
    "partial_expand",
    "truncated_expand",
    "truncated_expand_formula",
    "truncated_vertex_count",
    # base solvers
    "DEFAULT_EXACT_BUDGET",
    "MaxSatResult",
    "baker_mis",
    "baker_vc",
    "exact_maxcut",
    "exact_maxsat",
    "exact_mis",
    "exact_vc",
    "maxcut_value",
    "mis_size",
    "planarity_check",
    "vc_size",
    # approximation schemes
    "DEFAULT_PIECE_BUDGET",
    "ApproxSolution",
    "epsilon_to_l",
    "fpn_maxcut",
    "fpn_maxsat",
    "fpn_mis",
    "fpn_vc",
    "h_maxcut",
    "h_maxsat",
    "h_mis",
    "h_vc",
    # solutions
    "VerificationReport",
    "emit_solution_lspec",
    "iter_solution",
    "query",
    "solution_size",
    "stream_solution",
    "verify_solution",
    # generators
    "bintree_spec",
    "chain_triangles_spec",
    "example4_lformula",
    "fpn_ladder",
    "fpn_path",
    "rand_1level_lformula",
    "rand_1level_lspec",
    "rand_fpn",
    "rand_fpn_formula",
    "rand_planar_graph",
    "tri_spec",
]
