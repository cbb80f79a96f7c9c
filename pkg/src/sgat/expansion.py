"""Expansion semantics, counting recurrences, and structural measurements.

The expansion of a hierarchical specification substitutes, recursively, a
copy of the called cell for every nonterminal, identifying the callee's
pins with the caller terminals they are wired to. Pins never create
vertices: every expanded vertex is an explicit vertex of exactly one cell
copy, and is addressed by the chain of nonterminal names leading to that
copy (``nt1/nt2/vertex``).

The expansion of a periodic specification replicates the static vertex set
at positions ``0..m`` and adds one undirected edge ``{u@p, v@(p+t)}`` per
static edge and position with ``p + t <= m``.

Expanded objects can be astronomically larger than their specifications,
so every materializing operation is budget-guarded and all counting is
done by exact big-integer recurrences over the cell structure, never by
building the object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import BudgetExceededError
from .spec_core import (
    ADDRESS_SEP,
    BoolRelation,
    Cell,
    FPNFormula,
    FPNSpec,
    FormulaCell,
    LFormula,
    LSpec,
    SFormula,
    VertexAddress,
    is_pin_ref,
    pin_index,
)

__all__ = [
    "DEFAULT_EXPAND_BUDGET",
    "ExpandedGraph",
    "CountVector",
    "expand",
    "expand_fpn",
    "count_expansion",
    "DepthCounter",
    "FormulaDepthCounter",
    "level_restriction",
    "formula_level_restriction",
    "fpn_narrowness",
    "fpn_formula_narrowness",
    "ResolvedAddress",
    "resolve_address",
    "expand_formula",
    "count_formula_expansion",
    "expand_fpn_formula",
    "count_fpn_formula_clauses",
    "serialize_expanded_graph",
    "fpn_vertex_name",
    "parse_fpn_vertex_name",
]

DEFAULT_EXPAND_BUDGET = 10**6


def fpn_vertex_name(v: str, p: int) -> str:
    """Render the lattice address of static vertex ``v`` at position ``p``."""
    return f"{v}@{p}"


def parse_fpn_vertex_name(addr: str) -> tuple[str, int]:
    """Split a lattice address ``v@p`` into its static vertex and position."""
    v, _, p = addr.rpartition("@")
    if not v or not p.isdigit():
        raise ValueError(f"not a lattice address: {addr!r}")
    return v, int(p)


@dataclass(frozen=True)
class ExpandedGraph:
    """A materialized expansion: addressed vertices plus undirected edges.

    ``collapsed_edges`` counts parallel-edge merges performed while
    building the graph; it is zero for every specification that passes
    validation (the construction cannot duplicate an edge then), and is
    surfaced so any unexpected collapse is visible.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    origin: str = ""
    collapsed_edges: int = 0

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.edges)

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def induced(self, keep: Iterable[str], origin: str = "") -> "ExpandedGraph":
        """The subgraph induced by ``keep`` (order preserved)."""
        keep_set = set(keep)
        return ExpandedGraph(
            vertices=tuple(v for v in self.vertices if v in keep_set),
            edges=tuple(
                (a, b) for a, b in self.edges if a in keep_set and b in keep_set
            ),
            origin=origin or self.origin,
        )


def serialize_expanded_graph(g: ExpandedGraph) -> str:
    """Edge-list text form: ``v <address>`` lines then ``e <a> <b>`` lines."""
    out = [f"v {v}" for v in g.vertices]
    out.extend(f"e {a} {b}" for a, b in g.edges)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Counting recurrences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CountVector:
    """Exact expanded counts per cell, computed without expansion.

    ``vertices[c]``/``edges[c]`` are the expanded vertex/edge counts of the
    graph a copy of cell ``c`` contributes (pins belong to the parent and
    are not counted; every cell edge, including pin-incident ones, becomes
    exactly one expanded edge). ``copies[c][e]`` counts copies of cell
    ``e`` in the substitution tree rooted at a copy of ``c`` (including
    the root itself when ``e == c``).
    """

    vertices: Mapping[str, int]
    edges: Mapping[str, int]
    copies: Mapping[str, Mapping[str, int]]
    top: str

    @property
    def top_vertices(self) -> int:
        return self.vertices[self.top]

    @property
    def top_edges(self) -> int:
        return self.edges[self.top]


def count_expansion(spec: LSpec) -> CountVector:
    """Exact expanded vertex/edge/copy counts for every cell.

    A copy of a cell owns its explicit vertices; each of its edges
    (including edges reaching a pin, which resolve to a vertex owned by
    an ancestor copy) expands to exactly one edge. Both recurrences are
    sums over the cell's nonterminals, computed bottom-up in one pass.
    """
    verts: dict[str, int] = {}
    edges: dict[str, int] = {}
    copies: dict[str, dict[str, int]] = {}
    for cell in spec.cells:
        v = len(cell.explicit)
        e = len(cell.edges)
        cp: dict[str, int] = {cell.name: 1}
        for nt in cell.nonterminals:
            v += verts[nt.type_name]
            e += edges[nt.type_name]
            for k, c in copies[nt.type_name].items():
                cp[k] = cp.get(k, 0) + c
        verts[cell.name] = v
        edges[cell.name] = e
        copies[cell.name] = cp
    return CountVector(
        vertices=verts, edges=edges, copies=copies, top=spec.top.name
    )


class DepthCounter:
    """Exact per-depth copy and vertex counts over a cell's substitution
    tree, via memoized recurrences (the tree itself can be exponential).

    Depth 0 is the root copy; the copies at depth ``d`` are the calls made
    by copies at depth ``d - 1``.
    """

    def __init__(self, spec: LSpec):
        self._spec = spec
        self._memo: dict[tuple[str, int], dict[str, int]] = {}

    def copies_at_depth(self, cell_name: str, depth: int) -> dict[str, int]:
        """Map of cell type -> number of copies at exactly ``depth``."""
        key = (cell_name, depth)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if depth == 0:
            result = {cell_name: 1}
        else:
            result = {}
            cell = self._spec.cell(cell_name)
            for nt in cell.nonterminals:
                for k, c in self.copies_at_depth(nt.type_name, depth - 1).items():
                    result[k] = result.get(k, 0) + c
        self._memo[key] = result
        return result

    def vertices_at_depth(self, cell_name: str, depth: int) -> int:
        return sum(
            c * len(self._spec.cell(k).explicit)
            for k, c in self.copies_at_depth(cell_name, depth).items()
        )

    def edges_at_depth(self, cell_name: str, depth: int) -> int:
        """Edges whose deeper endpoint is owned at exactly ``depth``
        (each cell edge is charged to the copy that declares it)."""
        return sum(
            c * len(self._spec.cell(k).edges)
            for k, c in self.copies_at_depth(cell_name, depth).items()
        )

    def max_depth(self, cell_name: str) -> int:
        """Depth of the deepest copy under ``cell_name`` (0 for leaf cells)."""
        spec = self._spec
        memo: dict[str, int] = {}
        for cell in spec.cells:
            d = 0
            for nt in cell.nonterminals:
                d = max(d, 1 + memo[nt.type_name])
            memo[cell.name] = d
        return memo[cell_name]


class FormulaDepthCounter:
    """Per-depth copy/variable/clause counts over a hierarchical formula's
    substitution tree (same recurrences as :class:`DepthCounter`)."""

    def __init__(self, formula: LFormula):
        self._formula = formula
        self._memo: dict[tuple[str, int], dict[str, int]] = {}

    def copies_at_depth(self, cell_name: str, depth: int) -> dict[str, int]:
        key = (cell_name, depth)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if depth == 0:
            result = {cell_name: 1}
        else:
            result = {}
            cell = self._formula.fcell(cell_name)
            for call in cell.calls:
                for k, c in self.copies_at_depth(call.callee, depth - 1).items():
                    result[k] = result.get(k, 0) + c
        self._memo[key] = result
        return result

    def clauses_at_depth(self, cell_name: str, depth: int) -> int:
        return sum(
            c * len(self._formula.fcell(k).clauses)
            for k, c in self.copies_at_depth(cell_name, depth).items()
        )

    def max_depth(self, cell_name: str) -> int:
        memo: dict[str, int] = {}
        for cell in self._formula.fcells:
            d = 0
            for call in cell.calls:
                d = max(d, 1 + memo[call.callee])
            memo[cell.name] = d
        return memo[cell_name]


# ---------------------------------------------------------------------------
# Expansion of hierarchical specifications
# ---------------------------------------------------------------------------


@dataclass
class _CellPiece:
    """Expansion of one cell relative to a copy of it: owned vertices,
    internal edges, and dangling pin-incident edges to be attached by the
    caller as ``(pin_number, internal_vertex)``."""

    verts: list[str]
    edges: list[tuple[str, str]]
    boundary: list[tuple[int, str]]


def _expand_cell(spec: LSpec, memo: dict[str, _CellPiece], name: str) -> _CellPiece:
    cached = memo.get(name)
    if cached is not None:
        return cached
    cell = spec.cell(name)
    verts = list(cell.explicit)
    edges: list[tuple[str, str]] = []
    boundary: list[tuple[int, str]] = []
    for a, b in cell.edges:
        if is_pin_ref(a) and is_pin_ref(b):
            raise ValueError(
                f"cell {name!r} has a pin-to-pin edge; expansion is only"
                " defined for validated specifications"
            )
        if is_pin_ref(a):
            boundary.append((pin_index(a), b))
        elif is_pin_ref(b):
            boundary.append((pin_index(b), a))
        else:
            edges.append((a, b))
    for nt in cell.nonterminals:
        sub = _expand_cell(spec, memo, nt.type_name)
        pre = nt.name + ADDRESS_SEP
        verts.extend(pre + x for x in sub.verts)
        edges.extend((pre + x, pre + y) for x, y in sub.edges)
        bind_map = nt.bind_map()
        for k, rel in sub.boundary:
            target = bind_map[k]
            if is_pin_ref(target):
                boundary.append((pin_index(target), pre + rel))
            else:
                edges.append((target, pre + rel))
    piece = _CellPiece(verts, edges, boundary)
    memo[name] = piece
    return piece


def expand(spec: LSpec, budget: int = DEFAULT_EXPAND_BUDGET) -> ExpandedGraph:
    """Materialize the full expansion of a hierarchical specification.

    Vertices are labeled by their address (nonterminal-name path plus the
    owning cell's explicit-vertex name). The exact expanded vertex count is
    checked against ``budget`` before any materialization. Parallel edges,
    should they ever arise, are collapsed and counted in
    ``collapsed_edges`` (zero on validated inputs).
    """
    counts = count_expansion(spec)
    if counts.top_vertices > budget:
        raise BudgetExceededError(
            f"expansion of {spec.name!r}", counts.top_vertices, budget
        )
    memo: dict[str, _CellPiece] = {}
    piece = _expand_cell(spec, memo, spec.top.name)
    if piece.boundary:
        raise ValueError(
            "top cell has dangling pin-incident edges; expansion is only"
            " defined for validated specifications"
        )
    seen: set[frozenset[str]] = set()
    edges: list[tuple[str, str]] = []
    collapsed = 0
    for a, b in piece.edges:
        key = frozenset((a, b))
        if key in seen:
            collapsed += 1
            continue
        seen.add(key)
        edges.append((a, b))
    return ExpandedGraph(
        vertices=tuple(piece.verts),
        edges=tuple(edges),
        origin=f"expand:{spec.name}",
        collapsed_edges=collapsed,
    )


def expand_fpn(spec: FPNSpec, budget: int = DEFAULT_EXPAND_BUDGET) -> ExpandedGraph:
    """Materialize the replicated graph of a periodic specification:
    all lattice vertices ``v@p`` for ``0 <= p <= m`` plus one undirected
    edge per static edge and feasible position."""
    total = (spec.m + 1) * len(spec.vertices)
    if total > budget:
        raise BudgetExceededError("periodic expansion", total, budget)
    vertices = tuple(
        fpn_vertex_name(v, p)
        for p in range(spec.m + 1)
        for v in spec.vertices
    )
    seen: set[frozenset[str]] = set()
    edges: list[tuple[str, str]] = []
    collapsed = 0
    for u, w, t in spec.edges:
        for p in range(spec.m - t + 1):
            a = fpn_vertex_name(u, p)
            b = fpn_vertex_name(w, p + t)
            if a == b:
                collapsed += 1
                continue
            key = frozenset((a, b))
            if key in seen:
                collapsed += 1
                continue
            seen.add(key)
            edges.append((a, b))
    return ExpandedGraph(
        vertices=vertices,
        edges=tuple(edges),
        origin=f"expand_fpn:m={spec.m}",
        collapsed_edges=collapsed,
    )


# ---------------------------------------------------------------------------
# Structural measurements
# ---------------------------------------------------------------------------


def _pin_resolution_depths(spec: LSpec) -> dict[tuple[str, int], int]:
    """For every (cell, pin) pair: the maximum number of tree levels
    between a copy of the cell and the vertex its pin resolves to,
    over all call chains in the specification."""
    call_sites: dict[str, list[tuple[Cell, dict[int, str]]]] = {
        c.name: [] for c in spec.cells
    }
    for cell in spec.cells:
        for nt in cell.nonterminals:
            call_sites[nt.type_name].append((cell, nt.bind_map()))

    memo: dict[tuple[str, int], int] = {}

    def depth(cell_name: str, k: int) -> int:
        key = (cell_name, k)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best = 0
        for caller, bind_map in call_sites[cell_name]:
            target = bind_map[k]
            if is_pin_ref(target):
                best = max(best, 1 + depth(caller.name, pin_index(target)))
            else:
                best = max(best, 1)
        memo[key] = best
        return best

    for cell in spec.cells:
        for k in range(1, cell.pin_count + 1):
            depth(cell.name, k)
    return memo


def level_restriction(spec: LSpec) -> int:
    """The smallest ``k`` such that every expanded edge joins vertices
    whose owning copies are within ancestor distance ``k``.

    Computed statically on the cell structure: an edge between two
    explicit vertices spans 0 levels; an edge reaching pin ``j`` spans as
    many levels as the deepest call chain through which that pin resolves.
    Never expands the graph.
    """
    depths = _pin_resolution_depths(spec)
    k = 0
    for cell in spec.cells:
        for a, b in cell.edges:
            for term in (a, b):
                if is_pin_ref(term):
                    k = max(k, depths.get((cell.name, pin_index(term)), 0))
    return k


def _interface_resolution_depths(formula: LFormula) -> dict[tuple[str, int], int]:
    call_sites: dict[str, list[tuple[FormulaCell, tuple[str, ...]]]] = {
        c.name: [] for c in formula.fcells
    }
    for cell in formula.fcells:
        for call in cell.calls:
            call_sites[call.callee].append((cell, call.args))

    memo: dict[tuple[str, int], int] = {}

    def depth(cell_name: str, pos: int) -> int:
        key = (cell_name, pos)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best = 0
        for caller, args in call_sites[cell_name]:
            arg = args[pos]
            if arg in caller.interface:
                best = max(best, 1 + depth(caller.name, caller.interface.index(arg)))
            else:
                best = max(best, 1)
        memo[key] = best
        return best

    for cell in formula.fcells:
        for pos in range(len(cell.interface)):
            depth(cell.name, pos)
    return memo


def formula_level_restriction(formula: LFormula) -> int:
    """The smallest ``k`` such that every expanded clause only references
    variables owned within ``k`` ancestor levels of the clause's cell copy
    (0 = all clauses purely local). Static, never expands."""
    depths = _interface_resolution_depths(formula)
    k = 0
    for cell in formula.fcells:
        iface_pos = {v: i for i, v in enumerate(cell.interface)}
        for _, args in cell.clauses:
            for a in args:
                if a in iface_pos:
                    k = max(k, depths.get((cell.name, iface_pos[a]), 0))
    return k


def fpn_narrowness(spec: FPNSpec) -> int:
    """Maximum edge offset (0 for an offset-free or edgeless spec)."""
    return max((t for _, _, t in spec.edges), default=0)


def fpn_formula_narrowness(formula: FPNFormula) -> int:
    """Maximum literal offset over all static clauses."""
    return max(
        (lit.offset for clause in formula.clauses for lit in clause), default=0
    )


@dataclass(frozen=True)
class ResolvedAddress:
    """Outcome of walking an address against its specification."""

    valid: bool
    cell_name: str | None = None
    depth: int | None = None
    reason: str = ""


def resolve_address(spec: LSpec, addr: str | VertexAddress) -> ResolvedAddress:
    """Walk an address from the top cell: each path component must name a
    nonterminal of the current cell; the final component must be an
    explicit vertex of the cell reached. Returns the owning cell and its
    depth in the substitution tree."""
    if isinstance(addr, str):
        addr = VertexAddress.parse(addr)
    cell = spec.top
    depth = 0
    for comp in addr.path:
        try:
            nt = cell.nonterminal(comp)
        except KeyError:
            return ResolvedAddress(
                False, reason=f"no nonterminal {comp!r} in cell {cell.name!r}"
            )
        cell = spec.cell(nt.type_name)
        depth += 1
    if addr.vertex not in cell.explicit:
        return ResolvedAddress(
            False, reason=f"no vertex {addr.vertex!r} in cell {cell.name!r}"
        )
    return ResolvedAddress(True, cell_name=cell.name, depth=depth)


# ---------------------------------------------------------------------------
# Formula expansion
# ---------------------------------------------------------------------------


def count_formula_expansion(formula: LFormula) -> tuple[dict[str, int], dict[str, int]]:
    """Exact expanded (variable count, clause count) per formula cell.

    Each call instantiates fresh copies of the callee's local variables;
    interface variables belong to the caller and are not counted again.
    """
    vars_: dict[str, int] = {}
    clauses: dict[str, int] = {}
    for cell in formula.fcells:
        v = len(cell.local_vars)
        c = len(cell.clauses)
        for call in cell.calls:
            v += vars_[call.callee]
            c += clauses[call.callee]
        vars_[cell.name] = v
        clauses[cell.name] = c
    return vars_, clauses


def expand_formula(formula: LFormula, budget: int = DEFAULT_EXPAND_BUDGET) -> SFormula:
    """Materialize the flat formula: every call instance contributes fresh
    copies of its local variables, addressed ``F2.1/z4`` (callee name,
    per-cell call ordinal, variable name)."""
    _, clause_counts = count_formula_expansion(formula)
    total = clause_counts[formula.top.name]
    if total > budget:
        raise BudgetExceededError("formula expansion", total, budget)

    variables: list[str] = []
    clauses: list[tuple[str, tuple[str, ...]]] = []

    def instantiate(cell: FormulaCell, prefix: str, iface_vals: tuple[str, ...]) -> None:
        mapping = dict(zip(cell.interface, iface_vals))
        for z in cell.local_vars:
            mapping[z] = prefix + z
            variables.append(prefix + z)
        for rel_name, args in cell.clauses:
            clauses.append((rel_name, tuple(mapping[a] for a in args)))
        ordinals: dict[str, int] = {}
        for call in cell.calls:
            ordinals[call.callee] = ordinals.get(call.callee, 0) + 1
            sub_prefix = f"{prefix}{call.callee}.{ordinals[call.callee]}{ADDRESS_SEP}"
            instantiate(
                formula.fcell(call.callee),
                sub_prefix,
                tuple(mapping[a] for a in call.args),
            )

    instantiate(formula.top, "", ())
    return SFormula(
        relations=formula.relations,
        variables=tuple(variables),
        clauses=tuple(clauses),
    )


def _polarity_relation(polarities: tuple[bool, ...]) -> BoolRelation:
    """The disjunction relation for a clause with the given literal
    polarities: satisfied by every bit tuple except the one falsifying
    all literals."""
    arity = len(polarities)
    falsifying = tuple(0 if pos else 1 for pos in polarities)
    tuples = frozenset(
        tup
        for i in range(2**arity)
        if (tup := tuple((i >> b) & 1 for b in range(arity))) != falsifying
    )
    name = "or" + str(arity) + "_" + "".join("1" if p else "0" for p in polarities)
    return BoolRelation(name, arity, tuples)


def count_fpn_formula_clauses(formula: FPNFormula) -> int:
    """Exact number of expanded clause instances: a static clause with
    maximum literal offset ``t`` instantiates at positions ``0..m-t``."""
    total = 0
    for clause in formula.clauses:
        t = max(lit.offset for lit in clause)
        total += max(0, formula.m - t + 1)
    return total


def expand_fpn_formula(
    formula: FPNFormula, budget: int = DEFAULT_EXPAND_BUDGET
) -> SFormula:
    """Materialize the periodic CNF as a flat formula over variables
    ``v@p``. The instance of a clause at position ``p`` is dropped
    entirely when any of its literals would land beyond ``m``."""
    total = count_fpn_formula_clauses(formula)
    n_vars = (formula.m + 1) * len(formula.variables)
    if max(total, n_vars) > budget:
        raise BudgetExceededError(
            "periodic formula expansion", max(total, n_vars), budget
        )
    relations: dict[str, BoolRelation] = {}
    clause_rels: list[str] = []
    for clause in formula.clauses:
        rel = _polarity_relation(tuple(lit.positive for lit in clause))
        relations.setdefault(rel.name, rel)
        clause_rels.append(rel.name)

    variables = tuple(
        fpn_vertex_name(v, p)
        for p in range(formula.m + 1)
        for v in formula.variables
    )
    clauses: list[tuple[str, tuple[str, ...]]] = []
    for p in range(formula.m + 1):
        for ci, clause in enumerate(formula.clauses):
            if max(lit.offset for lit in clause) + p > formula.m:
                continue
            clauses.append(
                (
                    clause_rels[ci],
                    tuple(
                        fpn_vertex_name(lit.var, p + lit.offset) for lit in clause
                    ),
                )
            )
    return SFormula(
        relations=tuple(relations.values()),
        variables=variables,
        clauses=tuple(clauses),
    )
