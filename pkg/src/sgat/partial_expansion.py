"""Partial expansion: materialize only a bounded-depth window of a
hierarchical specification, or a bounded position window of a periodic
one, while the rest of the (possibly astronomically larger) object is
tracked by exact instance counts.

Graph side:

* :func:`truncated_expand` builds the induced subgraph on explicit
  vertices at substitution depth ``0..max_depth`` below a chosen cell.
  Edges reaching the root cell's own pins are dropped (those pins belong
  to an un-instantiated context).
* :func:`partial_expand` wraps that in a :class:`PartialExpansion`:
  the kept window, the number of vertices in the deleted band, and the
  *frontier* — exact per-cell counts of the sub-specifications hanging
  below the window, which downstream value recurrences weight by.

Periodic side (:func:`fpn_slabs`, :func:`fpn_overlap_slabs`): deleting
every (l+1)-th block of ``k`` consecutive positions (or sharing every
l-th block between neighbours) splits ``0..m`` into slabs whose interior
members are pairwise isomorphic by position shift, so only one
representative per class is ever materialized; class multiplicities are
exact integers even when ``m`` only fits in bignum arithmetic.

Formula side: :func:`truncated_expand_formula` materializes a
depth-bounded window of a hierarchical formula with a caller-supplied
clause-depth filter; :func:`formula_kernel` and :func:`formula_head`
instantiate the windows used by the clause-level deletion scheme.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import BudgetExceededError
from .expansion import (
    DEFAULT_EXPAND_BUDGET,
    DepthCounter,
    ExpandedGraph,
    FormulaDepthCounter,
    _polarity_relation,
    count_formula_expansion,
    count_fpn_formula_clauses,
    formula_level_restriction,
    fpn_formula_narrowness,
    fpn_vertex_name,
)
from .spec_core import (
    ADDRESS_SEP,
    FormulaCell,
    FPNFormula,
    FPNSpec,
    LFormula,
    LSpec,
    SFormula,
    is_pin_ref,
    pin_index,
)

__all__ = [
    "truncated_expand",
    "truncated_vertex_count",
    "PartialExpansion",
    "partial_expand",
    "Interval",
    "MiddleRun",
    "SlabDecomposition",
    "fpn_slabs",
    "OverlapDecomposition",
    "fpn_overlap_slabs",
    "fpn_interval_graph",
    "truncated_expand_formula",
    "formula_kernel",
    "formula_head",
    "FormulaPieces",
    "formula_pieces",
    "fpn_formula_interval",
    "FpnFormulaPieces",
    "fpn_formula_pieces",
]


# ---------------------------------------------------------------------------
# Depth-truncated expansion of hierarchical graph specifications
# ---------------------------------------------------------------------------


def truncated_vertex_count(spec: LSpec, cell_name: str, max_depth: int) -> int:
    """Exact number of explicit vertices at depths ``0..max_depth`` below
    ``cell_name`` (bignum-safe; no materialization)."""
    if max_depth < 0:
        return 0
    counter = DepthCounter(spec)
    limit = min(max_depth, counter.max_depth(cell_name))
    return sum(counter.vertices_at_depth(cell_name, d) for d in range(limit + 1))


def truncated_expand(
    spec: LSpec,
    cell_name: str,
    max_depth: int,
    budget: int = DEFAULT_EXPAND_BUDGET,
) -> ExpandedGraph:
    """The subgraph of the expansion of ``cell_name`` induced on explicit
    vertices of substitution depth at most ``max_depth``.

    Vertex addresses are relative to the given cell (nonterminal-name
    path). Edges whose resolution climbs to one of the root cell's own
    pins are dropped; every other edge has both endpoints inside the
    window, because an edge of a depth-``d`` instance only reaches
    vertices at depths ``<= d``. ``max_depth < 0`` yields the empty graph.
    """
    root = spec.cell(cell_name)
    origin = f"{spec.name}:{cell_name}|depth<={max_depth}"
    if max_depth < 0:
        return ExpandedGraph(vertices=(), edges=(), origin=origin)
    total = truncated_vertex_count(spec, cell_name, max_depth)
    if total > budget:
        raise BudgetExceededError("truncated expansion", total, budget)

    verts: list[str] = []
    edges: list[tuple[str, str]] = []

    def rec(cname: str, prefix: str, depth: int, pin_addr: tuple[str | None, ...]) -> None:
        cell = spec.cell(cname)
        local = {v: prefix + v for v in cell.explicit}
        verts.extend(local[v] for v in cell.explicit)

        def resolve(t: str) -> str | None:
            if is_pin_ref(t):
                return pin_addr[pin_index(t) - 1]
            return local[t]

        for a, b in cell.edges:
            ra, rb = resolve(a), resolve(b)
            if ra is None or rb is None:
                continue
            edges.append((ra, rb))
        if depth == max_depth:
            return
        for nt in cell.nonterminals:
            bind_map = nt.bind_map()
            child = spec.cell(nt.type_name)
            child_pins = tuple(
                resolve(bind_map[k]) for k in range(1, child.pin_count + 1)
            )
            rec(nt.type_name, prefix + nt.name + ADDRESS_SEP, depth + 1, child_pins)

    rec(cell_name, "", 0, (None,) * root.pin_count)
    return ExpandedGraph(vertices=tuple(verts), edges=tuple(edges), origin=origin)


@dataclass(frozen=True)
class PartialExpansion:
    """A bounded-depth window below one cell plus exact counts of what
    hangs beneath it.

    ``mode="delete"``: explicit vertices at depths ``0..start_depth-1``
    are kept, the ``band`` levels ``start_depth..start_depth+band-1`` are
    deleted (their vertex total is ``deleted_vertex_count``), and
    ``frontier`` counts the cell instances at depth ``start_depth+band``
    — the roots of the untouched sub-specifications, which are pairwise
    disconnected from the window once the band is gone.

    ``mode="keep-overlap"``: nothing is deleted; the window spans depths
    ``0..start_depth+band-1`` and ``frontier`` counts instances at depth
    ``start_depth``, so consecutive windows share the ``band`` levels.
    """

    spec_name: str
    root: str
    start_depth: int
    band: int
    mode: str
    graph: ExpandedGraph
    frontier: tuple[tuple[str, int], ...]
    deleted_vertex_count: int

    @property
    def empty(self) -> bool:
        return not self.graph.vertices

    def frontier_map(self) -> dict[str, int]:
        return dict(self.frontier)


def partial_expand(
    spec: LSpec,
    cell_name: str,
    start_depth: int,
    boundary: str = "delete",
    band: int = 1,
    budget: int = DEFAULT_EXPAND_BUDGET,
) -> PartialExpansion:
    """Split the expansion below ``cell_name`` at depth ``start_depth``.

    See :class:`PartialExpansion` for the two boundary modes. ``band``
    is the number of boundary levels (the level restriction of the
    specification for multi-level edge reach).
    """
    if boundary not in ("delete", "keep-overlap"):
        raise ValueError(f"unknown boundary mode {boundary!r}")
    if start_depth < 0:
        raise ValueError("start_depth must be >= 0")
    if band < 1:
        raise ValueError("band must be >= 1")
    counter = DepthCounter(spec)
    if boundary == "delete":
        graph = truncated_expand(spec, cell_name, start_depth - 1, budget)
        frontier_counts = counter.copies_at_depth(cell_name, start_depth + band)
        deleted = sum(
            counter.vertices_at_depth(cell_name, d)
            for d in range(start_depth, start_depth + band)
        )
    else:
        graph = truncated_expand(spec, cell_name, start_depth + band - 1, budget)
        frontier_counts = counter.copies_at_depth(cell_name, start_depth)
        deleted = 0
    frontier = tuple(sorted((c, n) for c, n in frontier_counts.items() if n))
    return PartialExpansion(
        spec_name=spec.name,
        root=cell_name,
        start_depth=start_depth,
        band=band,
        mode=boundary,
        graph=graph,
        frontier=frontier,
        deleted_vertex_count=deleted,
    )


# ---------------------------------------------------------------------------
# Slab decompositions of periodic position ranges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int  # inclusive

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, p: int) -> bool:
        return self.lo <= p <= self.hi


@dataclass(frozen=True)
class MiddleRun:
    """``count`` pairwise shift-isomorphic intervals of equal length:
    ``[first_lo + j*stride, first_lo + j*stride + length - 1]``."""

    first_lo: int
    length: int
    stride: int
    count: int

    def interval(self, j: int) -> Interval:
        if not 0 <= j < self.count:
            raise IndexError("middle interval index out of range")
        lo = self.first_lo + j * self.stride
        return Interval(lo, lo + self.length - 1)


@dataclass(frozen=True)
class SlabDecomposition:
    """Kept-position slabs of ``0..m`` after deleting every (l+1)-th
    ``k``-block, starting with block ``offset`` (block ``q`` covers
    positions ``q*k .. q*k+k-1``; blocks ``q ≡ offset (mod l+1)`` are
    deleted). Edges spanning at most ``k`` positions never cross a
    deleted block, so slabs are pairwise disconnected."""

    m: int
    l: int
    k: int
    offset: int
    head: Interval | None
    middle: MiddleRun | None
    tail: Interval | None

    @property
    def slab_count(self) -> int:
        return (
            (1 if self.head else 0)
            + (self.middle.count if self.middle else 0)
            + (1 if self.tail else 0)
        )

    def kept_positions(self) -> int:
        total = 0
        if self.head:
            total += self.head.length
        if self.middle:
            total += self.middle.count * self.middle.length
        if self.tail:
            total += self.tail.length
        return total

    def is_deleted(self, p: int) -> bool:
        if not 0 <= p <= self.m:
            raise ValueError("position out of range")
        return (p // self.k) % (self.l + 1) == self.offset % (self.l + 1) and (
            p // self.k
        ) >= self.offset

    def interval_for_position(self, p: int) -> Interval | None:
        """The slab containing position ``p`` (None if deleted)."""
        if not 0 <= p <= self.m:
            raise ValueError("position out of range")
        q = p // self.k
        if q < self.offset:
            return self.head
        if (q - self.offset) % (self.l + 1) == 0:
            return None
        run = (q - self.offset) // (self.l + 1)
        if self.middle and run < self.middle.count:
            return self.middle.interval(run)
        return self.tail

    def iter_intervals(self, limit: int = 10**6) -> Iterator[Interval]:
        """All slabs in position order (middles expanded; refuse when the
        class counts exceed ``limit`` — this is a test/debug helper)."""
        if self.slab_count > limit:
            raise BudgetExceededError(
                "slab interval enumeration", self.slab_count, limit
            )
        if self.head:
            yield self.head
        if self.middle:
            for j in range(self.middle.count):
                yield self.middle.interval(j)
        if self.tail:
            yield self.tail


def fpn_slabs(m: int, offset: int, l: int, k: int = 1) -> SlabDecomposition:
    """Decompose positions ``0..m`` by deleting blocks
    ``offset, offset+(l+1), ...`` of ``k`` positions each.

    Interior slabs all have exactly ``l*k`` positions and are grouped
    into one :class:`MiddleRun` with an exact count; the head (before the
    first deletion) and tail (after the last) are explicit.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if l < 1:
        raise ValueError("l must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 <= offset <= l:
        raise ValueError("offset must be in 0..l")
    last_block = m // k
    if offset > last_block:
        # No block gets deleted: the whole range is one slab.
        return SlabDecomposition(m, l, k, offset, Interval(0, m), None, None)
    n_deleted = (last_block - offset) // (l + 1) + 1
    head = Interval(0, offset * k - 1) if offset >= 1 else None
    n_middle = n_deleted - 1
    middle = (
        MiddleRun(
            first_lo=(offset + 1) * k,
            length=l * k,
            stride=(l + 1) * k,
            count=n_middle,
        )
        if n_middle >= 1
        else None
    )
    d_last = offset + (n_deleted - 1) * (l + 1)
    tail = Interval((d_last + 1) * k, m) if d_last < last_block else None
    return SlabDecomposition(m, l, k, offset, head, middle, tail)


@dataclass(frozen=True)
class OverlapDecomposition:
    """Closed pieces of ``0..m`` sharing every l-th ``k``-block: block
    ``q ≡ offset (mod l)`` belongs to both the piece ending and the piece
    starting there, so every edge spanning at most ``k`` positions lies
    inside some piece. Interior pieces span ``(l+1)*k`` positions."""

    m: int
    l: int
    k: int
    offset: int
    head: Interval | None
    middle: MiddleRun | None
    late: tuple[Interval, ...]  # clipped interior piece and/or tail

    def pieces(self, limit: int = 10**6) -> Iterator[Interval]:
        count = (self.middle.count if self.middle else 0) + len(self.late) + (
            1 if self.head else 0
        )
        if count > limit:
            raise BudgetExceededError("piece enumeration", count, limit)
        if self.head:
            yield self.head
        if self.middle:
            for j in range(self.middle.count):
                yield self.middle.interval(j)
        yield from self.late

    def piece_count(self) -> int:
        return (
            (1 if self.head else 0)
            + (self.middle.count if self.middle else 0)
            + len(self.late)
        )

    def pieces_for_position(self, p: int) -> list[Interval]:
        """The one or two pieces containing position ``p``, in order."""
        if not 0 <= p <= self.m:
            raise ValueError("position out of range")
        out: list[Interval] = []
        if self.head and p in self.head:
            out.append(self.head)
        if self.middle:
            # p lies in interval j iff first_lo + j*stride <= p <=
            # first_lo + j*stride + length - 1; pieces overlap, so up to
            # two consecutive j qualify (length <= 2*stride always).
            j_hi = (p - self.middle.first_lo) // self.middle.stride
            for j in (j_hi - 1, j_hi):
                if 0 <= j < self.middle.count and p in self.middle.interval(j):
                    out.append(self.middle.interval(j))
        for piece in self.late:
            if p in piece:
                out.append(piece)
        return out


def fpn_overlap_slabs(m: int, offset: int, l: int, k: int = 1) -> OverlapDecomposition:
    """Closed-piece decomposition for covering problems: boundary blocks
    ``offset, offset+l, offset+2l, ...`` are shared by both neighbouring
    pieces. Unclipped interior pieces are shift-isomorphic with an exact
    count; at most one clipped interior piece plus the tail are explicit.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if l < 1:
        raise ValueError("l must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 <= offset < l:
        raise ValueError("offset must be in 0..l-1")
    last_block = m // k
    if offset > last_block:
        return OverlapDecomposition(m, l, k, offset, Interval(0, m), None, ())
    n_bound = (last_block - offset) // l + 1
    head = Interval(0, min(m, (offset + 1) * k - 1))
    late: list[Interval] = []
    n_middle = n_bound - 1
    full_middle = n_middle
    if n_middle >= 1:
        # Piece j spans blocks offset+j*l .. offset+(j+1)*l inclusive.
        last_hi = (offset + n_middle * l + 1) * k - 1
        if last_hi > m:
            full_middle = n_middle - 1
            late.append(Interval((offset + (n_middle - 1) * l) * k, m))
    middle = (
        MiddleRun(
            first_lo=offset * k,
            length=(l + 1) * k,
            stride=l * k,
            count=full_middle,
        )
        if full_middle >= 1
        else None
    )
    b_last = offset + (n_bound - 1) * l
    if b_last < last_block:
        late.append(Interval(b_last * k, m))
    return OverlapDecomposition(m, l, k, offset, head, middle, tuple(late))


def fpn_interval_graph(
    spec: FPNSpec, lo: int, hi: int, budget: int = DEFAULT_EXPAND_BUDGET
) -> ExpandedGraph:
    """The subgraph of the periodic expansion induced on positions
    ``lo..hi`` (absolute position labels, so slab solutions union
    directly into global ones)."""
    if not 0 <= lo <= hi <= spec.m:
        raise ValueError("interval out of range")
    width = hi - lo + 1
    total = width * len(spec.vertices)
    if total > budget:
        raise BudgetExceededError("interval expansion", total, budget)
    vertices = tuple(
        fpn_vertex_name(v, p) for p in range(lo, hi + 1) for v in spec.vertices
    )
    edges: list[tuple[str, str]] = []
    for p in range(lo, hi + 1):
        for u, v, t in spec.edges:
            if p + t <= hi:
                edges.append((fpn_vertex_name(u, p), fpn_vertex_name(v, p + t)))
    return ExpandedGraph(
        vertices=vertices,
        edges=tuple(edges),
        origin=f"fpn[{lo},{hi}]",
    )


# ---------------------------------------------------------------------------
# Depth-truncated expansion of hierarchical formulas
# ---------------------------------------------------------------------------


def truncated_expand_formula(
    formula: LFormula,
    cell_name: str,
    var_max_depth: int,
    clause_pred: Callable[[int], bool],
    budget: int = DEFAULT_EXPAND_BUDGET,
) -> SFormula:
    """A depth-bounded window of the formula expansion below ``cell_name``.

    Local variables of call instances at depths ``0..var_max_depth`` are
    materialized (addresses relative to the window root); the clause set
    of each depth-``d`` instance is included iff ``clause_pred(d)``.
    Included clauses must resolve every argument inside the window — an
    argument escaping through the root's interface raises ``ValueError``
    (callers choose ``clause_pred`` so that this cannot happen).
    """
    root = formula.fcell(cell_name)
    if var_max_depth < 0:
        return SFormula(relations=formula.relations, variables=(), clauses=())
    fdc = FormulaDepthCounter(formula)
    limit = min(var_max_depth, fdc.max_depth(cell_name))
    total_vars = sum(
        n * len(formula.fcell(c).local_vars)
        for d in range(limit + 1)
        for c, n in fdc.copies_at_depth(cell_name, d).items()
    )
    if total_vars > budget:
        raise BudgetExceededError("truncated formula expansion", total_vars, budget)

    variables: list[str] = []
    clauses: list[tuple[str, tuple[str, ...]]] = []

    def rec(
        cell: FormulaCell, prefix: str, depth: int, iface_vals: tuple[str | None, ...]
    ) -> None:
        mapping: dict[str, str | None] = dict(zip(cell.interface, iface_vals))
        for z in cell.local_vars:
            mapping[z] = prefix + z
            variables.append(prefix + z)
        if clause_pred(depth):
            for rel_name, args in cell.clauses:
                resolved = []
                for a in args:
                    val = mapping[a]
                    if val is None:
                        raise ValueError(
                            "clause filter admitted a clause whose argument"
                            " escapes the window root"
                        )
                    resolved.append(val)
                clauses.append((rel_name, tuple(resolved)))
        if depth == var_max_depth:
            return
        ordinals: dict[str, int] = {}
        for call in cell.calls:
            ordinals[call.callee] = ordinals.get(call.callee, 0) + 1
            sub_prefix = f"{prefix}{call.callee}.{ordinals[call.callee]}{ADDRESS_SEP}"
            rec(
                formula.fcell(call.callee),
                sub_prefix,
                depth + 1,
                tuple(mapping[a] for a in call.args),
            )

    rec(root, "", 0, (None,) * len(root.interface))
    return SFormula(
        relations=formula.relations,
        variables=tuple(variables),
        clauses=tuple(clauses),
    )


def formula_kernel(
    formula: LFormula,
    cell_name: str,
    l: int,
    lam: int,
    budget: int = DEFAULT_EXPAND_BUDGET,
) -> SFormula:
    """The clause-deletion piece rooted at ``cell_name``: local variables
    at relative depths ``0..l-1``, clauses at relative depths
    ``lam..l-1`` (``lam`` = interface resolution depth of the formula, so
    every kept clause resolves inside the piece)."""
    return truncated_expand_formula(
        formula, cell_name, l - 1, lambda d: d >= lam, budget
    )


def formula_head(
    formula: LFormula,
    offset_j: int,
    l: int,
    lam: int,
    budget: int = DEFAULT_EXPAND_BUDGET,
) -> SFormula:
    """The shallow remainder piece at schedule offset ``offset_j``:
    clauses of kept residue whose owning piece root (their nearest
    ancestor at depth ``≡ offset_j+1 (mod l+1)``) would sit above the top
    cell. Their variables live at depths no deeper than any full piece
    reaches, so the head is variable-disjoint from all full pieces."""
    period = l + 1
    deleted = {(offset_j + t) % period for t in range(lam + 1)}

    def pred(d: int) -> bool:
        if d % period in deleted:
            return False
        r = (d - (offset_j + 1)) % period
        return d - r < 0

    top = formula.top.name
    fdc = FormulaDepthCounter(formula)
    max_d = min(fdc.max_depth(top), l)
    head_depth = max((d for d in range(max_d + 1) if pred(d)), default=-1)
    return truncated_expand_formula(formula, top, head_depth, pred, budget)


@dataclass(frozen=True)
class FormulaPieces:
    """Variable-disjoint clause-deletion decomposition of a hierarchical
    formula at one schedule offset: a shallow head plus one
    representative piece per cell type with its exact copy count."""

    offset_j: int
    head: SFormula
    pieces: tuple[tuple[str, SFormula, int], ...]  # (cell, piece, copies)
    kept_clauses: int
    deleted_clauses: int


def formula_pieces(
    formula: LFormula,
    l: int,
    iteration: int,
    budget: int = DEFAULT_EXPAND_BUDGET,
) -> FormulaPieces:
    """Decompose the expanded clause set at schedule ``iteration`` (the
    scheme tries iterations 0, 2, …, 2l; ``offset_j = iteration mod
    (l+1)``). Deleting the clause levels between pieces makes the
    returned sub-formulas pairwise variable-disjoint; interior copies of
    one cell type are isomorphic, so one representative plus an exact
    count describes them all."""
    offset_j = iteration % (l + 1)
    lam = max(1, formula_level_restriction(formula))
    head = formula_head(formula, offset_j, l, lam, budget)
    fdc = FormulaDepthCounter(formula)
    top = formula.top.name
    max_d = fdc.max_depth(top)
    multiplicity: dict[str, int] = {}
    first_root = (offset_j + 1) % (l + 1)
    for d in range(first_root, max_d + 1, l + 1):
        for cell_name, n in fdc.copies_at_depth(top, d).items():
            multiplicity[cell_name] = multiplicity.get(cell_name, 0) + n
    pieces = tuple(
        (name, formula_kernel(formula, name, l, lam, budget), count)
        for name, count in sorted(multiplicity.items())
        if count
    )
    kept = len(head.clauses) + sum(
        len(piece.clauses) * count for _, piece, count in pieces
    )
    _, clause_counts = count_formula_expansion(formula)
    total = clause_counts[top]
    return FormulaPieces(
        offset_j=offset_j,
        head=head,
        pieces=pieces,
        kept_clauses=kept,
        deleted_clauses=total - kept,
    )


def fpn_formula_interval(formula: FPNFormula, lo: int, hi: int) -> SFormula:
    """Clause instances whose start position lies in ``lo..hi`` (dropped
    if any literal lands beyond position ``m``), over the variables they
    touch."""
    relations: dict[str, object] = {}
    clause_rels: list[str] = []
    widths: list[int] = []
    for clause in formula.clauses:
        rel = _polarity_relation(tuple(lit.positive for lit in clause))
        relations.setdefault(rel.name, rel)
        clause_rels.append(rel.name)
        widths.append(max(lit.offset for lit in clause))
    variables: list[str] = []
    seen: set[str] = set()
    clauses: list[tuple[str, tuple[str, ...]]] = []
    for p in range(lo, hi + 1):
        for ci, clause in enumerate(formula.clauses):
            if p + widths[ci] > formula.m:
                continue
            args = tuple(
                fpn_vertex_name(lit.var, p + lit.offset) for lit in clause
            )
            clauses.append((clause_rels[ci], args))
            for a in args:
                if a not in seen:
                    seen.add(a)
                    variables.append(a)
    return SFormula(
        relations=tuple(relations.values()),
        variables=tuple(variables),
        clauses=tuple(clauses),
    )


@dataclass(frozen=True)
class FpnFormulaPieces:
    """Clause-position deletion decomposition of a periodic formula:
    kept runs as (interval, sub-formula) with interior runs represented
    once and counted exactly."""

    offset: int
    head: tuple[Interval, SFormula] | None
    middle: tuple[Interval, SFormula] | None
    middle_count: int
    tail: tuple[Interval, SFormula] | None
    kept_clauses: int
    deleted_clauses: int


def fpn_formula_pieces(
    formula: FPNFormula, l: int, offset: int
) -> FpnFormulaPieces:
    """Decompose a periodic formula's clause positions by deleting bands
    of ``max(1, narrowness)`` consecutive positions once per period; the
    kept runs share no variables (a position-``p`` clause reaches only
    positions ``p..p+narrowness``)."""
    k = max(1, fpn_formula_narrowness(formula))
    decomp = fpn_slabs(formula.m, offset, l, k)
    head = middle = tail = None
    kept = 0
    if decomp.head:
        piece = fpn_formula_interval(formula, decomp.head.lo, decomp.head.hi)
        head = (decomp.head, piece)
        kept += len(piece.clauses)
    count = decomp.middle.count if decomp.middle else 0
    if count:
        first = decomp.middle.interval(0)
        piece = fpn_formula_interval(formula, first.lo, first.hi)
        middle = (first, piece)
        # interior runs are shift-isomorphic except for end-of-lattice
        # clause drops, which only the last run can experience
        last = decomp.middle.interval(count - 1)
        last_piece = fpn_formula_interval(formula, last.lo, last.hi)
        kept += (count - 1) * len(piece.clauses) + len(last_piece.clauses)
    if decomp.tail:
        piece = fpn_formula_interval(formula, decomp.tail.lo, decomp.tail.hi)
        tail = (decomp.tail, piece)
        kept += len(piece.clauses)
    total = count_fpn_formula_clauses(formula)
    return FpnFormulaPieces(
        offset=offset,
        head=head,
        middle=middle,
        middle_count=count,
        tail=tail,
        kept_clauses=kept,
        deleted_clauses=total - kept,
    )
