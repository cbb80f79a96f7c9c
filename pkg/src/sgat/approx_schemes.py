"""Partial-expansion approximation schemes.

Every scheme follows one shifting template: choose a deletion (or
overlap) offset, split the instance into pieces whose size depends only
on the specification — never on the expanded size — solve each distinct
piece once with a base solver, and combine piece optima with exact
instance counts. Trying all offsets and keeping the best bounds the loss
by an explicit worst-case ratio:

* independent set: delete one level band per period; pieces are
  disconnected, so piece optima add up. Value >= (l/(l+1))^2/rho * OPT.
* vertex cover: neighbouring pieces share a band; the union of piece
  covers still covers every edge. Value <= ((l+1)/l)^2*rho * OPT.
* max cut: pieces tile the instance; edges across piece boundaries are
  re-counted after greedily flipping whole sub-solutions (a flip never
  changes a piece's internal cut). Value >= (l/(l+1))/rho * OPT.
* weighted-clause satisfaction: one clause-level band per period is
  deleted so pieces become variable-disjoint; piece assignments union
  into one global assignment. Value >= (1 - 2/(l+1))/rho * OPT for
  1-level-restricted formulas (the band widens with the restriction).

Specifications with too few cells for even one deletion band (or
periodic bounds too small for one deleted block) are solved directly by
the base solver on the budget-guarded full expansion; the stated
guarantee then holds trivially.

The returned :class:`ApproxSolution` carries per-piece witnesses plus
the exact arithmetic needed to answer membership queries and stream the
solution without ever materializing the expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .base_solvers import (
    DEFAULT_EXACT_BUDGET,
    DEFAULT_MAXSAT_VAR_BUDGET,
    SolverContract,
    exact_maxsat,
    get_solver,
)
from .errors import BudgetExceededError, ConstraintError, SolverInapplicableError
from .expansion import (
    DEFAULT_EXPAND_BUDGET,
    DepthCounter,
    ExpandedGraph,
    FormulaDepthCounter,
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
)
from .partial_expansion import (
    Interval,
    OverlapDecomposition,
    SlabDecomposition,
    formula_head,
    formula_kernel,
    fpn_formula_interval,
    fpn_interval_graph,
    fpn_overlap_slabs,
    fpn_slabs,
    truncated_expand,
)
from .spec_core import ADDRESS_SEP, FPNFormula, FPNSpec, LFormula, LSpec

__all__ = [
    "DEFAULT_PIECE_BUDGET",
    "epsilon_to_l",
    "ApproxSolution",
    "h_mis",
    "h_vc",
    "h_maxcut",
    "h_maxsat",
    "fpn_mis",
    "fpn_vc",
    "fpn_maxcut",
    "fpn_maxsat",
]

DEFAULT_PIECE_BUDGET = 20000


def epsilon_to_l(epsilon: float, kind: str) -> int:
    """Smallest shifting parameter ``l`` meeting a target error bound.

    ``maximize-squared``: (l/(l+1))^2 >= 1-eps; ``minimize-squared``:
    ((l+1)/l)^2 <= 1+eps; ``maximize-linear``: l/(l+1) >= 1-eps;
    ``maxsat``: 1 - 2/(l+1) >= 1-eps.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be strictly between 0 and 1")
    if kind == "maxsat":
        l = -(-2 // Fraction(epsilon)) - 1  # ceil(2/eps) - 1
        return max(1, int(l))
    l = 1
    while True:
        ok = {
            "maximize-squared": Fraction(l, l + 1) ** 2 >= 1 - Fraction(epsilon),
            "minimize-squared": Fraction(l + 1, l) ** 2 <= 1 + Fraction(epsilon),
            "maximize-linear": Fraction(l, l + 1) >= 1 - Fraction(epsilon),
        }.get(kind)
        if ok is None:
            raise ValueError(f"unknown epsilon conversion kind {kind!r}")
        if ok:
            return l
        l += 1


def _resolve_l(l: int | None, epsilon: float | None, kind: str) -> int:
    if l is None:
        if epsilon is None:
            raise ValueError("either l or epsilon is required")
        l = epsilon_to_l(epsilon, kind)
    if l < 1:
        raise ValueError("l must be >= 1")
    return l


def _resolve_k(k: int | None, measured: int) -> int:
    """Band width for the deletion/overlap decomposition: the measured
    level restriction (or narrowness) by default; a wider caller-supplied
    band is sound (pieces stay disconnected), a narrower one is not."""
    if k is None:
        return measured
    if k < measured:
        raise ConstraintError(
            f"band width k={k} is narrower than the measured width {measured}"
        )
    return k


# ---------------------------------------------------------------------------
# Solution container and payloads
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ApproxSolution:
    """Outcome of one scheme run: the achieved objective value, the
    offset that achieved it, the promised worst-case ratio, and a
    mode-specific payload from which membership queries, streaming, and
    re-emission are answered."""

    problem: str  # "mis" | "vc" | "maxcut" | "maxsat"
    source_kind: str  # "lspec" | "fpn" | "lformula" | "fpncnf"
    spec: object
    l: int
    offset: int
    rho: Fraction
    guarantee: Fraction
    total_value: int
    mode: str
    payload: object
    stats: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class DirectPayload:
    """Full-expansion witness from a degenerate (direct) solve."""

    witness: object


@dataclass(frozen=True)
class HierMisPayload:
    k: int
    stub_set: frozenset[str]
    piece_sets: Mapping[str, frozenset[str]]
    piece_values: Mapping[str, int]
    cell_values: Mapping[str, int]


@dataclass(frozen=True)
class HierVcPayload:
    k: int
    boundary_depth: int  # depth of the first piece roots below the stub
    stub_cover: frozenset[str]
    piece_covers: Mapping[str, frozenset[str]]
    cell_values: Mapping[str, int]


@dataclass(frozen=True)
class HierCutPayload:
    k: int
    stub_side: frozenset[str]
    stub_value: int
    stub_slot_flips: Mapping[str, int]
    piece_sides: Mapping[str, frozenset[str]]
    piece_values: Mapping[str, int]
    slot_flips: Mapping[str, Mapping[str, int]]
    cell_values: Mapping[str, int]


@dataclass(frozen=True)
class HierSatPayload:
    lam: int
    head_assignment: Mapping[str, bool]
    kernel_assignments: Mapping[str, Mapping[str, bool]]
    cell_values: Mapping[str, int]


@dataclass(frozen=True)
class FpnMisPayload:
    decomposition: SlabDecomposition
    head_set: frozenset[str]
    middle_set: frozenset[str]  # representative (first middle interval)
    tail_set: frozenset[str]


@dataclass(frozen=True)
class FpnVcPayload:
    decomposition: OverlapDecomposition
    head_cover: frozenset[str]
    middle_cover: frozenset[str]  # representative (first interior piece)
    late_covers: tuple[frozenset[str], ...]


@dataclass(frozen=True)
class FpnCutPayload:
    k: int
    head: Interval | None
    head_side: frozenset[str]
    piece_lo: int  # start of the first tiled piece
    stride: int
    piece_count: int
    clipped: bool
    rep_side: frozenset[str]  # first tiled piece, absolute names
    clip_side: frozenset[str]  # last piece when clipped
    parity0: int  # flip of the first tiled piece
    gen_bit: int  # relative flip across generic boundaries
    clip_bit: int  # relative flip into the clipped piece


@dataclass(frozen=True)
class FpnSatPayload:
    k: int
    narrowness: int
    decomposition: SlabDecomposition  # over clause start positions
    generic_count: int  # leading middles that are complete
    head_assignment: Mapping[str, bool]
    middle_assignment: Mapping[str, bool]  # representative (first middle)
    explicit: tuple[tuple[Interval, Mapping[str, bool]], ...]


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _addr_depth(addr: str) -> int:
    return addr.count(ADDRESS_SEP)


def _iter_slots(
    spec: LSpec, cell_name: str, depth: int, cap: int = DEFAULT_PIECE_BUDGET
) -> list[tuple[str, str]]:
    """All nonterminal paths of length ``depth`` below a cell, as
    (address prefix ending in the separator — empty for depth 0,
    cell type name) pairs in declaration order."""
    out: list[tuple[str, str]] = []

    def rec(cname: str, prefix: str, d: int) -> None:
        if d == depth:
            if len(out) >= cap:
                raise BudgetExceededError("slot enumeration", len(out) + 1, cap)
            out.append((prefix, cname))
            return
        for nt in spec.cell(cname).nonterminals:
            rec(nt.type_name, prefix + nt.name + ADDRESS_SEP, d + 1)

    rec(cell_name, "", 0)
    return out


def _check_applicable(solver: SolverContract, piece: object) -> None:
    ok, why = solver.applicable(piece)
    if not ok:
        raise SolverInapplicableError(
            f"base solver {solver.name!r} cannot run on a piece: {why}"
        )


def _solve_piece(
    solver: SolverContract, piece: ExpandedGraph, exact_budget: int
):
    _check_applicable(solver, piece)
    return solver.solve(piece, exact_budget)


def _shift_names(names, delta: int) -> frozenset[str]:
    out = []
    for a in names:
        v, p = parse_fpn_vertex_name(a)
        out.append(fpn_vertex_name(v, p + delta))
    return frozenset(out)


def _restrict_positions(names, lo: int, hi: int) -> frozenset[str]:
    return frozenset(a for a in names if lo <= parse_fpn_vertex_name(a)[1] <= hi)


# ---------------------------------------------------------------------------
# Hierarchical graph schemes
# ---------------------------------------------------------------------------


def h_mis(
    spec: LSpec,
    l: int | None = None,
    epsilon: float | None = None,
    k: int | None = None,
    base: str = "exact",
    exact_budget: int = DEFAULT_EXACT_BUDGET,
    piece_budget: int = DEFAULT_PIECE_BUDGET,
    expand_budget: int = DEFAULT_EXPAND_BUDGET,
) -> ApproxSolution:
    """Independent set on a hierarchical specification by level-band
    deletion. Pieces are per-cell windows of ``k*l`` levels (k = level
    restriction); deleting the following ``k`` levels disconnects them,
    so the best piece sets union into an independent set whose size is
    returned exactly."""
    l = _resolve_l(l, epsilon, "maximize-squared")
    solver = get_solver(base, "mis", l)
    guarantee = Fraction(l * l, (l + 1) * (l + 1)) / solver.rho
    if len(spec.cells) <= l + 1:
        return _degenerate_lspec(
            spec, "mis", solver, l, guarantee, exact_budget, expand_budget
        )
    k = _resolve_k(k, max(1, level_restriction(spec)))
    period = k * (l + 1)
    counter = DepthCounter(spec)

    piece_sets: dict[str, frozenset[str]] = {}
    piece_values: dict[str, int] = {}
    cell_values: dict[str, int] = {}
    for cell in spec.cells:
        piece = truncated_expand(spec, cell.name, k * l - 1, piece_budget)
        out = _solve_piece(solver, piece, exact_budget)
        piece_sets[cell.name] = frozenset(out.payload)
        piece_values[cell.name] = out.value
        below = counter.copies_at_depth(cell.name, period)
        cell_values[cell.name] = out.value + sum(
            n * cell_values[e] for e, n in below.items()
        )

    top = spec.top.name
    best: tuple[int, int, frozenset[str]] | None = None
    for t in range(l + 1):
        stub = truncated_expand(spec, top, t * k - 1, piece_budget)
        out = _solve_piece(solver, stub, exact_budget)
        value = out.value + sum(
            n * cell_values[e]
            for e, n in counter.copies_at_depth(top, t * k + k).items()
        )
        if best is None or value > best[0]:
            best = (value, t, frozenset(out.payload))
    assert best is not None
    value, t, stub_set = best
    payload = HierMisPayload(
        k=k,
        stub_set=stub_set,
        piece_sets=piece_sets,
        piece_values=piece_values,
        cell_values=cell_values,
    )
    return ApproxSolution(
        problem="mis",
        source_kind="lspec",
        spec=spec,
        l=l,
        offset=t,
        rho=solver.rho,
        guarantee=guarantee,
        total_value=value,
        mode="hier-delete",
        payload=payload,
        stats={"pieces": len(spec.cells), "base": solver.name, "k": k},
    )


def h_vc(
    spec: LSpec,
    l: int | None = None,
    epsilon: float | None = None,
    k: int | None = None,
    base: str = "exact",
    exact_budget: int = DEFAULT_EXACT_BUDGET,
    piece_budget: int = DEFAULT_PIECE_BUDGET,
    expand_budget: int = DEFAULT_EXPAND_BUDGET,
) -> ApproxSolution:
    """Vertex cover by overlapping level windows: per-cell pieces of
    ``k*l + k`` levels share their boundary band of ``k`` levels with the
    next pieces, so every edge lies inside some piece and the union of
    exact piece covers is a cover. The union size is counted exactly
    (shared-band vertices once)."""
    l = _resolve_l(l, epsilon, "minimize-squared")
    solver = get_solver(base, "vc", l)
    guarantee = Fraction((l + 1) * (l + 1), l * l) * solver.rho
    if len(spec.cells) <= l + 1:
        return _degenerate_lspec(
            spec, "vc", solver, l, guarantee, exact_budget, expand_budget
        )
    k = _resolve_k(k, max(1, level_restriction(spec)))
    period = k * l
    counter = DepthCounter(spec)

    piece_covers: dict[str, frozenset[str]] = {}
    cell_values: dict[str, int] = {}

    def slot_union(
        parent_cover: frozenset[str], prefix: str, child: str
    ) -> int:
        band_parent = {
            a for a in parent_cover
            if a.startswith(prefix) and _addr_depth(a) - period <= k - 1
        }
        band_child = {
            prefix + r for r in piece_covers[child] if _addr_depth(r) <= k - 1
        }
        return len(band_parent | band_child)

    for cell in spec.cells:
        window = truncated_expand(spec, cell.name, period + k - 1, piece_budget)
        out = _solve_piece(solver, window, exact_budget)
        cover = frozenset(out.payload)
        piece_covers[cell.name] = cover
        exclusive = sum(1 for a in cover if k <= _addr_depth(a) <= period - 1)
        slots = _iter_slots(spec, cell.name, period, piece_budget)
        value = exclusive + sum(
            slot_union(cover, prefix, child) + cell_values[child]
            for prefix, child in slots
        )
        cell_values[cell.name] = value

    top = spec.top.name
    best: tuple[int, int, frozenset[str], int] | None = None
    for t in range(l):
        boundary = t * k if t >= 1 else period
        stub_window = truncated_expand(spec, top, boundary + k - 1, piece_budget)
        out = _solve_piece(solver, stub_window, exact_budget)
        stub_cover = frozenset(out.payload)
        exclusive = sum(1 for a in stub_cover if _addr_depth(a) <= boundary - 1)
        value = exclusive
        for prefix, child in _iter_slots(spec, top, boundary, piece_budget):
            band_parent = {
                a for a in stub_cover
                if a.startswith(prefix) and _addr_depth(a) - boundary <= k - 1
            }
            band_child = {
                prefix + r for r in piece_covers[child] if _addr_depth(r) <= k - 1
            }
            value += len(band_parent | band_child) + cell_values[child]
        if best is None or value < best[0]:
            best = (value, t, stub_cover, boundary)
    assert best is not None
    value, t, stub_cover, boundary = best
    payload = HierVcPayload(
        k=k,
        boundary_depth=boundary,
        stub_cover=stub_cover,
        piece_covers=piece_covers,
        cell_values=cell_values,
    )
    return ApproxSolution(
        problem="vc",
        source_kind="lspec",
        spec=spec,
        l=l,
        offset=t,
        rho=solver.rho,
        guarantee=guarantee,
        total_value=value,
        mode="hier-overlap",
        payload=payload,
        stats={"pieces": len(spec.cells), "base": solver.name, "k": k},
    )


def _cut_cross_recovery(
    window: ExpandedGraph,
    boundary: int,
    parent_side: frozenset[str],
    piece_sides: Mapping[str, frozenset[str]],
    slots: list[tuple[str, str]],
) -> tuple[int, dict[str, int]]:
    """Cut contribution of edges crossing piece roots at ``boundary``:
    for each slot, count crossing edges cut with the child solution as
    is versus globally flipped, and keep the better choice."""
    per_slot_edges: dict[str, list[tuple[str, str]]] = {p: [] for p, _ in slots}
    prefixes = sorted(per_slot_edges, key=len, reverse=True)

    def owner(addr: str) -> str | None:
        if _addr_depth(addr) < boundary:
            return None
        for p in prefixes:
            if p and addr.startswith(p):
                return p
        return ""

    for a, b in window.edges:
        oa, ob = owner(a), owner(b)
        if oa == ob:
            continue
        if oa is None:
            per_slot_edges[ob].append((a, b))  # type: ignore[index]
        elif ob is None:
            per_slot_edges[oa].append((b, a))
    recovered = 0
    flips: dict[str, int] = {}
    slot_types = dict(slots)
    for prefix, child in slots:
        crossing = per_slot_edges[prefix]
        child_side = piece_sides[slot_types[prefix]]
        cut = 0
        for parent_v, child_v in crossing:
            ps = parent_v in parent_side
            cs = child_v[len(prefix):] in child_side
            cut += ps != cs
        flip = 1 if len(crossing) - cut > cut else 0
        flips[prefix] = flip
        recovered += max(cut, len(crossing) - cut)
    return recovered, flips


def h_maxcut(
    spec: LSpec,
    l: int | None = None,
    epsilon: float | None = None,
    k: int | None = None,
    base: str = "exact",
    exact_budget: int = DEFAULT_EXACT_BUDGET,
    piece_budget: int = DEFAULT_PIECE_BUDGET,
    expand_budget: int = DEFAULT_EXPAND_BUDGET,
) -> ApproxSolution:
    """Max cut by level tiling: per-cell pieces of ``k*(l+1)`` levels
    tile the expansion; the only uncounted edges cross piece roots, and
    for each child sub-solution the whole subtree may be flipped for
    free, recovering at least half of them. Every edge is counted
    exactly once, so the total is the true cut value of the assembled
    assignment."""
    l = _resolve_l(l, epsilon, "maximize-linear")
    solver = get_solver(base, "maxcut", l)
    guarantee = Fraction(l, l + 1) / solver.rho
    if len(spec.cells) <= l + 1:
        return _degenerate_lspec(
            spec, "maxcut", solver, l, guarantee, exact_budget, expand_budget
        )
    k = _resolve_k(k, max(1, level_restriction(spec)))
    period = k * (l + 1)
    counter = DepthCounter(spec)

    piece_sides: dict[str, frozenset[str]] = {}
    piece_values: dict[str, int] = {}
    slot_flips: dict[str, dict[str, int]] = {}
    cell_values: dict[str, int] = {}
    for cell in spec.cells:
        piece = truncated_expand(spec, cell.name, period - 1, piece_budget)
        out = _solve_piece(solver, piece, exact_budget)
        piece_sides[cell.name] = frozenset(out.payload)
        piece_values[cell.name] = out.value
        window = truncated_expand(spec, cell.name, period + k - 1, piece_budget)
        slots = _iter_slots(spec, cell.name, period, piece_budget)
        recovered, flips = _cut_cross_recovery(
            window, period, piece_sides[cell.name], piece_sides, slots
        )
        slot_flips[cell.name] = flips
        below = counter.copies_at_depth(cell.name, period)
        cell_values[cell.name] = (
            out.value + recovered + sum(n * cell_values[e] for e, n in below.items())
        )

    top = spec.top.name
    best = None
    for t in range(l + 1):
        boundary = t * k
        stub = truncated_expand(spec, top, boundary - 1, piece_budget)
        out = _solve_piece(solver, stub, exact_budget)
        window = truncated_expand(spec, top, boundary + k - 1, piece_budget)
        slots = _iter_slots(spec, top, boundary, piece_budget)
        recovered, flips = _cut_cross_recovery(
            window, boundary, frozenset(out.payload), piece_sides, slots
        )
        value = (
            out.value
            + recovered
            + sum(
                n * cell_values[e]
                for e, n in counter.copies_at_depth(top, boundary).items()
            )
        )
        if best is None or value > best[0]:
            best = (value, t, frozenset(out.payload), out.value, flips)
    assert best is not None
    value, t, stub_side, stub_value, stub_flips = best
    payload = HierCutPayload(
        k=k,
        stub_side=stub_side,
        stub_value=stub_value,
        stub_slot_flips=stub_flips,
        piece_sides=piece_sides,
        piece_values=piece_values,
        slot_flips=slot_flips,
        cell_values=cell_values,
    )
    return ApproxSolution(
        problem="maxcut",
        source_kind="lspec",
        spec=spec,
        l=l,
        offset=t,
        rho=solver.rho,
        guarantee=guarantee,
        total_value=value,
        mode="hier-tile",
        payload=payload,
        stats={"pieces": len(spec.cells), "base": solver.name, "k": k},
    )


def h_maxsat(
    formula: LFormula,
    l: int | None = None,
    epsilon: float | None = None,
    exact_budget: int = DEFAULT_MAXSAT_VAR_BUDGET,
    piece_budget: int = DEFAULT_PIECE_BUDGET,
    expand_budget: int = DEFAULT_EXPAND_BUDGET,
) -> ApproxSolution:
    """Clause satisfaction on a hierarchical formula by clause-level
    deletion: per-cell kernels keep clauses at relative depths
    ``lam..l-1`` (lam = interface resolution depth), which makes distinct
    kernels variable-disjoint; kernel assignments union into one global
    assignment whose kept-clause satisfaction count is the returned
    value (deleted clauses can only add to it)."""
    l = _resolve_l(l, epsilon, "maxsat")
    rho = Fraction(1)
    lam = formula_level_restriction(formula)
    guarantee = max(Fraction(0), Fraction(l - max(lam, 1), l + 1)) / rho
    if len(formula.fcells) <= l + 1:
        return _degenerate_lformula(formula, l, guarantee, exact_budget, expand_budget)

    fdc = FormulaDepthCounter(formula)
    kernel_assignments: dict[str, Mapping[str, bool]] = {}
    cell_values: dict[str, int] = {}
    for cell in formula.fcells:
        kernel = formula_kernel(formula, cell.name, l, lam, piece_budget)
        res = exact_maxsat(kernel, exact_budget)
        kernel_assignments[cell.name] = res.assignment
        below = fdc.copies_at_depth(cell.name, l + 1)
        cell_values[cell.name] = res.satisfied + sum(
            n * cell_values[e] for e, n in below.items()
        )

    top = formula.top.name
    schedule: list[int] = []
    for i in range(0, 2 * l + 1, 2):
        j = i % (l + 1)
        if j not in schedule:
            schedule.append(j)
    best = None
    for j in schedule:
        head = formula_head(formula, j, l, lam, piece_budget)
        res = exact_maxsat(head, exact_budget)
        first_root = (j + 1) % (l + 1)  # j == l roots the top cell itself
        value = res.satisfied + sum(
            n * cell_values[e]
            for e, n in fdc.copies_at_depth(top, first_root).items()
        )
        if best is None or value > best[0]:
            best = (value, j, res.assignment)
    assert best is not None
    value, j, head_assignment = best
    payload = HierSatPayload(
        lam=lam,
        head_assignment=head_assignment,
        kernel_assignments=kernel_assignments,
        cell_values=cell_values,
    )
    return ApproxSolution(
        problem="maxsat",
        source_kind="lformula",
        spec=formula,
        l=l,
        offset=j,
        rho=rho,
        guarantee=guarantee,
        total_value=value,
        mode="hier-clause",
        payload=payload,
        stats={"pieces": len(formula.fcells), "lam": lam, "schedule": tuple(schedule)},
    )


# ---------------------------------------------------------------------------
# Degenerate (direct) solves
# ---------------------------------------------------------------------------


def _direct_solution(
    problem: str,
    source_kind: str,
    spec: object,
    graph_or_formula: object,
    solver: SolverContract | None,
    l: int,
    guarantee: Fraction,
    exact_budget: int,
) -> ApproxSolution:
    if problem == "maxsat":
        res = exact_maxsat(graph_or_formula, exact_budget)
        value: int = res.satisfied
        witness: object = res.assignment
        rho = Fraction(1)
    else:
        assert solver is not None
        _check_applicable(solver, graph_or_formula)
        out = solver.solve(graph_or_formula, exact_budget)
        value = out.value
        witness = out.payload
        rho = solver.rho
    return ApproxSolution(
        problem=problem,
        source_kind=source_kind,
        spec=spec,
        l=l,
        offset=0,
        rho=rho,
        guarantee=guarantee,
        total_value=value,
        mode="degenerate",
        payload=DirectPayload(witness),
        stats={"degenerate": True},
    )


def _degenerate_lspec(spec, problem, solver, l, guarantee, exact_budget, expand_budget):
    graph = expand(spec, expand_budget)
    return _direct_solution(
        problem, "lspec", spec, graph, solver, l, guarantee, exact_budget
    )


def _degenerate_lformula(formula, l, guarantee, exact_budget, expand_budget):
    flat = expand_formula(formula, expand_budget)
    return _direct_solution(
        "maxsat", "lformula", formula, flat, None, l, guarantee, exact_budget
    )


def _degenerate_fpn(spec, problem, solver, l, guarantee, exact_budget, expand_budget):
    graph = expand_fpn(spec, expand_budget)
    return _direct_solution(
        problem, "fpn", spec, graph, solver, l, guarantee, exact_budget
    )


def _degenerate_fpn_formula(formula, l, guarantee, exact_budget, expand_budget):
    flat = expand_fpn_formula(formula, expand_budget)
    return _direct_solution(
        "maxsat", "fpncnf", formula, flat, None, l, guarantee, exact_budget
    )


# ---------------------------------------------------------------------------
# Periodic graph schemes
# ---------------------------------------------------------------------------


def fpn_mis(
    spec: FPNSpec,
    l: int | None = None,
    epsilon: float | None = None,
    k: int | None = None,
    base: str = "exact",
    exact_budget: int = DEFAULT_EXACT_BUDGET,
    piece_budget: int = DEFAULT_PIECE_BUDGET,
    expand_budget: int = DEFAULT_EXPAND_BUDGET,
) -> ApproxSolution:
    """Independent set on a periodic specification by position-block
    deletion. Interior slabs are shift-isomorphic, so one representative
    is solved and weighted by the exact class count — the total equals
    the sum of exact slab optima even when ``m`` is astronomically
    large."""
    l = _resolve_l(l, epsilon, "maximize-squared")
    solver = get_solver(base, "mis", l)
    guarantee = Fraction(l * l, (l + 1) * (l + 1)) / solver.rho
    k = _resolve_k(k, max(1, fpn_narrowness(spec)))
    if spec.m // k < l:
        return _degenerate_fpn(
            spec, "mis", solver, l, guarantee, exact_budget, expand_budget
        )

    def solve_interval(iv: Interval | None):
        if iv is None:
            return frozenset(), 0
        g = fpn_interval_graph(spec, iv.lo, iv.hi, piece_budget)
        out = _solve_piece(solver, g, exact_budget)
        return frozenset(out.payload), out.value

    best = None
    for i in range(l + 1):
        decomp = fpn_slabs(spec.m, i, l, k)
        head_set, head_val = solve_interval(decomp.head)
        mid_set, mid_val = solve_interval(
            decomp.middle.interval(0) if decomp.middle else None
        )
        tail_set, tail_val = solve_interval(decomp.tail)
        count = decomp.middle.count if decomp.middle else 0
        value = head_val + count * mid_val + tail_val
        if best is None or value > best[0]:
            best = (value, i, decomp, head_set, mid_set, tail_set)
    assert best is not None
    value, i, decomp, head_set, mid_set, tail_set = best
    payload = FpnMisPayload(
        decomposition=decomp,
        head_set=head_set,
        middle_set=mid_set,
        tail_set=tail_set,
    )
    return ApproxSolution(
        problem="mis",
        source_kind="fpn",
        spec=spec,
        l=l,
        offset=i,
        rho=solver.rho,
        guarantee=guarantee,
        total_value=value,
        mode="fpn-delete",
        payload=payload,
        stats={"base": solver.name, "k": k, "slabs": decomp.slab_count},
    )


def fpn_vc(
    spec: FPNSpec,
    l: int | None = None,
    epsilon: float | None = None,
    k: int | None = None,
    base: str = "exact",
    exact_budget: int = DEFAULT_EXACT_BUDGET,
    piece_budget: int = DEFAULT_PIECE_BUDGET,
    expand_budget: int = DEFAULT_EXPAND_BUDGET,
) -> ApproxSolution:
    """Vertex cover on a periodic specification by overlapping position
    pieces: neighbouring pieces share one boundary block, every edge lies
    in some piece, and the union of exact piece covers is counted
    exactly via inclusion–exclusion on the shared blocks."""
    l = _resolve_l(l, epsilon, "minimize-squared")
    solver = get_solver(base, "vc", l)
    guarantee = Fraction((l + 1) * (l + 1), l * l) * solver.rho
    k = _resolve_k(k, max(1, fpn_narrowness(spec)))
    if spec.m // k < l:
        return _degenerate_fpn(
            spec, "vc", solver, l, guarantee, exact_budget, expand_budget
        )

    def solve_interval(iv: Interval):
        g = fpn_interval_graph(spec, iv.lo, iv.hi, piece_budget)
        out = _solve_piece(solver, g, exact_budget)
        return frozenset(out.payload)

    best = None
    for i in range(l):
        decomp = fpn_overlap_slabs(spec.m, i, l, k)
        head_cover: frozenset[str] = frozenset()
        mid_cover: frozenset[str] = frozenset()
        if decomp.head:
            head_cover = solve_interval(decomp.head)
        mid = decomp.middle
        count = mid.count if mid else 0
        if count:
            mid_cover = solve_interval(mid.interval(0))
        late_covers = tuple(solve_interval(iv) for iv in decomp.late)

        # Union size: sum of cover sizes minus double-counted choices on
        # each shared boundary block between consecutive pieces (triple
        # overlaps are impossible: a position lies in at most 2 pieces).
        total = len(head_cover) + count * len(mid_cover) + sum(
            len(c) for c in late_covers
        )
        overlap = 0

        def band_overlap(c_left, iv_left, c_right, iv_right) -> int:
            band_lo, band_hi = iv_right.lo, min(iv_left.hi, iv_right.lo + k - 1)
            a = _restrict_positions(c_left, band_lo, band_hi)
            b = _restrict_positions(c_right, band_lo, band_hi)
            return len(a & b)

        # interior middle/middle boundaries, all identical by shift
        if count >= 2:
            overlap += (count - 1) * band_overlap(
                mid_cover,
                mid.interval(0),
                _shift_names(mid_cover, mid.stride),
                mid.interval(1),
            )
        if count >= 1:
            overlap += band_overlap(
                head_cover, decomp.head, mid_cover, mid.interval(0)
            )
            if decomp.late:
                overlap += band_overlap(
                    _shift_names(mid_cover, (count - 1) * mid.stride),
                    mid.interval(count - 1),
                    late_covers[0],
                    decomp.late[0],
                )
        elif decomp.late:
            overlap += band_overlap(
                head_cover, decomp.head, late_covers[0], decomp.late[0]
            )
        value = total - overlap
        if best is None or value < best[0]:
            best = (value, i, decomp, head_cover, mid_cover, late_covers)
    assert best is not None
    value, i, decomp, head_cover, mid_cover, late_covers = best
    payload = FpnVcPayload(
        decomposition=decomp,
        head_cover=head_cover,
        middle_cover=mid_cover,
        late_covers=late_covers,
    )
    return ApproxSolution(
        problem="vc",
        source_kind="fpn",
        spec=spec,
        l=l,
        offset=i,
        rho=solver.rho,
        guarantee=guarantee,
        total_value=value,
        mode="fpn-overlap",
        payload=payload,
        stats={"base": solver.name, "k": k, "pieces": decomp.piece_count()},
    )


def _cut_boundary_gain(
    spec: FPNSpec,
    left_side: frozenset[str],
    right_side: frozenset[str],
    boundary: int,
    k: int,
) -> tuple[int, int]:
    """Cut count / flip decision for the edges crossing ``boundary``
    (from positions < boundary to positions >= boundary)."""
    cut = 0
    total = 0
    left = {a for a in left_side}
    right = {a for a in right_side}
    for p in range(max(0, boundary - k), boundary):
        for u, v, t in spec.edges:
            q = p + t
            if q < boundary or q > spec.m:
                continue
            total += 1
            ps = fpn_vertex_name(u, p) in left
            cs = fpn_vertex_name(v, q) in right
            cut += ps != cs
    flip = 1 if total - cut > cut else 0
    return max(cut, total - cut), flip


def fpn_maxcut(
    spec: FPNSpec,
    l: int | None = None,
    epsilon: float | None = None,
    k: int | None = None,
    base: str = "exact",
    exact_budget: int = DEFAULT_EXACT_BUDGET,
    piece_budget: int = DEFAULT_PIECE_BUDGET,
    expand_budget: int = DEFAULT_EXPAND_BUDGET,
) -> ApproxSolution:
    """Max cut on a periodic specification: position blocks tile into
    pieces of ``l+1`` blocks; each piece is solved exactly and whole
    pieces are flipped greedily left-to-right to recover at least half
    of the boundary-crossing edges (a flip is free — it never changes a
    piece's internal cut)."""
    l = _resolve_l(l, epsilon, "maximize-linear")
    solver = get_solver(base, "maxcut", l)
    guarantee = Fraction(l, l + 1) / solver.rho
    k = _resolve_k(k, max(1, fpn_narrowness(spec)))
    if spec.m // k < l:
        return _degenerate_fpn(
            spec, "maxcut", solver, l, guarantee, exact_budget, expand_budget
        )

    def solve_interval(lo: int, hi: int):
        g = fpn_interval_graph(spec, lo, hi, piece_budget)
        out = _solve_piece(solver, g, exact_budget)
        return frozenset(out.payload), out.value

    m = spec.m
    best = None
    for i in range(l + 1):
        stride = (l + 1) * k
        piece_lo = i * k
        # pieces P_q = [piece_lo + q*stride, ...]; last one may be clipped
        count = (m - piece_lo) // stride + 1
        last_lo = piece_lo + (count - 1) * stride
        clipped = last_lo + stride - 1 > m
        head_side: frozenset[str] = frozenset()
        head_val = 0
        if i >= 1:
            head_side, head_val = solve_interval(0, i * k - 1)
        rep_hi = min(m, piece_lo + stride - 1)
        rep_side, rep_val = solve_interval(piece_lo, rep_hi)
        clip_side: frozenset[str] = frozenset()
        clip_val = 0
        if clipped and count >= 2:
            clip_side, clip_val = solve_interval(last_lo, m)
        generic = count - 1 if clipped else count
        if count == 1 and clipped:
            generic, clip_side, clip_val = 0, rep_side, rep_val
            rep_side, rep_val = frozenset(), 0

        value = head_val + generic * rep_val + clip_val
        parity0 = 0
        gen_bit = 0
        clip_bit = 0
        first_side = rep_side if generic else clip_side
        if i >= 1:
            gain, parity0 = _cut_boundary_gain(
                spec, head_side, first_side, piece_lo, k
            )
            value += gain
        if generic >= 2:
            shifted = _shift_names(rep_side, stride)
            gain, gen_bit = _cut_boundary_gain(
                spec, rep_side, shifted, piece_lo + stride, k
            )
            value += (generic - 1) * gain
        if clipped and generic >= 1:
            last_gen = _shift_names(rep_side, (generic - 1) * stride)
            gain, clip_bit = _cut_boundary_gain(
                spec, last_gen, clip_side, last_lo, k
            )
            value += gain
        if best is None or value > best[0]:
            best = (
                value, i, head_side, rep_side, clip_side,
                piece_lo, stride, count, clipped, parity0, gen_bit, clip_bit,
            )
    assert best is not None
    (
        value, i, head_side, rep_side, clip_side,
        piece_lo, stride, count, clipped, parity0, gen_bit, clip_bit,
    ) = best
    payload = FpnCutPayload(
        k=k,
        head=Interval(0, i * k - 1) if i >= 1 else None,
        head_side=head_side,
        piece_lo=piece_lo,
        stride=stride,
        piece_count=count,
        clipped=clipped,
        rep_side=rep_side,
        clip_side=clip_side,
        parity0=parity0,
        gen_bit=gen_bit,
        clip_bit=clip_bit,
    )
    return ApproxSolution(
        problem="maxcut",
        source_kind="fpn",
        spec=spec,
        l=l,
        offset=i,
        rho=solver.rho,
        guarantee=guarantee,
        total_value=value,
        mode="fpn-tile",
        payload=payload,
        stats={"base": solver.name, "k": k, "pieces": count + (1 if i else 0)},
    )


# ---------------------------------------------------------------------------
# Periodic formula scheme
# ---------------------------------------------------------------------------


def fpn_maxsat(
    formula: FPNFormula,
    l: int | None = None,
    epsilon: float | None = None,
    exact_budget: int = DEFAULT_MAXSAT_VAR_BUDGET,
    piece_budget: int = DEFAULT_PIECE_BUDGET,
    expand_budget: int = DEFAULT_EXPAND_BUDGET,
) -> ApproxSolution:
    """Clause satisfaction on a periodic CNF: clause start positions are
    banded with block width = the formula's narrowness, which makes the
    kept runs variable-disjoint; each run is solved exactly and interior
    runs are weighted by their exact count."""
    l = _resolve_l(l, epsilon, "maxsat")
    rho = Fraction(1)
    guarantee = max(Fraction(0), Fraction(l - 1, l + 1)) / rho
    w = fpn_formula_narrowness(formula)
    k = max(1, w)
    if formula.m // k < l:
        return _degenerate_fpn_formula(
            formula, l, guarantee, exact_budget, expand_budget
        )

    def solve_interval(iv: Interval):
        piece = fpn_formula_interval(formula, iv.lo, iv.hi)
        if len(piece.variables) > piece_budget:
            raise SolverInapplicableError("piece exceeds the variable budget")
        res = exact_maxsat(piece, exact_budget)
        return res.assignment, res.satisfied

    best = None
    for i in range(l + 1):
        decomp = fpn_slabs(formula.m, i, l, k)
        head_assign: Mapping[str, bool] = {}
        head_val = 0
        if decomp.head:
            head_assign, head_val = solve_interval(decomp.head)
        explicit: list[tuple[Interval, Mapping[str, bool]]] = []
        explicit_val = 0
        mid_assign: Mapping[str, bool] = {}
        mid_val = 0
        generic = 0
        if decomp.middle:
            generic = decomp.middle.count
            # a middle run is complete iff the deleted band after it lies
            # fully within 0..m; only the last one can be incomplete
            last = decomp.middle.interval(generic - 1)
            if last.hi + k > formula.m:
                generic -= 1
                a, v = solve_interval(last)
                explicit.append((last, a))
                explicit_val += v
            if generic >= 1:
                mid_assign, mid_val = solve_interval(decomp.middle.interval(0))
        if decomp.tail:
            a, v = solve_interval(decomp.tail)
            explicit.append((decomp.tail, a))
            explicit_val += v
        value = head_val + generic * mid_val + explicit_val
        if best is None or value > best[0]:
            best = (value, i, decomp, generic, head_assign, mid_assign, tuple(explicit))
    assert best is not None
    value, i, decomp, generic, head_assign, mid_assign, explicit = best
    payload = FpnSatPayload(
        k=k,
        narrowness=w,
        decomposition=decomp,
        generic_count=generic,
        head_assignment=head_assign,
        middle_assignment=mid_assign,
        explicit=explicit,
    )
    return ApproxSolution(
        problem="maxsat",
        source_kind="fpncnf",
        spec=formula,
        l=l,
        offset=i,
        rho=rho,
        guarantee=guarantee,
        total_value=value,
        mode="fpn-clause",
        payload=payload,
        stats={"k": k, "narrowness": w, "slabs": decomp.slab_count},
    )
