"""Succinct solution access: query, stream, verify, re-emit.

An :class:`~sgat.approx_schemes.ApproxSolution` stores one witness per
piece class plus exact class counts, so the full solution — which can be
astronomically larger than the specification — is never materialized.
This module turns that representation into answers:

* :func:`solution_size` — the exact objective value (big integer).
* :func:`query` — membership / side / truth value of one address, in
  time proportional to the address length, not the expansion.
* :func:`iter_solution` / :func:`stream_solution` — lazily enumerate
  the solution (members, true-side vertices, or true variables) in
  deterministic order with memory bounded by the substitution depth.
* :func:`verify_solution` — materialize the expansion (budget-guarded)
  and recheck feasibility and the claimed value against it.
* :func:`emit_solution_lspec` — for hierarchical independent-set and
  vertex-cover solutions, build a hierarchical specification whose
  expansion is exactly the solution's vertex set, with structurally
  identical cells merged (hash-consing), so self-similar inputs yield
  mirror specifications of comparable size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .approx_schemes import (
    ApproxSolution,
    DirectPayload,
    FpnCutPayload,
    FpnMisPayload,
    FpnSatPayload,
    FpnVcPayload,
    HierCutPayload,
    HierMisPayload,
    HierSatPayload,
    HierVcPayload,
)
from .errors import BudgetExceededError
from .expansion import (
    DEFAULT_EXPAND_BUDGET,
    expand,
    expand_formula,
    expand_fpn,
    expand_fpn_formula,
    fpn_vertex_name,
    parse_fpn_vertex_name,
    resolve_address,
)
from .spec_core import ADDRESS_SEP, Cell, LSpec, Nonterminal

__all__ = [
    "solution_size",
    "query",
    "iter_solution",
    "stream_solution",
    "verify_solution",
    "emit_solution_lspec",
    "VerificationReport",
]


def solution_size(sol: ApproxSolution) -> int:
    """The exact objective value of the represented solution (set size
    for independent set / vertex cover, cut size, satisfied clauses)."""
    return sol.total_value


# ---------------------------------------------------------------------------
# Address helpers
# ---------------------------------------------------------------------------


def _split_address(addr: str) -> tuple[list[str], str]:
    parts = addr.split(ADDRESS_SEP)
    return parts[:-1], parts[-1]


def _call_target(component: str) -> str:
    """Callee cell name of a formula path component ``F2.1``."""
    name, _, ordinal = component.rpartition(".")
    if not name or not ordinal.isdigit():
        raise ValueError(f"bad formula path component {component!r}")
    return name


def _lspec_types_along(spec: LSpec, path: list[str]) -> list[str]:
    """Cell names at depths 0..len(path) along a nonterminal path."""
    out = [spec.top.name]
    cell = spec.top
    for comp in path:
        nt = cell.nonterminal(comp)  # raises KeyError on a bad component
        cell = spec.cell(nt.type_name)
        out.append(cell.name)
    return out


def _formula_types_along(formula, path: list[str]) -> list[str]:
    out = [formula.top.name]
    cell = formula.top
    for comp in path:
        callee = _call_target(comp)
        if not any(call.callee == callee for call in cell.calls):
            raise ValueError(
                f"cell {cell.name!r} has no call of {callee!r}"
            )
        cell = formula.fcell(callee)
        out.append(cell.name)
    return out


def _check_lspec_address(sol: ApproxSolution, addr: str) -> tuple[list[str], int]:
    res = resolve_address(sol.spec, addr)
    if not res.valid:
        raise ValueError(f"invalid address {addr!r}: {res.reason}")
    path, _ = _split_address(addr)
    return path, res.depth


def _check_fpn_address(sol: ApproxSolution, addr: str) -> tuple[str, int]:
    v, p = parse_fpn_vertex_name(addr)
    if v not in sol.spec.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    if not 0 <= p <= sol.spec.m:
        raise ValueError(f"position {p} outside 0..{sol.spec.m}")
    return v, p


# ---------------------------------------------------------------------------
# query
# ---------------------------------------------------------------------------


def query(sol: ApproxSolution, address: str) -> bool:
    """Answer one membership question without expanding anything.

    For independent set / vertex cover: is the vertex in the set?  For
    max cut: is the vertex on the "true" side?  For clause satisfaction:
    the variable's assigned truth value.  Runs in time proportional to
    the address length.
    """
    mode = sol.mode
    if mode == "degenerate":
        return _query_degenerate(sol, address)
    if mode == "hier-delete":
        return _query_hier_mis(sol, address)
    if mode == "hier-overlap":
        return _query_hier_vc(sol, address)
    if mode == "hier-tile":
        return _query_hier_cut(sol, address)
    if mode == "hier-clause":
        return _query_hier_sat(sol, address)
    if mode == "fpn-delete":
        return _query_fpn_mis(sol, address)
    if mode == "fpn-overlap":
        return _query_fpn_vc(sol, address)
    if mode == "fpn-tile":
        return _query_fpn_cut(sol, address)
    if mode == "fpn-clause":
        return _query_fpn_sat(sol, address)
    raise ValueError(f"unknown solution mode {mode!r}")


def _query_degenerate(sol: ApproxSolution, address: str) -> bool:
    if sol.source_kind == "lspec":
        _check_lspec_address(sol, address)
    elif sol.source_kind == "fpn":
        _check_fpn_address(sol, address)
    witness = sol.payload.witness
    if sol.problem == "maxsat":
        return bool(witness.get(address, False))
    return address in witness


def _query_hier_mis(sol: ApproxSolution, address: str) -> bool:
    path, depth = _check_lspec_address(sol, address)
    pl: HierMisPayload = sol.payload
    k, l, t = pl.k, sol.l, sol.offset
    period = k * (l + 1)
    first_root = t * k + k
    if depth < t * k:
        return address in pl.stub_set
    j = (depth - first_root) % period
    if j >= k * l:
        return False  # deleted level band
    root_depth = depth - j
    root_type = _lspec_types_along(sol.spec, path[:root_depth])[-1]
    rel = ADDRESS_SEP.join(path[root_depth:] + [address.split(ADDRESS_SEP)[-1]])
    return rel in pl.piece_sets[root_type]


def _query_hier_vc(sol: ApproxSolution, address: str) -> bool:
    path, depth = _check_lspec_address(sol, address)
    pl: HierVcPayload = sol.payload
    k, l = pl.k, sol.l
    period = k * l
    boundary = pl.boundary_depth
    vertex = address.split(ADDRESS_SEP)[-1]
    if depth <= boundary + k - 1 and address in pl.stub_cover:
        return True
    if depth < boundary:
        return False
    j = (depth - boundary) % period
    for root_depth in (depth - j, depth - j - period):
        if root_depth < boundary:
            continue
        if depth - root_depth > period + k - 1:
            continue
        root_type = _lspec_types_along(sol.spec, path[:root_depth])[-1]
        rel = ADDRESS_SEP.join(path[root_depth:] + [vertex])
        if rel in pl.piece_covers[root_type]:
            return True
    return False


def _query_hier_cut(sol: ApproxSolution, address: str) -> bool:
    path, depth = _check_lspec_address(sol, address)
    pl: HierCutPayload = sol.payload
    k, l, t = pl.k, sol.l, sol.offset
    period = k * (l + 1)
    vertex = address.split(ADDRESS_SEP)[-1]
    if depth < t * k:
        return address in pl.stub_side
    j = (depth - t * k) % period
    root_depth = depth - j
    types = _lspec_types_along(sol.spec, path[:root_depth])
    root_type = types[-1]
    rel = ADDRESS_SEP.join(path[root_depth:] + [vertex])
    side = rel in pl.piece_sides[root_type]
    # accumulate the flip parity along this root's chain of piece slots
    parity = 0
    for r in range(t * k, root_depth + 1, period):
        if r == t * k:
            prefix = ADDRESS_SEP.join(path[:r])
            if prefix:
                prefix += ADDRESS_SEP
            parity ^= pl.stub_slot_flips.get(prefix, 0)
        else:
            parent_type = types[r - period]
            slot = ADDRESS_SEP.join(path[r - period : r]) + ADDRESS_SEP
            parity ^= pl.slot_flips[parent_type].get(slot, 0)
    return side ^ bool(parity)


def _query_hier_sat(sol: ApproxSolution, address: str) -> bool:
    formula = sol.spec
    path, var = _split_address(address)
    types = _formula_types_along(formula, path)
    cell = formula.fcell(types[-1])
    if var not in cell.local_vars:
        raise ValueError(f"no local variable {var!r} in cell {cell.name!r}")
    pl: HierSatPayload = sol.payload
    l, j = sol.l, sol.offset
    depth = len(path)
    r = (depth - (j + 1)) % (l + 1)
    if depth - r < 0:
        return bool(pl.head_assignment.get(address, False))
    if r == l:
        return False  # unowned variable level
    root_depth = depth - r
    root_type = types[root_depth]
    rel = ADDRESS_SEP.join(path[root_depth:] + [var])
    return bool(pl.kernel_assignments[root_type].get(rel, False))


def _query_fpn_mis(sol: ApproxSolution, address: str) -> bool:
    v, p = _check_fpn_address(sol, address)
    pl: FpnMisPayload = sol.payload
    d = pl.decomposition
    iv = d.interval_for_position(p)
    if iv is None:
        return False
    if d.head and iv == d.head:
        return address in pl.head_set
    if d.tail and iv == d.tail:
        return address in pl.tail_set
    run = (iv.lo - d.middle.first_lo) // d.middle.stride
    return fpn_vertex_name(v, p - run * d.middle.stride) in pl.middle_set


def _query_fpn_vc(sol: ApproxSolution, address: str) -> bool:
    v, p = _check_fpn_address(sol, address)
    pl: FpnVcPayload = sol.payload
    d = pl.decomposition
    for iv in d.pieces_for_position(p):
        if d.head and iv == d.head:
            if address in pl.head_cover:
                return True
        elif iv in d.late:
            if address in pl.late_covers[d.late.index(iv)]:
                return True
        else:
            run = (iv.lo - d.middle.first_lo) // d.middle.stride
            if fpn_vertex_name(v, p - run * d.middle.stride) in pl.middle_cover:
                return True
    return False


def _fpn_cut_parity(pl: FpnCutPayload, q: int) -> int:
    """Flip parity of tiled piece ``q`` in O(1)."""
    if pl.clipped and q == pl.piece_count - 1:
        generic_boundaries = q - 1
        clip_term = pl.clip_bit
    else:
        generic_boundaries = q
        clip_term = 0
    return (pl.parity0 + pl.gen_bit * generic_boundaries + clip_term) & 1


def _query_fpn_cut(sol: ApproxSolution, address: str) -> bool:
    v, p = _check_fpn_address(sol, address)
    pl: FpnCutPayload = sol.payload
    if pl.head and p in pl.head:
        return address in pl.head_side
    q = (p - pl.piece_lo) // pl.stride
    if pl.clipped and q == pl.piece_count - 1:
        base = address in pl.clip_side
    else:
        base = fpn_vertex_name(v, p - q * pl.stride) in pl.rep_side
    return base ^ bool(_fpn_cut_parity(pl, q))


def _fpn_sat_owner_interval(pl: FpnSatPayload, p: int):
    """The kept clause run whose assignment owns variable position ``p``
    (a deleted-band position overflows to the preceding run)."""
    d = pl.decomposition
    if d.is_deleted(p):
        band_lo = (p // d.k) * d.k
        if band_lo == 0:
            return None
        return d.interval_for_position(band_lo - 1)
    return d.interval_for_position(p)


def _query_fpn_sat(sol: ApproxSolution, address: str) -> bool:
    v, p = parse_fpn_vertex_name(address)
    if v not in sol.spec.variables:
        raise ValueError(f"unknown variable {v!r}")
    if not 0 <= p <= sol.spec.m:
        raise ValueError(f"position {p} outside 0..{sol.spec.m}")
    pl: FpnSatPayload = sol.payload
    d = pl.decomposition
    iv = _fpn_sat_owner_interval(pl, p)
    if iv is None:
        return False
    if d.head and iv == d.head:
        return bool(pl.head_assignment.get(address, False))
    for entry_iv, assignment in pl.explicit:
        if iv == entry_iv:
            return bool(assignment.get(address, False))
    run = (iv.lo - d.middle.first_lo) // d.middle.stride
    shifted = fpn_vertex_name(v, p - run * d.middle.stride)
    return bool(pl.middle_assignment.get(shifted, False))


# ---------------------------------------------------------------------------
# Streaming: one walker per scheme yielding (prefix, picked names) lazily
# ---------------------------------------------------------------------------


def _walk_hier_graph(
    sol: ApproxSolution,
) -> Iterator[tuple[str, list[str]]]:
    """DFS over the instance tree yielding each instance's address prefix
    and its picked explicit vertices; memory is bounded by the
    substitution depth times the specification size."""
    spec: LSpec = sol.spec
    mode = sol.mode
    pl = sol.payload
    k, l, t = pl.k, sol.l, sol.offset

    if mode == "hier-delete":
        period, first_root = k * (l + 1), t * k + k

        def picks(cell: Cell, prefix: str, depth: int, state) -> list[str]:
            if depth < t * k:
                return [v for v in cell.explicit if prefix + v in pl.stub_set]
            root_type, rel = state
            if root_type is None:
                return []
            return [
                v for v in cell.explicit if rel + v in pl.piece_sets[root_type]
            ]

        def child_state(state, nt: Nonterminal, ndepth: int):
            if ndepth < first_root:
                return (None, "")
            j = (ndepth - first_root) % period
            if j == 0:
                return (nt.type_name, "")
            if j >= k * l:
                return (None, "")
            root_type, rel = state
            return (root_type, rel + nt.name + ADDRESS_SEP)

        init = (None, "")
    elif mode == "hier-overlap":
        period = k * l
        boundary = pl.boundary_depth

        def picks(cell: Cell, prefix: str, depth: int, state) -> list[str]:
            cur, prev = state
            out = []
            for v in cell.explicit:
                if depth <= boundary + k - 1 and prefix + v in pl.stub_cover:
                    out.append(v)
                    continue
                if cur and cur[1] + v in pl.piece_covers[cur[0]]:
                    out.append(v)
                    continue
                if prev and prev[1] + v in pl.piece_covers[prev[0]]:
                    out.append(v)
            return out

        def child_state(state, nt: Nonterminal, ndepth: int):
            cur, prev = state
            if ndepth < boundary:
                return (None, None)
            if (ndepth - boundary) % period == 0:
                new_prev = None
                if cur:
                    new_prev = (cur[0], cur[1] + nt.name + ADDRESS_SEP)
                return ((nt.type_name, ""), new_prev)
            ncur = (cur[0], cur[1] + nt.name + ADDRESS_SEP) if cur else None
            j = (ndepth - boundary) % period
            nprev = (
                (prev[0], prev[1] + nt.name + ADDRESS_SEP)
                if prev and j <= k - 1
                else None
            )
            return (ncur, nprev)

        init = (None, None)
    elif mode == "hier-tile":
        period = k * (l + 1)

        def picks(cell: Cell, prefix: str, depth: int, state) -> list[str]:
            if depth < t * k:
                return [v for v in cell.explicit if prefix + v in pl.stub_side]
            root_type, rel, parity = state
            return [
                v
                for v in cell.explicit
                if (rel + v in pl.piece_sides[root_type]) ^ parity
            ]

        def child_state(state, nt: Nonterminal, ndepth: int):
            if ndepth < t * k or state is None:
                return None  # stub zone (rec patches stub-to-root hops)
            j = (ndepth - t * k) % period
            root_type, rel, parity = state
            if j == 0:
                slot = rel + nt.name + ADDRESS_SEP
                flip = pl.slot_flips[root_type].get(slot, 0)
                return (nt.type_name, "", parity ^ bool(flip))
            return (root_type, rel + nt.name + ADDRESS_SEP, parity)

        if t == 0:
            init = (spec.top.name, "", bool(pl.stub_slot_flips.get("", 0)))
        else:
            init = None
    else:  # pragma: no cover - callers dispatch on mode
        raise ValueError(f"not a hierarchical graph mode: {mode!r}")

    def rec(cell_name: str, prefix: str, depth: int, state):
        cell = spec.cell(cell_name)
        yield prefix, picks(cell, prefix, depth, state)
        for nt in cell.nonterminals:
            nstate = child_state(state, nt, depth + 1)
            if mode == "hier-tile" and nstate is None and depth + 1 >= t * k:
                # stub slots feed first roots via stub_slot_flips
                flip = pl.stub_slot_flips.get(
                    prefix + nt.name + ADDRESS_SEP, 0
                )
                nstate = (nt.type_name, "", bool(flip))
            yield from rec(
                nt.type_name, prefix + nt.name + ADDRESS_SEP, depth + 1, nstate
            )

    yield from rec(spec.top.name, "", 0, init)


def _walk_hier_formula(sol: ApproxSolution) -> Iterator[tuple[str, list[str]]]:
    """DFS over formula call instances yielding true-assigned locals."""
    formula = sol.spec
    pl: HierSatPayload = sol.payload
    l, j = sol.l, sol.offset

    def assigned(state, prefix: str, var: str) -> bool:
        if state == "head":
            return bool(pl.head_assignment.get(prefix + var, False))
        if state is None:
            return False  # unowned variable level
        root_type, rel = state
        return bool(pl.kernel_assignments[root_type].get(rel + var, False))

    def state_for(ndepth: int, cell_name: str, parent_state, comp: str):
        r = (ndepth - (j + 1)) % (l + 1)
        if ndepth - r < 0:
            return "head"
        if r == l:
            return None
        if r == 0:
            return (cell_name, "")
        # same kernel as the parent, one level deeper
        root_type, rel = parent_state
        return (root_type, rel + comp + ADDRESS_SEP)

    def rec(cell_name: str, prefix: str, depth: int, state):
        cell = formula.fcell(cell_name)
        yield prefix, [
            z for z in cell.local_vars if assigned(state, prefix, z)
        ]
        ordinals: dict[str, int] = {}
        for call in cell.calls:
            ordinals[call.callee] = ordinals.get(call.callee, 0) + 1
            comp = f"{call.callee}.{ordinals[call.callee]}"
            nstate = state_for(depth + 1, call.callee, state, comp)
            yield from rec(
                call.callee, prefix + comp + ADDRESS_SEP, depth + 1, nstate
            )

    yield from rec(
        formula.top.name, "", 0, state_for(0, formula.top.name, None, "")
    )


def _iter_sorted_names(names) -> list[str]:
    return sorted(names, key=lambda a: (parse_fpn_vertex_name(a)[1], a))


def _iter_fpn(sol: ApproxSolution) -> Iterator[str]:
    pl = sol.payload
    if sol.mode == "fpn-delete":
        yield from _iter_sorted_names(pl.head_set)
        mid = pl.decomposition.middle
        if mid:
            base = [(v, p) for v, p in map(parse_fpn_vertex_name, pl.middle_set)]
            base.sort(key=lambda vp: (vp[1], vp[0]))
            for q in range(mid.count):
                for v, p in base:
                    yield fpn_vertex_name(v, p + q * mid.stride)
        yield from _iter_sorted_names(pl.tail_set)
        return
    if sol.mode == "fpn-overlap":
        d = pl.decomposition
        mid = d.middle
        count = mid.count if mid else 0
        prev_cover: frozenset[str] = frozenset()
        prev_hi = -1

        def emit(cover, iv):
            nonlocal prev_cover, prev_hi
            for a in _iter_sorted_names(cover):
                p = parse_fpn_vertex_name(a)[1]
                if p > prev_hi or a not in prev_cover:
                    yield a
            prev_cover = frozenset(cover)
            prev_hi = iv.hi

        if d.head:
            yield from emit(pl.head_cover, d.head)
        mid_sorted = None
        for q in range(count):
            shifted = {
                fpn_vertex_name(v, p + q * mid.stride)
                for v, p in map(parse_fpn_vertex_name, pl.middle_cover)
            }
            yield from emit(shifted, mid.interval(q))
        for iv, cover in zip(d.late, pl.late_covers):
            yield from emit(cover, iv)
        return
    if sol.mode == "fpn-tile":
        spec = sol.spec
        if pl.head:
            yield from _iter_sorted_names(pl.head_side)
        for q in range(pl.piece_count):
            lo = pl.piece_lo + q * pl.stride
            hi = min(spec.m, lo + pl.stride - 1)
            parity = _fpn_cut_parity(pl, q)
            clipped_piece = pl.clipped and q == pl.piece_count - 1
            for p in range(lo, hi + 1):
                for v in sorted(spec.vertices):
                    name = fpn_vertex_name(v, p)
                    if clipped_piece:
                        base = name in pl.clip_side
                    else:
                        base = fpn_vertex_name(v, p - q * pl.stride) in pl.rep_side
                    if base ^ bool(parity):
                        yield name
        return
    if sol.mode == "fpn-clause":
        d = pl.decomposition
        if d.head:
            yield from _iter_sorted_names(
                a for a, val in pl.head_assignment.items() if val
            )
        mid = d.middle
        if mid:
            base = [
                parse_fpn_vertex_name(a)
                for a, val in pl.middle_assignment.items()
                if val
            ]
            base.sort(key=lambda vp: (vp[1], vp[0]))
            for q in range(pl.generic_count):
                for v, p in base:
                    yield fpn_vertex_name(v, p + q * mid.stride)
        for _, assignment in pl.explicit:
            yield from _iter_sorted_names(
                a for a, val in assignment.items() if val
            )
        return
    raise ValueError(f"not a periodic mode: {sol.mode!r}")


def iter_solution(sol: ApproxSolution) -> Iterator[str]:
    """Lazily yield the solution's addresses in deterministic order:
    set members (independent set / vertex cover), true-side vertices
    (max cut), or true-assigned variables (clause satisfaction)."""
    if sol.mode == "degenerate":
        witness = sol.payload.witness
        if sol.problem == "maxsat":
            yield from (a for a in witness if witness[a])
        else:
            yield from sorted(witness)
        return
    if sol.mode in ("hier-delete", "hier-overlap", "hier-tile"):
        for prefix, picked in _walk_hier_graph(sol):
            for v in picked:
                yield prefix + v
        return
    if sol.mode == "hier-clause":
        for prefix, picked in _walk_hier_formula(sol):
            for v in picked:
                yield prefix + v
        return
    yield from _iter_fpn(sol)


def stream_solution(
    sol: ApproxSolution,
    sink: Callable[[str], None],
    cap: int | None = None,
) -> int:
    """Feed solution addresses to ``sink`` one at a time; stop after
    ``cap`` addresses if given. Returns the number streamed. Memory stays
    bounded by the substitution depth even when the solution itself is
    astronomically large."""
    n = 0
    for addr in iter_solution(sol):
        if cap is not None and n >= cap:
            break
        sink(addr)
        n += 1
    return n


# ---------------------------------------------------------------------------
# Full-expansion verification (for instances small enough to materialize)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked: str
    details: str = ""


def verify_solution(
    sol: ApproxSolution, budget: int = DEFAULT_EXPAND_BUDGET
) -> VerificationReport:
    """Materialize the full expansion (budget-guarded) and check the
    solution against it: feasibility (independence / coverage) and the
    claimed objective value (exact for sets and cuts, a lower bound for
    clause satisfaction, whose uncounted deleted clauses may add)."""
    if sol.problem == "maxsat":
        flat = (
            expand_formula(sol.spec, budget)
            if sol.source_kind == "lformula"
            else expand_fpn_formula(sol.spec, budget)
            if sol.source_kind == "fpncnf"
            else sol.spec
        )
        true_vars = set(iter_solution(sol))
        relations = flat.relation_map()
        satisfied = 0
        for rel, args in flat.clauses:
            bits = tuple(1 if a in true_vars else 0 for a in args)
            satisfied += bits in relations[rel].satisfying_tuples
        if satisfied < sol.total_value:
            return VerificationReport(
                False,
                "maxsat recount",
                f"claimed {sol.total_value}, recount {satisfied}",
            )
        return VerificationReport(
            True, "maxsat recount", f"recount {satisfied} >= {sol.total_value}"
        )

    graph = (
        expand(sol.spec, budget)
        if sol.source_kind == "lspec"
        else expand_fpn(sol.spec, budget)
    )
    members = set(iter_solution(sol))
    unknown = members - graph.vertex_set
    if unknown:
        return VerificationReport(
            False, "addresses", f"{len(unknown)} addresses not in the expansion"
        )
    if sol.problem == "mis":
        if len(members) != sol.total_value:
            return VerificationReport(
                False, "mis size", f"{len(members)} != {sol.total_value}"
            )
        bad = sum(1 for a, b in graph.edges if a in members and b in members)
        if bad:
            return VerificationReport(
                False, "mis independence", f"{bad} internal edges"
            )
        return VerificationReport(True, "mis", f"independent, size {len(members)}")
    if sol.problem == "vc":
        if len(members) != sol.total_value:
            return VerificationReport(
                False, "vc size", f"{len(members)} != {sol.total_value}"
            )
        uncovered = sum(
            1 for a, b in graph.edges if a not in members and b not in members
        )
        if uncovered:
            return VerificationReport(
                False, "vc coverage", f"{uncovered} uncovered edges"
            )
        return VerificationReport(True, "vc", f"covers all, size {len(members)}")
    if sol.problem == "maxcut":
        cut = sum(1 for a, b in graph.edges if (a in members) != (b in members))
        if cut != sol.total_value:
            return VerificationReport(
                False, "cut recount", f"claimed {sol.total_value}, recount {cut}"
            )
        return VerificationReport(True, "cut recount", f"cut {cut}")
    raise ValueError(f"unknown problem {sol.problem!r}")


# ---------------------------------------------------------------------------
# Solution re-emission as a hierarchical specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Node:
    """One mirror-cell candidate before hash-consing."""

    picks: tuple[str, ...]
    children: tuple[tuple[str, int], ...]  # (nonterminal name, node id)


class _MirrorBuilder:
    """Builds the solution's instance tree as mirror cells keyed by their
    piece context, then merges structurally identical cells bottom-up."""

    def __init__(self, spec: LSpec, budget: int):
        self.spec = spec
        self.budget = budget
        self.nodes: list[_Node] = []
        self.node_cell: list[str] = []  # source cell name per node
        self.cons: dict[_Node, int] = {}
        self.memo: dict[object, int | None] = {}
        self.count = 0

    def build(
        self,
        cell_name: str,
        key: object,
        picks_fn,
        children_fn,
    ) -> int | None:
        """Returns a node id, or None when the whole subtree picks
        nothing (such subtrees are omitted from the mirror)."""
        if key is not None and key in self.memo:
            return self.memo[key]
        self.count += 1
        if self.count > self.budget:
            raise BudgetExceededError("mirror construction", self.count, self.budget)
        cell = self.spec.cell(cell_name)
        picks = tuple(picks_fn(cell))
        children: list[tuple[str, int]] = []
        for nt, child_cell, child_key, child_picks, child_children in children_fn(cell):
            cid = self.build(child_cell, child_key, child_picks, child_children)
            if cid is not None:
                children.append((nt, cid))
        if not picks and not children:
            result = None
        else:
            node = _Node(picks, tuple(children))
            existing = self.cons.get(node)
            if existing is None:
                self.nodes.append(node)
                self.node_cell.append(cell_name)
                existing = len(self.nodes) - 1
                self.cons[node] = existing
            result = existing
        if key is not None:
            self.memo[key] = result
        return result

    def assemble(self, root_id: int | None, spec_name: str) -> LSpec:
        if root_id is None:
            top = Cell(name="H_empty", pin_count=0, explicit=(), edges=(),
                       nonterminals=())
            return LSpec(name=spec_name, cells=(top,))
        # the top cell may not be referenced by any other cell; give the
        # root a private copy if it was consed with an interior node
        root_node = self.nodes[root_id]
        referenced = {
            cid for node in self.nodes for _, cid in node.children
        }
        order: list[int] = []
        seen: set[int] = set()

        def visit(nid: int) -> None:
            if nid in seen:
                return
            seen.add(nid)
            for _, cid in self.nodes[nid].children:
                visit(cid)
            order.append(nid)

        visit(root_id)
        names: dict[int, str] = {}
        used: set[str] = set()
        for nid in order:
            base = "H_" + self.node_cell[nid]
            name = base
            suffix = 2
            while name in used:
                name = f"{base}_{suffix}"
                suffix += 1
            used.add(name)
            names[nid] = name

        def make_cell(nid: int, name: str) -> Cell:
            node = self.nodes[nid]
            return Cell(
                name=name,
                pin_count=0,
                explicit=node.picks,
                edges=(),
                nonterminals=tuple(
                    Nonterminal(name=nt, type_name=names[cid], binds=())
                    for nt, cid in node.children
                ),
            )

        cells = [make_cell(nid, names[nid]) for nid in order]
        if root_id in referenced:
            top_name = "H_top"
            suffix = 2
            while top_name in used:
                top_name = f"H_top_{suffix}"
                suffix += 1
            cells.append(make_cell(root_id, top_name))
        return LSpec(name=spec_name, cells=tuple(cells))


def emit_solution_lspec(
    sol: ApproxSolution, budget: int = DEFAULT_EXPAND_BUDGET
) -> LSpec:
    """A hierarchical specification whose expansion's vertex set is
    exactly this solution's member set (no edges, no pins).

    Applies to independent-set and vertex-cover solutions of
    hierarchical specifications; addresses in the emitted expansion
    equal the source addresses. Structurally identical mirror cells are
    merged, so self-similar sources yield small mirrors.
    """
    if sol.source_kind != "lspec" or sol.problem not in ("mis", "vc"):
        raise ValueError(
            "re-emission applies to independent-set and vertex-cover "
            "solutions of hierarchical graph specifications"
        )
    spec: LSpec = sol.spec
    builder = _MirrorBuilder(spec, budget)
    name = f"{spec.name}_solution"

    if sol.mode == "degenerate":
        witness: frozenset[str] = sol.payload.witness

        def picks_fn_for(prefix: str):
            return lambda cell: [
                v for v in cell.explicit if prefix + v in witness
            ]

        def children_fn_for(prefix: str):
            def children(cell: Cell):
                for nt in cell.nonterminals:
                    sub = prefix + nt.name + ADDRESS_SEP
                    yield (
                        nt.name,
                        nt.type_name,
                        None,  # no sharing: membership is path-specific
                        picks_fn_for(sub),
                        children_fn_for(sub),
                    )
            return children

        root = builder.build(
            spec.top.name, None, picks_fn_for(""), children_fn_for("")
        )
        return builder.assemble(root, name)

    if sol.mode == "hier-delete":
        pl: HierMisPayload = sol.payload
        k, l, t = pl.k, sol.l, sol.offset
        period, first_root = k * (l + 1), t * k + k

        def piece_fns(root_type: str, rel: tuple[str, ...]):
            rel_prefix = (
                ADDRESS_SEP.join(rel) + ADDRESS_SEP if rel else ""
            )

            def picks(cell: Cell):
                return [
                    v
                    for v in cell.explicit
                    if rel_prefix + v in pl.piece_sets[root_type]
                ]

            def children(cell: Cell):
                for nt in cell.nonterminals:
                    if len(rel) + 1 < period:
                        nrel = rel + (nt.name,)
                        key = ("piece", root_type, nrel)
                        p, c = piece_fns(root_type, nrel)
                    else:
                        key = ("piece", nt.type_name, ())
                        p, c = piece_fns(nt.type_name, ())
                    yield nt.name, nt.type_name, key, p, c

            return picks, children

        def stub_fns(path: tuple[str, ...]):
            prefix = ADDRESS_SEP.join(path) + ADDRESS_SEP if path else ""
            depth = len(path)

            def picks(cell: Cell):
                if depth >= t * k:
                    return []
                return [v for v in cell.explicit if prefix + v in pl.stub_set]

            def children(cell: Cell):
                for nt in cell.nonterminals:
                    if depth + 1 < first_root:
                        npath = path + (nt.name,)
                        p, c = stub_fns(npath)
                        yield nt.name, nt.type_name, ("stub", npath), p, c
                    else:
                        p, c = piece_fns(nt.type_name, ())
                        yield (
                            nt.name,
                            nt.type_name,
                            ("piece", nt.type_name, ()),
                            p,
                            c,
                        )

            return picks, children

        p0, c0 = stub_fns(())
        root = builder.build(spec.top.name, ("stub", ()), p0, c0)
        return builder.assemble(root, name)

    if sol.mode == "hier-overlap":
        plv: HierVcPayload = sol.payload
        k, l = plv.k, sol.l
        period = k * l
        boundary = plv.boundary_depth

        band_entries: dict[str, list[tuple[tuple[str, ...], str]]] = {}
        for cell_name, cover in plv.piece_covers.items():
            entries = []
            for a in cover:
                comps, v = _split_address(a)
                if period <= len(comps) <= period + k - 1:
                    entries.append((tuple(comps), v))
            band_entries[cell_name] = entries
        stub_band = []
        for a in plv.stub_cover:
            comps, v = _split_address(a)
            if boundary <= len(comps) <= boundary + k - 1:
                stub_band.append((tuple(comps), v))

        def pending_under(entries, slot: tuple[str, ...]):
            n = len(slot)
            return frozenset(
                (comps[n:], v) for comps, v in entries if comps[:n] == slot
            )

        def piece_fns(root_type: str, rel: tuple[str, ...], pending):
            rel_prefix = ADDRESS_SEP.join(rel) + ADDRESS_SEP if rel else ""

            def picks(cell: Cell):
                out = []
                for v in cell.explicit:
                    if rel_prefix + v in plv.piece_covers[root_type]:
                        out.append(v)
                    elif ((), v) in pending:
                        out.append(v)
                return out

            def children(cell: Cell):
                for nt in cell.nonterminals:
                    if len(rel) + 1 < period:
                        nrel = rel + (nt.name,)
                        npending = frozenset(
                            (s[1:], v)
                            for s, v in pending
                            if s and s[0] == nt.name
                        )
                        key = ("piece", root_type, nrel, npending)
                        p, c = piece_fns(root_type, nrel, npending)
                        yield nt.name, nt.type_name, key, p, c
                    else:
                        npending = pending_under(
                            band_entries[root_type], rel + (nt.name,)
                        )
                        key = ("piece", nt.type_name, (), npending)
                        p, c = piece_fns(nt.type_name, (), npending)
                        yield nt.name, nt.type_name, key, p, c

            return picks, children

        def stub_fns(path: tuple[str, ...]):
            prefix = ADDRESS_SEP.join(path) + ADDRESS_SEP if path else ""
            depth = len(path)

            def picks(cell: Cell):
                return [v for v in cell.explicit if prefix + v in plv.stub_cover]

            def children(cell: Cell):
                for nt in cell.nonterminals:
                    if depth + 1 < boundary:
                        npath = path + (nt.name,)
                        p, c = stub_fns(npath)
                        yield nt.name, nt.type_name, ("stub", npath), p, c
                    else:
                        npending = pending_under(stub_band, path + (nt.name,))
                        key = ("piece", nt.type_name, (), npending)
                        p, c = piece_fns(nt.type_name, (), npending)
                        yield nt.name, nt.type_name, key, p, c

            return picks, children

        p0, c0 = stub_fns(())
        root = builder.build(spec.top.name, ("stub", ()), p0, c0)
        return builder.assemble(root, name)

    raise ValueError(f"cannot re-emit solutions in mode {sol.mode!r}")
