"""Windowed expansion: bounded-depth pieces, slab decompositions, kernels."""

from __future__ import annotations

import pytest

from sgat import (
    BudgetExceededError,
    bintree_spec,
    count_formula_expansion,
    count_fpn_formula_clauses,
    example4_lformula,
    expand_fpn,
    formula_head,
    formula_kernel,
    formula_pieces,
    fpn_formula_pieces,
    fpn_interval_graph,
    fpn_path,
    fpn_slabs,
    parse_document,
    partial_expand,
    rand_fpn_formula,
    tri_spec,
    truncated_expand_formula,
)


# ---------------------------------------------------------------------------
# hierarchical windows
# ---------------------------------------------------------------------------


def test_partial_expand_triangle_delete():
    _, tri = parse_document(tri_spec())
    pe = partial_expand(tri, "G2", 1, boundary="delete", band=1)
    assert set(pe.graph.vertices) == {"u", "v"}
    assert {frozenset(e) for e in pe.graph.edges} == {frozenset({"u", "v"})}
    assert pe.frontier_map() == {}
    assert pe.deleted_vertex_count == 1
    assert not pe.empty


def test_partial_expand_bintree_delete_and_frontier():
    _, spec = parse_document(bintree_spec(6))
    pe = partial_expand(spec, spec.top.name, 2, boundary="delete", band=1)
    assert len(pe.graph.vertices) == 3  # depths 0 and 1
    assert pe.deleted_vertex_count == 4  # the four depth-2 roots
    assert pe.frontier_map() == {"B3": 8}  # depth-3 copies, now disconnected
    assert pe.mode == "delete"


def test_partial_expand_keep_overlap():
    _, spec = parse_document(bintree_spec(6))
    pe = partial_expand(spec, spec.top.name, 2, boundary="keep-overlap", band=1)
    assert len(pe.graph.vertices) == 7  # depths 0..2 inclusive
    assert pe.deleted_vertex_count == 0
    assert pe.frontier_map() == {"B4": 4}  # shared boundary level
    assert pe.mode == "keep-overlap"


def test_partial_expand_empty_window():
    _, tri = parse_document(tri_spec())
    pe = partial_expand(tri, "G1", 0, boundary="delete", band=1)
    assert pe.empty
    assert pe.deleted_vertex_count == 1
    assert pe.frontier_map() == {}


def test_partial_expand_rejects_bad_arguments():
    _, tri = parse_document(tri_spec())
    with pytest.raises(ValueError):
        partial_expand(tri, "G2", 1, boundary="sideways")
    with pytest.raises(ValueError):
        partial_expand(tri, "G2", -1)
    with pytest.raises(ValueError):
        partial_expand(tri, "G2", 1, band=0)


def test_partial_expand_budget_guard():
    _, spec = parse_document(bintree_spec(30))
    with pytest.raises(BudgetExceededError):
        partial_expand(spec, spec.top.name, 25, boundary="delete", band=1)


# ---------------------------------------------------------------------------
# periodic slab decompositions
# ---------------------------------------------------------------------------


def test_fpn_slabs_pinned_example():
    dec = fpn_slabs(9, 3, 3, 1)
    assert (dec.head.lo, dec.head.hi) == (0, 2)
    assert dec.middle.count == 1
    assert (dec.middle.interval(0).lo, dec.middle.interval(0).hi) == (4, 6)
    assert (dec.tail.lo, dec.tail.hi) == (8, 9)


@pytest.mark.parametrize("m", [5, 9, 23, 60])
@pytest.mark.parametrize("l", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2])
def test_fpn_slabs_partition_the_lattice(m, l, k):
    for offset in range(l + 1):
        dec = fpn_slabs(m, offset, l, k)
        intervals = []
        if dec.head is not None:
            intervals.append(dec.head)
        if dec.middle is not None:
            intervals.extend(dec.middle.interval(j) for j in range(dec.middle.count))
        if dec.tail is not None:
            intervals.append(dec.tail)

        covered: set[int] = set()
        for iv in intervals:
            assert 0 <= iv.lo <= iv.hi <= m
            positions = set(range(iv.lo, iv.hi + 1))
            assert not positions & covered  # slabs are pairwise disjoint
            covered |= positions

        deleted = set(range(m + 1)) - covered
        # deleted positions come in bands of width k, one band between
        # consecutive slabs, possibly truncated at the lattice end
        bands = sorted(deleted)
        runs = []
        for p in bands:
            if runs and runs[-1][-1] == p - 1:
                runs[-1].append(p)
            else:
                runs.append([p])
        assert all(len(r) == k for r in runs[:-1] or [])
        if runs:
            assert len(runs[-1]) <= k

        if dec.middle is not None:
            for j in range(dec.middle.count):
                assert dec.middle.interval(j).length == l * k


def test_fpn_interval_graph_uses_absolute_labels():
    _, spec = parse_document(fpn_path(9))
    g = fpn_interval_graph(spec, 4, 6)
    assert set(g.vertices) == {"v@4", "v@5", "v@6"}
    assert {frozenset(e) for e in g.edges} == {
        frozenset({"v@4", "v@5"}),
        frozenset({"v@5", "v@6"}),
    }
    full = expand_fpn(spec)
    assert set(g.vertices) <= set(full.vertices)


# ---------------------------------------------------------------------------
# formula windows
# ---------------------------------------------------------------------------


def test_truncated_formula_expansion():
    _, ex4 = parse_document(example4_lformula())
    flat = truncated_expand_formula(ex4, ex4.top.name, 0, lambda d: False)
    assert len(flat.variables) == 3  # the top cell's own variables
    assert len(flat.clauses) == 0  # the top cell has no clauses of its own


def test_formula_kernel_keeps_the_deep_band():
    _, ex4 = parse_document(example4_lformula())
    # levels: depth 1 holds 3 clauses, depth 2 holds 4
    kernel = formula_kernel(ex4, ex4.top.name, 3, 2)
    assert len(kernel.clauses) == 4
    assert len(kernel.variables) == 14


def test_formula_head_is_empty_at_top_offset():
    _, ex4 = parse_document(example4_lformula())
    for l in (2, 3):
        head = formula_head(ex4, l, l, max(1, 2))
        assert len(head.clauses) == 0


def test_formula_pieces_account_for_every_clause():
    _, ex4 = parse_document(example4_lformula())
    _, total_clauses = count_formula_expansion(ex4)
    total = total_clauses[ex4.top.name]
    for l in (1, 2, 3, 4):
        for iteration in range(0, 2 * l + 1, 2):
            pieces = formula_pieces(ex4, l, iteration)
            assert pieces.offset_j == iteration % (l + 1)
            assert pieces.kept_clauses + pieces.deleted_clauses == total
            recount = len(pieces.head.clauses) + sum(
                len(piece.clauses) * copies for _, piece, copies in pieces.pieces
            )
            assert recount == pieces.kept_clauses


def test_fpn_formula_pieces_account_for_every_clause():
    text = rand_fpn_formula(2, 2, 23, 1)
    _, formula = parse_document(text)
    total = count_fpn_formula_clauses(formula)
    for l in (1, 2, 3):
        for offset in range(l + 1):
            pieces = fpn_formula_pieces(formula, l, offset)
            assert pieces.kept_clauses + pieces.deleted_clauses == total
            recount = 0
            if pieces.head is not None:
                recount += len(pieces.head[1].clauses)
            if pieces.middle is not None:
                recount += pieces.middle_count * len(pieces.middle[1].clauses)
            if pieces.tail is not None:
                recount += len(pieces.tail[1].clauses)
            assert recount == pieces.kept_clauses
