"""Materialization and counting of hierarchical and periodic instances."""

from __future__ import annotations

import pytest

from sgat import (
    BudgetExceededError,
    DepthCounter,
    bintree_spec,
    chain_triangles_spec,
    count_expansion,
    count_formula_expansion,
    count_fpn_formula_clauses,
    example4_lformula,
    expand,
    expand_formula,
    expand_fpn,
    expand_fpn_formula,
    formula_level_restriction,
    fpn_ladder,
    fpn_narrowness,
    fpn_path,
    level_restriction,
    parse_document,
    rand_fpn,
    rand_fpn_formula,
    resolve_address,
    tri_spec,
)


def _edge_set(g):
    return {frozenset(e) for e in g.edges}


def test_triangle_expansion_is_pinned():
    _, spec = parse_document(tri_spec())
    g = expand(spec)
    assert set(g.vertices) == {"u", "v", "X/a"}
    assert _edge_set(g) == {
        frozenset({"u", "v"}),
        frozenset({"u", "X/a"}),
        frozenset({"v", "X/a"}),
    }


def test_bintree_addresses_and_counts():
    _, spec = parse_document(bintree_spec(4))
    g = expand(spec)
    assert len(g.vertices) == 15 and len(g.edges) == 14
    assert "r" in g.vertices
    assert "L/L/L/r" in g.vertices and "R/L/R/r" in g.vertices

    counts = count_expansion(spec)
    assert counts.top == "B4"
    assert counts.vertices[counts.top] == 15
    assert counts.edges[counts.top] == 14
    assert counts.copies["B4"] == {"B4": 1, "B3": 2, "B2": 4, "B1": 8}


def test_counts_match_materialization_on_corpus(graph_corpus):
    for case in graph_corpus[:40]:
        counts = count_expansion(case.spec)
        assert counts.vertices[counts.top] == len(case.graph.vertices)
        assert counts.edges[counts.top] == len(case.graph.edges)


def test_counting_scales_past_any_materializable_size():
    _, spec = parse_document(bintree_spec(40))
    counts = count_expansion(spec)
    assert counts.vertices[counts.top] == 2**40 - 1
    assert counts.edges[counts.top] == 2**40 - 2


def test_expand_budget_guard():
    _, spec = parse_document(bintree_spec(30))
    with pytest.raises(BudgetExceededError):
        expand(spec)


def test_depth_counter_matches_tree_structure():
    _, spec = parse_document(bintree_spec(6))
    top = spec.top.name
    dc = DepthCounter(spec)
    assert dc.max_depth(top) == 5
    for d in range(6):
        assert dc.vertices_at_depth(top, d) == 2**d
    assert dc.vertices_at_depth(top, 6) == 0
    assert dc.copies_at_depth(top, 2) == {"B4": 4}


def test_level_restriction_values(graph_corpus):
    _, ex4 = parse_document(example4_lformula())
    assert formula_level_restriction(ex4) == 2
    _, ct = parse_document(chain_triangles_spec(5))
    assert level_restriction(ct) == 1
    for case in graph_corpus[:40]:
        assert level_restriction(case.spec) <= 1


def test_formula_expansion_pinned_counts():
    _, formula = parse_document(example4_lformula())
    flat = expand_formula(formula)
    assert len(flat.variables) == 14
    assert len(flat.clauses) == 7
    var_counts, clause_counts = count_formula_expansion(formula)
    assert var_counts[formula.top.name] == 14
    assert clause_counts[formula.top.name] == 7


def test_fpn_path_and_ladder_expansions():
    _, path = parse_document(fpn_path(3))
    g = expand_fpn(path)
    assert set(g.vertices) == {"v@0", "v@1", "v@2", "v@3"}
    assert _edge_set(g) == {
        frozenset({"v@0", "v@1"}),
        frozenset({"v@1", "v@2"}),
        frozenset({"v@2", "v@3"}),
    }

    _, ladder = parse_document(fpn_ladder(5))
    gl = expand_fpn(ladder)
    assert len(gl.vertices) == 12  # two rails x six positions
    assert len(gl.edges) == 16  # six rungs + five steps per rail


def test_fpn_narrowness():
    _, path = parse_document(fpn_path(9))
    assert fpn_narrowness(path) == 1
    _, wide = parse_document(rand_fpn(vertices=3, density=0.6, k=2, m=20, seed=4))
    assert fpn_narrowness(wide) == 2


def test_fpn_formula_expansion_counts():
    text = rand_fpn_formula(2, 2, 23, 1)
    _, formula = parse_document(text)
    flat = expand_fpn_formula(formula)
    assert len(flat.clauses) == count_fpn_formula_clauses(formula)
    assert all("@" in v for v in flat.variables)


def test_resolve_address():
    _, spec = parse_document(bintree_spec(4))
    res = resolve_address(spec, "L/L/L/r")
    assert res.valid and res.cell_name == "B1" and res.depth == 3
    assert resolve_address(spec, "r").valid
    for bad in ("r/r", "L/x", "nope"):
        assert not resolve_address(spec, bad).valid


def test_every_expanded_address_resolves(graph_corpus):
    for case in graph_corpus[:25]:
        for v in case.graph.vertices:
            res = resolve_address(case.spec, v)
            assert res.valid, (case.name, v)
