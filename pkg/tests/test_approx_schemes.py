"""Deletion/overlap/tiling schemes: pinned values, knobs, and contracts."""

from __future__ import annotations

from fractions import Fraction

import pytest

from sgat import (
    BudgetExceededError,
    ConstraintError,
    bintree_spec,
    chain_triangles_spec,
    epsilon_to_l,
    exact_maxcut,
    exact_maxsat,
    exact_mis,
    exact_vc,
    expand_formula,
    expand_fpn,
    expand_fpn_formula,
    example4_lformula,
    fpn_ladder,
    fpn_maxcut,
    fpn_maxsat,
    fpn_mis,
    fpn_path,
    fpn_vc,
    h_maxcut,
    h_maxsat,
    h_mis,
    h_vc,
    parse_document,
    rand_1level_lformula,
    rand_1level_lspec,
    rand_fpn_formula,
    tri_spec,
    verify_solution,
)


@pytest.fixture(scope="module")
def tri():
    return parse_document(tri_spec())[1]


@pytest.fixture(scope="module")
def ct7():
    return parse_document(chain_triangles_spec(7))[1]


@pytest.fixture(scope="module")
def ex4():
    return parse_document(example4_lformula())[1]


# ---------------------------------------------------------------------------
# pinned small instances
# ---------------------------------------------------------------------------


def test_shallow_instances_fall_back_to_a_direct_solve(tri, ex4):
    sol = h_mis(tri, l=1)
    assert sol.mode == "degenerate"
    assert sol.total_value == 1
    assert sol.guarantee == Fraction(1, 4)

    cut = h_maxcut(tri, l=1)
    assert cut.mode == "degenerate"
    assert cut.total_value == 2

    sat = h_maxsat(ex4, l=2)
    assert sat.mode == "degenerate"
    assert sat.total_value == 7  # the whole example is satisfiable


def test_chain_of_triangles_pinned_solution(ct7):
    sol = h_mis(ct7, l=2)
    assert sol.mode == "hier-delete"
    assert (sol.total_value, sol.offset) == (5, 1)
    assert sol.guarantee == Fraction(4, 9)
    assert sol.rho == 1
    assert sol.stats["base"] == "exact"


def test_nonzero_offsets_win_where_they_should():
    _, spec = parse_document(rand_1level_lspec(5, 38))
    cut = h_maxcut(spec, l=2)
    assert cut.mode == "hier-tile"
    assert cut.offset == 1

    _, formula = parse_document(rand_1level_lformula(4, 7))
    sat = h_maxsat(formula, l=2)
    assert sat.mode == "hier-clause"
    # the winning deletion offset equals l here: the window rooted at the
    # top cell itself must be counted, not just second-period copies
    assert sat.offset == 2
    opt = exact_maxsat(expand_formula(formula)).satisfied
    assert 3 * sat.total_value >= opt


# ---------------------------------------------------------------------------
# accuracy knobs
# ---------------------------------------------------------------------------


def test_epsilon_maps_to_the_smallest_sufficient_level():
    assert [epsilon_to_l(e, "maximize-squared") for e in (0.75, 0.5, 0.25, 0.1)] == [1, 3, 7, 19]
    assert [epsilon_to_l(e, "minimize-squared") for e in (0.75, 0.5, 0.25, 0.1)] == [4, 5, 9, 21]
    assert [epsilon_to_l(e, "maximize-linear") for e in (0.75, 0.5, 0.25, 0.1)] == [1, 1, 3, 9]
    assert [epsilon_to_l(e, "maxsat") for e in (0.75, 0.5, 0.25, 0.1)] == [2, 3, 7, 19]
    for bad in (0.0, 1.0, -1.0, 2.0):
        with pytest.raises(ValueError):
            epsilon_to_l(bad, "maximize-squared")
    with pytest.raises(ValueError):
        epsilon_to_l(0.5, "no-such-kind")


def test_epsilon_and_l_agree(ct7):
    by_eps = h_mis(ct7, epsilon=0.5)
    by_l = h_mis(ct7, l=3)
    assert by_eps.l == by_l.l == 3
    assert by_eps.total_value == by_l.total_value
    with pytest.raises(ValueError):
        h_mis(ct7)


def test_band_width_override(ct7):
    assert h_mis(ct7, l=2, k=1).total_value == 5
    assert h_mis(ct7, l=2, k=2).total_value == 5
    assert h_mis(ct7, l=2, k=3).total_value == 6  # wider windows see more
    with pytest.raises(ConstraintError):
        h_mis(ct7, l=2, k=0)


def test_baker_base_composes_guarantees(ct7):
    sol = h_mis(ct7, l=2, base="baker")
    assert sol.rho == Fraction(3, 2)
    assert sol.guarantee == Fraction(4, 9) / Fraction(3, 2)
    assert sol.stats["base"].startswith("baker")
    opt = len(exact_mis(__import__("sgat").expand(ct7)))
    assert Fraction(sol.total_value) >= sol.guarantee * opt


def test_piece_budget_guard(ct7):
    with pytest.raises(BudgetExceededError):
        h_mis(ct7, l=2, piece_budget=2)


def test_degenerate_path_respects_expand_budget():
    _, spec = parse_document(bintree_spec(24))
    with pytest.raises(BudgetExceededError):
        h_mis(spec, l=30, expand_budget=1000)  # shallow fallback must expand


# ---------------------------------------------------------------------------
# the value >= guarantee * optimum contract on materializable fixtures
# ---------------------------------------------------------------------------


def test_guarantee_contract_hierarchical(ct7, ex4):
    from sgat import expand

    g = expand(ct7)
    opt_mis = len(exact_mis(g))
    opt_vc = len(exact_vc(g))
    opt_cut = exact_maxcut(g)[1]
    for l in (1, 2, 3):
        mis = h_mis(ct7, l=l)
        assert Fraction(mis.total_value) >= mis.guarantee * opt_mis
        vc = h_vc(ct7, l=l)
        assert Fraction(vc.total_value) <= vc.guarantee * opt_vc
        cut = h_maxcut(ct7, l=l)
        assert Fraction(cut.total_value) >= cut.guarantee * opt_cut
        assert mis.guarantee == Fraction(l, l + 1) ** 2
        assert vc.guarantee == Fraction(l + 1, l) ** 2
        assert cut.guarantee == Fraction(l, l + 1)

    opt_sat = exact_maxsat(expand_formula(ex4)).satisfied
    for l in (3, 4):
        sat = h_maxsat(ex4, l=l)
        assert Fraction(sat.total_value) >= sat.guarantee * opt_sat
        assert sat.guarantee == Fraction(l - 2, l + 1)  # two-level-deep bindings


def test_guarantee_contract_periodic():
    _, ladder = parse_document(fpn_ladder(13))
    g = expand_fpn(ladder)
    opt_mis = len(exact_mis(g, budget=100))
    opt_vc = len(exact_vc(g, budget=100))
    opt_cut = exact_maxcut(g, budget=100)[1]

    for l in (1, 2, 3):
        mis = fpn_mis(ladder, l=l)
        assert mis.mode in ("fpn-delete", "degenerate")
        assert Fraction(mis.total_value) >= mis.guarantee * opt_mis
        vc = fpn_vc(ladder, l=l)
        assert Fraction(vc.total_value) <= vc.guarantee * opt_vc
        cut = fpn_maxcut(ladder, l=l)
        assert Fraction(cut.total_value) >= cut.guarantee * opt_cut
        for sol in (mis, vc, cut):
            assert verify_solution(sol).ok

    sol = fpn_mis(ladder, l=2)
    assert (sol.total_value, sol.offset) == (10, 2)

    _, formula = parse_document(rand_fpn_formula(2, 2, 23, 5))
    opt_sat = exact_maxsat(expand_fpn_formula(formula), var_budget=50).satisfied
    for l in (2, 3):
        sat = fpn_maxsat(formula, l=l)
        assert Fraction(sat.total_value) >= sat.guarantee * opt_sat
        assert verify_solution(sat).ok


def test_periodic_degenerate_when_no_band_fits():
    _, tiny = parse_document(fpn_path(2))
    sol = fpn_mis(tiny, l=3)
    assert sol.mode == "degenerate"
    assert sol.total_value == 2


def test_periodic_band_override():
    _, ladder = parse_document(fpn_ladder(13))
    assert fpn_mis(ladder, l=2, k=2).total_value >= 9
    with pytest.raises(ConstraintError):
        fpn_mis(ladder, l=2, k=0)


def test_solution_metadata_fields(ct7):
    sol = h_mis(ct7, l=2)
    assert sol.problem == "mis"
    assert sol.source_kind == "lspec"
    assert sol.spec is ct7
    assert sol.l == 2
    assert 0 <= sol.offset <= 2
    assert sol.stats["k"] == 1
