"""Exact and shifting solvers cross-checked against brute force."""

from __future__ import annotations

import itertools

import pytest

from sgat import (
    BoolRelation,
    BudgetExceededError,
    ExpandedGraph,
    SFormula,
    baker_mis,
    baker_vc,
    bintree_spec,
    exact_maxcut,
    exact_maxsat,
    exact_mis,
    exact_vc,
    expand,
    expand_formula,
    parse_document,
    planarity_check,
    rand_1level_lformula,
    rand_planar_graph,
    tri_spec,
)

# ---------------------------------------------------------------------------
# brute-force references
# ---------------------------------------------------------------------------


def _bits(g: ExpandedGraph):
    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    edge_masks = [(1 << index[a]) | (1 << index[b]) for a, b in g.edges]
    return verts, edge_masks


def brute_mis_size(g: ExpandedGraph) -> int:
    verts, edge_masks = _bits(g)
    best = 0
    for mask in range(1 << len(verts)):
        if all((mask & em) != em for em in edge_masks):
            best = max(best, mask.bit_count())
    return best


def brute_vc_size(g: ExpandedGraph) -> int:
    verts, edge_masks = _bits(g)
    best = len(verts)
    for mask in range(1 << len(verts)):
        if all(mask & em for em in edge_masks):
            best = min(best, mask.bit_count())
    return best


def brute_maxcut_value(g: ExpandedGraph) -> int:
    verts, edge_masks = _bits(g)
    best = 0
    for mask in range(1 << max(0, len(verts) - 1)):  # fix one side of vertex 0
        best = max(
            best, sum(1 for em in edge_masks if 0 < (mask & em) < em)
        )
    return best


def brute_maxsat_value(flat: SFormula) -> int:
    rels = flat.relation_map()
    best = 0
    variables = list(flat.variables)
    for values in itertools.product((0, 1), repeat=len(variables)):
        assignment = dict(zip(variables, values))
        sat = sum(
            1
            for rel, args in flat.clauses
            if tuple(assignment[a] for a in args) in rels[rel].satisfying_tuples
        )
        best = max(best, sat)
    return best


def _path(n: int) -> ExpandedGraph:
    verts = tuple(f"p{i:03d}" for i in range(n))
    return ExpandedGraph(verts, tuple((verts[i], verts[i + 1]) for i in range(n - 1)))


def _cycle(n: int) -> ExpandedGraph:
    verts = tuple(f"c{i:03d}" for i in range(n))
    return ExpandedGraph(
        verts, tuple((verts[i], verts[(i + 1) % n]) for i in range(n))
    )


def _complete(names: str) -> ExpandedGraph:
    verts = tuple(names)
    return ExpandedGraph(
        verts, tuple((a, b) for i, a in enumerate(verts) for b in verts[i + 1 :])
    )


def _star(n: int) -> ExpandedGraph:
    verts = ("hub",) + tuple(f"s{i:02d}" for i in range(n))
    return ExpandedGraph(verts, tuple(("hub", v) for v in verts[1:]))


SMALL_GRAPHS = [rand_planar_graph(4 + i % 9, seed=100 + i) for i in range(24)] + [
    _complete("abcde"),
    _cycle(7),
    _star(5),
]


# ---------------------------------------------------------------------------
# exact solvers
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("g", SMALL_GRAPHS, ids=range(len(SMALL_GRAPHS)))
def test_exact_solvers_match_brute_force(g):
    mis = exact_mis(g)
    assert len(mis) == brute_mis_size(g)
    for a, b in g.edges:
        assert not (a in mis and b in mis)

    vc = exact_vc(g)
    assert len(vc) == brute_vc_size(g)
    for a, b in g.edges:
        assert a in vc or b in vc
    assert len(mis) + len(vc) == len(g.vertices)

    side, value = exact_maxcut(g)
    assert value == brute_maxcut_value(g)
    assert sum(1 for a, b in g.edges if (a in side) != (b in side)) == value


@pytest.mark.parametrize("g", SMALL_GRAPHS[:8], ids=range(8))
def test_exact_solvers_are_deterministic(g):
    assert exact_mis(g) == exact_mis(g)
    assert exact_vc(g) == exact_vc(g)
    assert exact_maxcut(g) == exact_maxcut(g)


def test_exact_mis_lexicographic_tie_break():
    _, tri = parse_document(tri_spec())
    assert exact_mis(expand(tri)) == frozenset({"X/a"})


def test_closed_forms_on_structured_graphs():
    p = _path(101)
    assert len(exact_mis(p)) == 51
    assert len(exact_vc(p)) == 50
    assert exact_maxcut(p)[1] == 100  # bipartite: every edge cut

    even = _cycle(20)
    assert len(exact_mis(even)) == 10
    assert len(exact_vc(even)) == 10
    assert exact_maxcut(even)[1] == 20

    odd = _cycle(21)
    assert len(exact_mis(odd)) == 10
    assert len(exact_vc(odd)) == 11
    assert exact_maxcut(odd)[1] == 20

    star = _star(50)
    assert len(exact_mis(star)) == 50
    assert len(exact_vc(star)) == 1
    assert exact_maxcut(star)[1] == 50


def test_large_trees_bypass_the_enumeration_budget():
    _, spec = parse_document(bintree_spec(10))
    g = expand(spec)  # 1023 vertices, far beyond the default budget
    assert len(exact_mis(g)) == 682
    assert len(exact_vc(g)) == 341


def test_budget_guards_fire_on_dense_graphs():
    k5 = _complete("abcde")
    with pytest.raises(BudgetExceededError):
        exact_mis(k5, budget=4)
    with pytest.raises(BudgetExceededError):
        exact_vc(k5, budget=4)
    with pytest.raises(BudgetExceededError):
        exact_maxcut(k5, budget=4)


# ---------------------------------------------------------------------------
# clause satisfaction
# ---------------------------------------------------------------------------


def test_exact_maxsat_matches_brute_force():
    for seed in range(12):
        _, formula = parse_document(rand_1level_lformula(2 + seed % 3, seed))
        flat = expand_formula(formula)
        if len(flat.variables) > 14:
            continue
        result = exact_maxsat(flat)
        assert result.satisfied == brute_maxsat_value(flat)
        # the reported assignment really satisfies that many clauses
        true_vars = {v for v, bit in result.assignment.items() if bit}
        rels = flat.relation_map()
        recount = sum(
            1
            for rel, args in flat.clauses
            if tuple(1 if a in true_vars else 0 for a in args)
            in rels[rel].satisfying_tuples
        )
        assert recount == result.satisfied
        assert set(result.assignment) == set(flat.variables)


def test_exact_maxsat_empty_formula():
    empty = SFormula(relations=(), variables=("x", "y"), clauses=())
    result = exact_maxsat(empty)
    assert result.satisfied == 0
    assert result.assignment == {"x": False, "y": False}


def test_exact_maxsat_variable_budget():
    rel = BoolRelation("or2", 2, frozenset({(0, 1), (1, 0), (1, 1)}))
    variables = tuple(f"x{i:02d}" for i in range(23))
    clauses = tuple(
        ("or2", (variables[i], variables[(i + 1) % 23])) for i in range(23)
    )
    big = SFormula(relations=(rel,), variables=variables, clauses=clauses)
    with pytest.raises(BudgetExceededError):
        exact_maxsat(big)
    assert exact_maxsat(big, var_budget=23).satisfied == 23


# ---------------------------------------------------------------------------
# planarity and the shifting solvers
# ---------------------------------------------------------------------------


def test_planarity_check():
    assert planarity_check(_complete("abcd"))
    assert not planarity_check(_complete("abcde"))
    left, right = ("l1", "l2", "l3"), ("r1", "r2", "r3")
    k33 = ExpandedGraph(left + right, tuple((a, b) for a in left for b in right))
    assert not planarity_check(k33)
    assert planarity_check(_path(30))


def test_shifting_solvers_hold_their_bounds():
    for i in range(30):
        g = rand_planar_graph(6 + i, seed=500 + i)
        mis_size = brute_mis_size(g) if len(g.vertices) <= 12 else len(exact_mis(g, budget=64))
        vc_size = len(g.vertices) - mis_size
        for l in (1, 2):
            s = baker_mis(g, l)
            for a, b in g.edges:
                assert not (a in s and b in s)
            assert (l + 1) * len(s) >= l * mis_size

            cover = baker_vc(g, l)
            for a, b in g.edges:
                assert a in cover or b in cover
            assert l * len(cover) <= (l + 1) * vc_size


def test_shifting_solvers_reject_bad_l():
    g = _path(5)
    with pytest.raises(ValueError):
        baker_mis(g, 0)
    with pytest.raises(ValueError):
        baker_vc(g, 0)
