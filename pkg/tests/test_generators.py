"""Instance generators: determinism, validity, constraint enforcement."""

from __future__ import annotations

import pytest

from sgat import (
    GenerationError,
    bintree_spec,
    chain_triangles_spec,
    count_expansion,
    example4_lformula,
    expand,
    expand_formula,
    expand_fpn,
    formula_level_restriction,
    fpn_ladder,
    fpn_narrowness,
    fpn_path,
    level_restriction,
    parse_document,
    planarity_check,
    rand_1level_lformula,
    rand_1level_lspec,
    rand_fpn,
    rand_fpn_formula,
    rand_planar_graph,
    tri_spec,
    validate_document,
)


def _valid(text: str, want_kind: str):
    kind, obj = parse_document(text)
    assert kind == want_kind
    assert validate_document(kind, obj).ok
    return obj


def test_fixed_families_are_pinned():
    tri = _valid(tri_spec(), "lspec")
    assert len(expand(tri).vertices) == 3

    bt5 = _valid(bintree_spec(5), "lspec")
    counts = count_expansion(bt5)
    assert counts.vertices[counts.top] == 31

    ct4 = _valid(chain_triangles_spec(4), "lspec")
    g = expand(ct4)
    assert len(g.vertices) == 12 and len(g.edges) == 15  # 4 triangles + 3 links

    path = _valid(fpn_path(5), "fpn")
    g = expand_fpn(path)
    assert len(g.vertices) == 6 and len(g.edges) == 5

    ladder = _valid(fpn_ladder(5), "fpn")
    g = expand_fpn(ladder)
    assert len(g.vertices) == 12 and len(g.edges) == 16

    ex4 = _valid(example4_lformula(), "lformula")
    flat = expand_formula(ex4)
    assert len(ex4.fcells) == 3
    assert (len(flat.variables), len(flat.clauses)) == (14, 7)
    assert formula_level_restriction(ex4) == 2


@pytest.mark.parametrize(
    "factory",
    [
        lambda: rand_1level_lspec(4, 7),
        lambda: rand_1level_lformula(3, 7),
        lambda: rand_fpn(vertices=4, density=0.5, k=2, m=20, seed=7),
        lambda: rand_fpn_formula(3, 2, 15, 7),
        lambda: bintree_spec(6),
        lambda: chain_triangles_spec(6),
    ],
    ids=["lspec", "lformula", "fpn", "fpncnf", "bintree", "chaintri"],
)
def test_generators_are_deterministic(factory):
    assert factory() == factory()


def test_random_hierarchical_specs_meet_their_contract():
    for i in range(40):
        spec = _valid(rand_1level_lspec(2 + i % 5, 1000 + i), "lspec")
        assert level_restriction(spec) <= 1
        g = expand(spec)
        assert len(g.vertices) <= 30
        assert planarity_check(g)


def test_random_formulas_meet_their_contract():
    for i in range(25):
        formula = _valid(rand_1level_lformula(2 + i % 4, 2000 + i), "lformula")
        assert formula_level_restriction(formula) <= 1
        flat = expand_formula(formula)
        assert len(flat.variables) <= 20
        assert flat.clauses


def test_random_periodic_specs_meet_their_contract():
    for i in range(25):
        spec = _valid(
            rand_fpn(vertices=2 + i % 5, density=0.5, k=1, m=10 + i, seed=i), "fpn"
        )
        assert fpn_narrowness(spec) <= 1
        assert spec.m == 10 + i
        assert spec.edges


def test_random_periodic_formulas_meet_their_contract():
    for i in range(25):
        formula = _valid(rand_fpn_formula(2 + i % 3, 2, 9 + i, i), "fpncnf")
        assert formula.m == 9 + i
        assert formula.clauses


def test_random_planar_graphs_meet_their_contract():
    sizes = set()
    for i in range(40):
        n = 4 + i % 30
        g = rand_planar_graph(n, seed=3000 + i)
        assert len(g.vertices) == n
        assert planarity_check(g)
        sizes.add(len(g.edges))
    assert len(sizes) > 5  # genuinely varied, not a fixed template


def test_generation_error_when_constraints_are_unsatisfiable():
    with pytest.raises(GenerationError):
        rand_fpn(vertices=3, density=0.0, k=1, m=10, seed=0)
