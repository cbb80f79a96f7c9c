"""Shared instance corpora for the test suite.

Everything here is deterministic: corpora are produced by the seeded
generators in ``sgat.generators`` and solved once with the exact solvers,
then shared session-wide by every test module that needs ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass

import pytest

from sgat import (
    ExpandedGraph,
    bintree_spec,
    exact_maxsat,
    exact_mis,
    exact_vc,
    expand,
    expand_formula,
    expand_fpn,
    parse_document,
    rand_1level_lformula,
    rand_1level_lspec,
    rand_fpn,
    rand_planar_graph,
    tri_spec,
    validate_document,
)

GRAPH_CORPUS_RANDOM = 200
FORMULA_CORPUS_SIZE = 100
FPN_CORPUS_SIZE = 100
PLANAR_CORPUS_SIZE = 500


@dataclass(frozen=True)
class GraphCase:
    """A hierarchical graph instance with its materialized ground truth."""

    name: str
    text: str
    spec: object
    graph: ExpandedGraph
    mis: frozenset[str]
    vc: frozenset[str]


@dataclass(frozen=True)
class FormulaCase:
    """A hierarchical formula instance with its flat expansion and optimum."""

    name: str
    text: str
    formula: object
    flat: object
    opt: int


@dataclass(frozen=True)
class FpnCase:
    """A periodic graph instance with its materialized ground truth."""

    name: str
    text: str
    spec: object
    graph: ExpandedGraph
    mis_size: int


@dataclass(frozen=True)
class PlanarCase:
    """A flat planar graph with exact optimum sizes."""

    name: str
    graph: ExpandedGraph
    mis_size: int
    vc_size: int


def _parsed(text: str, want_kind: str):
    kind, obj = parse_document(text)
    assert kind == want_kind
    report = validate_document(kind, obj)
    assert report.ok, report.violations
    return obj


@pytest.fixture(scope="session")
def graph_corpus() -> list[GraphCase]:
    cases: list[GraphCase] = []
    for i in range(GRAPH_CORPUS_RANDOM):
        text = rand_1level_lspec(2 + i % 5, i)
        spec = _parsed(text, "lspec")
        g = expand(spec)
        assert len(g.vertices) <= 30
        cases.append(GraphCase(f"rand{i}", text, spec, g, exact_mis(g), exact_vc(g)))
    named = [("tri", tri_spec())]
    named += [(f"bintree{h}", bintree_spec(h)) for h in range(1, 9)]
    for name, text in named:
        spec = _parsed(text, "lspec")
        g = expand(spec)
        cases.append(
            GraphCase(
                name,
                text,
                spec,
                g,
                exact_mis(g, budget=300),
                exact_vc(g, budget=300),
            )
        )
    return cases


@pytest.fixture(scope="session")
def formula_corpus() -> list[FormulaCase]:
    cases: list[FormulaCase] = []
    for i in range(FORMULA_CORPUS_SIZE):
        text = rand_1level_lformula(2 + i % 4, i)
        formula = _parsed(text, "lformula")
        flat = expand_formula(formula)
        assert len(flat.variables) <= 20
        opt = exact_maxsat(flat).satisfied
        cases.append(FormulaCase(f"randf{i}", text, formula, flat, opt))
    return cases


@pytest.fixture(scope="session")
def fpn_corpus() -> list[FpnCase]:
    cases: list[FpnCase] = []
    for i in range(FPN_CORPUS_SIZE):
        m = 5 + (i * 7) % 56
        text = rand_fpn(vertices=2 + i % 5, density=0.5, k=1, m=m, seed=i)
        spec = _parsed(text, "fpn")
        g = expand_fpn(spec)
        assert len(spec.vertices) <= 6 and spec.m <= 60
        cases.append(FpnCase(f"randp{i}", text, spec, g, len(exact_mis(g, budget=500))))
    return cases


@pytest.fixture(scope="session")
def planar_corpus() -> list[PlanarCase]:
    cases: list[PlanarCase] = []
    for i in range(PLANAR_CORPUS_SIZE):
        g = rand_planar_graph(4 + i % 37, seed=i)
        assert len(g.vertices) <= 40
        cases.append(
            PlanarCase(
                f"planar{i}",
                g,
                len(exact_mis(g, budget=100)),
                len(exact_vc(g, budget=100)),
            )
        )
    return cases
