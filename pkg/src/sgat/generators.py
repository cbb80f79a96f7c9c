"""Instance generators: fixed families (triangle, binary tree, triangle
chain, periodic path and ladder) plus seeded random families used by the
test corpus and the ``gen`` CLI subcommand.

Every generator returns a document string that parses and validates
under the corresponding grammar, and is deterministic given its
parameters (random families are seeded with a stable string key, so the
same parameters always reproduce the same document). Random families
that promise side conditions — bounded expansion size, planarity,
1-level restriction — enforce them by rejection: candidates are drawn
from a per-attempt stream until one satisfies every condition, which
biases the distribution toward small/sparse instances. That bias is
deliberate; the corpus needs valid instances more than it needs
uniformity.
"""

from __future__ import annotations

import random
from typing import Callable

import networkx as nx

from .expansion import (
    ExpandedGraph,
    count_expansion,
    count_formula_expansion,
    expand,
    formula_level_restriction,
    level_restriction,
)
from .base_solvers import planarity_check
from .spec_core import (
    TRI_TEXT,
    parse_lformula,
    parse_lspec,
    validate_fpn,
    validate_fpn_formula,
    validate_lformula,
    validate_lspec,
    parse_fpn,
    parse_fpn_formula,
)

__all__ = [
    "GenerationError",
    "tri_spec",
    "bintree_spec",
    "chain_triangles_spec",
    "rand_1level_lspec",
    "fpn_path",
    "fpn_ladder",
    "rand_fpn",
    "example4_lformula",
    "rand_1level_lformula",
    "rand_fpn_formula",
    "rand_planar_graph",
]


class GenerationError(ValueError):
    """No instance satisfying the requested side conditions was found
    within the retry budget."""


def _checked_lspec(text: str) -> str:
    report = validate_lspec(parse_lspec(text))
    if not report.ok:
        raise AssertionError(f"generator produced an invalid document: {report}")
    return text


def _checked_fpn(text: str) -> str:
    report = validate_fpn(parse_fpn(text))
    if not report.ok:
        raise AssertionError(f"generator produced an invalid document: {report}")
    return text


def _checked_lformula(text: str) -> str:
    report = validate_lformula(parse_lformula(text))
    if not report.ok:
        raise AssertionError(f"generator produced an invalid document: {report}")
    return text


def _checked_fpn_formula(text: str) -> str:
    report = validate_fpn_formula(parse_fpn_formula(text))
    if not report.ok:
        raise AssertionError(f"generator produced an invalid document: {report}")
    return text


def _rng(*key: object) -> random.Random:
    """A PRNG seeded with a stable string key (independent of hash
    randomization), so generators are reproducible across processes."""
    return random.Random(":".join(str(k) for k in key))


# ---------------------------------------------------------------------------
# Fixed hierarchical families
# ---------------------------------------------------------------------------


def tri_spec() -> str:
    """The two-cell triangle: the smallest spec whose expansion differs
    from its top cell."""
    return _checked_lspec(TRI_TEXT)


def bintree_spec(h: int) -> str:
    """A complete binary tree of height ``h`` (2^h − 1 vertices) from
    ``h`` cells: each level-``j`` cell owns one vertex wired to its pin
    and passes that vertex down to two copies of level ``j−1``. The
    expansion is exponentially larger than the document."""
    if h < 1:
        raise ValueError("height must be >= 1")
    lines = [f"lspec bintree{h}"]
    if h == 1:
        lines += ["cell B1 pins 0", "  vertex r"]
    else:
        lines += ["cell B1 pins 1", "  vertex r", "  edge pin:1 r"]
        for j in range(2, h):
            lines += [
                f"cell B{j} pins 1",
                "  vertex r",
                "  edge pin:1 r",
                f"  nonterm L type B{j - 1}",
                f"  nonterm R type B{j - 1}",
                "  bind L 1 r",
                "  bind R 1 r",
            ]
        lines += [
            f"cell B{h} pins 0",
            "  vertex r",
            f"  nonterm L type B{h - 1}",
            f"  nonterm R type B{h - 1}",
            "  bind L 1 r",
            "  bind R 1 r",
        ]
    return _checked_lspec("\n".join(lines) + "\n")


def chain_triangles_spec(h: int) -> str:
    """A chain of ``h`` edge-disjoint triangles, consecutive ones joined
    at a shared vertex; linear-depth recursion with one vertex crossing
    each cell boundary."""
    if h < 1:
        raise ValueError("length must be >= 1")
    lines = [f"lspec chaintri{h}"]
    body = ["  vertex a", "  vertex b", "  vertex c",
            "  edge a b", "  edge b c", "  edge a c"]
    if h == 1:
        lines += ["cell T1 pins 0", *body]
    else:
        lines += ["cell T1 pins 1", *body, "  edge pin:1 a"]
        for j in range(2, h):
            lines += [
                f"cell T{j} pins 1", *body, "  edge pin:1 a",
                f"  nonterm N type T{j - 1}",
                "  bind N 1 c",
            ]
        lines += [
            f"cell T{h} pins 0", *body,
            f"  nonterm N type T{h - 1}",
            "  bind N 1 c",
        ]
    return _checked_lspec("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Random hierarchical graph specifications
# ---------------------------------------------------------------------------


def rand_1level_lspec(
    cells: int,
    seed: int,
    max_vertices: int = 30,
    require_planar: bool = True,
    max_attempts: int = 400,
) -> str:
    """A random 1-level-restricted spec: every bind targets an explicit
    vertex of the calling cell, so no vertex crosses more than one cell
    boundary. The call structure is a random DAG in which every non-top
    cell is reachable.

    Candidates are redrawn until the expansion has at most
    ``max_vertices`` vertices and (when ``require_planar``) is planar —
    subgraphs of a planar graph are planar, so every piece any scheme
    solves inherits the property. Deterministic given ``(cells, seed)``.
    """
    if cells < 1:
        raise ValueError("cells must be >= 1")
    for attempt in range(max_attempts):
        rng = _rng("rand1level", cells, seed, attempt)
        text = _draw_1level_lspec(rng, cells, seed)
        spec = parse_lspec(text)
        if not validate_lspec(spec).ok:
            continue
        if level_restriction(spec) > 1:
            continue
        counts = count_expansion(spec)
        if counts.vertices[spec.top.name] > max_vertices:
            continue
        if require_planar and not planarity_check(expand(spec)):
            continue
        return text
    raise GenerationError(
        f"no admissible spec for cells={cells} seed={seed} "
        f"within {max_attempts} attempts"
    )


def _draw_1level_lspec(rng: random.Random, cells: int, seed: int) -> str:
    pins = [0 if i == cells else rng.randint(1, 2) for i in range(1, cells + 1)]
    nverts = [rng.randint(max(1, pins[i - 1]), 3) for i in range(1, cells + 1)]
    # Random call DAG: cell i may call any j < i; every j < cells gets at
    # least one caller so the whole document participates in the expansion.
    callers: dict[int, list[int]] = {i: [] for i in range(1, cells + 1)}
    for j in range(1, cells):
        parent = rng.randint(j + 1, cells)
        callers[parent].append(j)
    for i in range(2, cells + 1):
        for j in range(1, i):
            if len(callers[i]) < 3 and rng.random() < 0.25:
                callers[i].append(j)
    lines = [f"lspec rand1level_{cells}_{seed}"]
    for i in range(1, cells + 1):
        name = f"C{i}"
        verts = [f"v{q}" for q in range(1, nverts[i - 1] + 1)]
        lines.append(f"cell {name} pins {pins[i - 1]}")
        lines.extend(f"  vertex {v}" for v in verts)
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                if rng.random() < 0.5:
                    lines.append(f"  edge {verts[a]} {verts[b]}")
        for p in range(1, pins[i - 1] + 1):
            lines.append(f"  edge pin:{p} {rng.choice(verts)}")
        for ordinal, j in enumerate(sorted(callers[i]), start=1):
            nt = f"N{ordinal}"
            lines.append(f"  nonterm {nt} type C{j}")
            for p in range(1, pins[j - 1] + 1):
                lines.append(f"  bind {nt} {p} {rng.choice(verts)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Periodic graph specifications
# ---------------------------------------------------------------------------


def fpn_path(m: int) -> str:
    """The path on positions 0..m: one static vertex, one offset-1 edge."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return _checked_fpn(f"fpn m={m}\nvertex v\nedge v v 1\n")


def fpn_ladder(m: int) -> str:
    """The ladder on positions 0..m: two rails plus a rung per position."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return _checked_fpn(
        f"fpn m={m}\nvertex a\nvertex b\n"
        "edge a b 0\nedge a a 1\nedge b b 1\n"
    )


def rand_fpn(
    vertices: int,
    density: float,
    k: int,
    m: int,
    seed: int,
    max_attempts: int = 200,
) -> str:
    """A random periodic spec on ``vertices`` static vertices with edge
    offsets at most ``k`` (so the result is at most ``k``-narrow); each
    candidate edge is kept with probability ``density``. At least one
    edge is guaranteed. Deterministic given the parameters."""
    if vertices < 1:
        raise ValueError("vertices must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if m < 0:
        raise ValueError("m must be >= 0")
    names = [f"u{q}" for q in range(vertices)]
    for attempt in range(max_attempts):
        rng = _rng("randfpn", vertices, density, k, m, seed, attempt)
        edges: list[tuple[str, str, int]] = []
        for off in range(k + 1):
            for a in range(vertices):
                for b in range(vertices):
                    if off == 0 and b <= a:
                        continue  # same-position edges canonically a < b
                    if rng.random() < density:
                        edges.append((names[a], names[b], off))
        if not edges:
            continue
        lines = [f"fpn m={m}"]
        lines.extend(f"vertex {v}" for v in names)
        lines.extend(f"edge {a} {b} {off}" for a, b, off in edges)
        return _checked_fpn("\n".join(lines) + "\n")
    raise GenerationError(
        f"no nonempty edge set for vertices={vertices} density={density} "
        f"seed={seed} within {max_attempts} attempts"
    )


# ---------------------------------------------------------------------------
# Hierarchical formulas
# ---------------------------------------------------------------------------

EXAMPLE4_LFORMULA = """\
relation or2 arity 2 tuples 01,10,11
relation or3 arity 3 tuples 001,010,011,100,101,110,111
fcell F1 in x1,x2
  var z1
  var z2
  var z3
  clause or3(x1, x2, z1)
  clause or2(z2, z3)
fcell F2 in x3,x4
  var z4
  var z5
  call F1(x3, z4)
  call F1(z4, z5)
  clause or3(z4, z5, x4)
fcell F3
  var z6
  var z7
  var z8
  call F1(z7, z6)
  call F2(z8, z7)
"""


def example4_lformula() -> str:
    """The three-cell hierarchical CNF whose expansion is a fixed
    7-clause, 14-variable formula; exercises interface variables that
    travel two cell levels deep."""
    return _checked_lformula(EXAMPLE4_LFORMULA)


_RELATION_DEFS = {
    "or2": "relation or2 arity 2 tuples 01,10,11",
    "or3": "relation or3 arity 3 tuples 001,010,011,100,101,110,111",
    "xor2": "relation xor2 arity 2 tuples 01,10",
    "nae3": "relation nae3 arity 3 tuples 001,010,011,100,101,110",
}


def rand_1level_lformula(
    cells: int,
    seed: int,
    max_variables: int = 20,
    max_attempts: int = 400,
) -> str:
    """A random 1-level-restricted hierarchical formula: call arguments
    are always local variables of the calling cell, so no variable is
    shared across more than one cell boundary. Redrawn until the
    expansion has at most ``max_variables`` variables. Deterministic
    given ``(cells, seed)``."""
    if cells < 1:
        raise ValueError("cells must be >= 1")
    for attempt in range(max_attempts):
        rng = _rng("randlformula", cells, seed, attempt)
        text = _draw_1level_lformula(rng, cells, seed)
        formula = parse_lformula(text)
        if not validate_lformula(formula).ok:
            continue
        if formula_level_restriction(formula) > 1:
            continue
        var_counts, _ = count_formula_expansion(formula)
        if var_counts[formula.top.name] > max_variables:
            continue
        return text
    raise GenerationError(
        f"no admissible formula for cells={cells} seed={seed} "
        f"within {max_attempts} attempts"
    )


def _draw_1level_lformula(rng: random.Random, cells: int, seed: int) -> str:
    iface = [0 if i == cells else rng.randint(1, 2) for i in range(1, cells + 1)]
    callers: dict[int, list[int]] = {i: [] for i in range(1, cells + 1)}
    for j in range(1, cells):
        parent = rng.randint(j + 1, cells)
        callers[parent].append(j)
    for i in range(2, cells + 1):
        for j in range(1, i):
            if len(callers[i]) < 2 and rng.random() < 0.2:
                callers[i].append(j)
    # enough locals to feed every callee's interface and to pad clauses
    nlocal = [
        max(2 - iface[i - 1], rng.randint(1, 3),
            max((iface[j - 1] for j in callers[i]), default=0))
        for i in range(1, cells + 1)
    ]
    used_rels: set[str] = set()
    cell_blocks: list[list[str]] = []
    for i in range(1, cells + 1):
        ivars = [f"x{q}" for q in range(1, iface[i - 1] + 1)]
        lvars = [f"z{q}" for q in range(1, nlocal[i - 1] + 1)]
        pool = ivars + lvars
        head = f"fcell F{i}"
        if ivars:
            head += " in " + ",".join(ivars)
        block = [head]
        block.extend(f"  var {z}" for z in lvars)
        clauses: list[str] = []
        for _ in range(rng.randint(1, 3)):
            kinds = ["or2", "xor2"] if len(pool) < 3 else list(_RELATION_DEFS)
            kind = rng.choice(kinds)
            arity = 3 if kind.endswith("3") else 2
            args = rng.sample(pool, arity)
            used_rels.add(kind)
            clauses.append(f"  clause {kind}({', '.join(args)})")
        for x in ivars:  # every interface variable participates locally
            if not any(f"({x}," in c or f", {x}" in c or f"({x})" in c for c in clauses):
                other = rng.choice([v for v in pool if v != x])
                used_rels.add("or2")
                clauses.append(f"  clause or2({x}, {other})")
        block.extend(clauses)
        for j in sorted(callers[i]):
            args = rng.sample(lvars, iface[j - 1])
            block.append(f"  call F{j}({', '.join(args)})")
        cell_blocks.append(block)
    lines = [_RELATION_DEFS[r] for r in sorted(used_rels)]
    for block in cell_blocks:
        lines.extend(block)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Periodic formulas
# ---------------------------------------------------------------------------


def rand_fpn_formula(
    variables: int,
    width: int,
    m: int,
    seed: int,
) -> str:
    """A random periodic CNF on ``variables`` static variables whose
    literal offsets are at most ``width``; 1 to 3 clause templates of 2-3
    literals each with random polarities. Deterministic given the
    parameters."""
    if variables < 1:
        raise ValueError("variables must be >= 1")
    if width < 0:
        raise ValueError("width must be >= 0")
    if m < 0:
        raise ValueError("m must be >= 0")
    rng = _rng("randfpncnf", variables, width, m, seed)
    names = [f"x{q}" for q in range(variables)]
    slots = [(v, off) for v in names for off in range(width + 1)]
    lines = [f"fpncnf m={m}"]
    lines.extend(f"var {v}" for v in names)
    for _ in range(rng.randint(1, 3)):
        arity = rng.randint(2, 3)
        chosen = rng.sample(slots, min(arity, len(slots)))
        lits = [
            ("" if rng.random() < 0.7 else "!") + f"{v}@{off}"
            for v, off in chosen
        ]
        lines.append("clause " + " ".join(lits))
    return _checked_fpn_formula("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Plain planar graphs (for the shifting base solver's own corpus)
# ---------------------------------------------------------------------------


def rand_planar_graph(n: int, seed: int) -> ExpandedGraph:
    """A random planar graph on ``n`` vertices: one or two components,
    each a random recursive tree densified with extra edges accepted
    only while the graph stays planar. Deterministic given ``(n, seed)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng("randplanar", n, seed)
    names = [f"n{q}" for q in range(n)]
    parts = [names]
    if n >= 8 and rng.random() < 0.25:
        cut = rng.randint(2, n - 2)
        parts = [names[:cut], names[cut:]]
    g = nx.Graph()
    g.add_nodes_from(names)
    edges: list[tuple[str, str]] = []
    for part in parts:
        for i in range(1, len(part)):
            a, b = part[rng.randrange(i)], part[i]
            g.add_edge(a, b)
            edges.append((a, b))
        extras = rng.randint(0, 2 * len(part))
        for _ in range(extras):
            a, b = rng.sample(part, 2) if len(part) >= 2 else (part[0], part[0])
            if a == b or g.has_edge(a, b):
                continue
            g.add_edge(a, b)
            ok, _ = nx.check_planarity(g, counterexample=False)
            if ok:
                edges.append((a, b))
            else:
                g.remove_edge(a, b)
    return ExpandedGraph(
        vertices=tuple(names),
        edges=tuple(edges),
        origin=f"randplanar_{n}_{seed}",
    )
