"""A tour of hierarchical graph specifications.

Run with:  python3 demos/hierarchical_tour.py

A hierarchical specification describes a graph as a tower of cells, each
of which contributes a few explicit vertices and delegates the rest to
lower cells through pin bindings.  The expansion can be exponentially
larger than its description — which is exactly why the solvers here never
build it unless you ask them to.
"""

from __future__ import annotations

from fractions import Fraction

from sgat import (
    bintree_spec,
    count_expansion,
    emit_solution_lspec,
    exact_mis,
    expand,
    h_mis,
    parse_document,
    query,
    serialize_lspec,
    solution_size,
    stream_solution,
    tri_spec,
)


def headline(text: str) -> None:
    print(f"\n=== {text} ===")


headline("A triangle described in two cells")
print(tri_spec())
_, tri = parse_document(tri_spec())
g = expand(tri)
print(f"expansion: {len(g.vertices)} vertices, {len(g.edges)} edges")
print("vertices are *addresses* — paths through the call tree:", sorted(g.vertices))

headline("A complete binary tree of height 40")
_, bt40 = parse_document(bintree_spec(40))
counts = count_expansion(bt40)
print(f"cells in the description: {len(bt40.cells)}")
print(f"vertices in the expansion: {counts.vertices[counts.top]:,}")
print("(counted by recurrence — materializing this graph is impossible)")

headline("An independent set without expanding the tree")
sol = h_mis(bt40, l=2)
size = solution_size(sol)
opt_bound = Fraction(4, 9)
print(f"scheme value: {size:,} (guarantee {sol.guarantee} of the optimum)")
print(f"best deletion offset: {sol.offset} of 3")

deep = "/".join(["L"] * 39 + ["r"])
print(f"query('r')               -> {query(sol, 'r')}")
print(f"query('L/L/…/L/r', d=39) -> {query(sol, deep)}")

headline("Streaming the first few members")
shown: list[str] = []
stream_solution(sol, shown.append, cap=8)
for addr in shown:
    print(" ", addr)
print("  …")

headline("Re-emitting a solution as a specification of its own")
_, bt8 = parse_document(bintree_spec(8))
small = h_mis(bt8, l=2)
mirror = emit_solution_lspec(small)
print(f"solution of {solution_size(small)} vertices re-encoded in "
      f"{len(mirror.cells)} cells:")
print(serialize_lspec(mirror))

headline("Sanity on a materializable instance")
g8 = expand(bt8)
opt = len(exact_mis(g8, budget=300))
print(f"height 8: scheme {solution_size(small)} vs optimum {opt} "
      f"(ratio {solution_size(small) / opt:.3f}, promised ≥ {float(opt_bound):.3f})")
