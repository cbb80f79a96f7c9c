"""A tour of hierarchical and periodic Boolean formulas.

Run with:  python3 demos/formula_tour.py

Formula cells mirror graph cells: each contributes local variables and
clauses, and calls lower cells with some of its variables as arguments.
The clause-deletion scheme keeps whole bands of the call tree and counts
satisfied clauses without flattening everything.
"""

from __future__ import annotations

from sgat import (
    exact_maxsat,
    example4_lformula,
    expand_formula,
    expand_fpn_formula,
    fpn_maxsat,
    formula_pieces,
    h_maxsat,
    parse_document,
    rand_fpn_formula,
    serialize_sformula,
    stream_solution,
)


def headline(text: str) -> None:
    print(f"\n=== {text} ===")


headline("A three-cell formula")
print(example4_lformula())
_, ex4 = parse_document(example4_lformula())

headline("Its flat expansion")
flat = expand_formula(ex4)
print(serialize_sformula(flat))
print(f"{len(flat.variables)} variables, {len(flat.clauses)} clauses, "
      f"optimum {exact_maxsat(flat).satisfied} (fully satisfiable)")

headline("Clause-band accounting")
l = 4
seen: set[int] = set()
for iteration in range(0, 2 * l + 1, 2):
    p = formula_pieces(ex4, l, iteration)
    if p.offset_j in seen:
        continue
    seen.add(p.offset_j)
    print(f"  l={l} offset j={p.offset_j}: kept {p.kept_clauses}, "
          f"deleted {p.deleted_clauses}")

headline("Approximate clause satisfaction")
for l in (3, 4, 9):
    sol = h_maxsat(ex4, l=l)
    print(f"  l={l}: value {sol.total_value} of 7, guarantee {sol.guarantee}")

truthy: list[str] = []
stream_solution(h_maxsat(ex4, l=3), truthy.append)
print("variables set true at l=3:", ", ".join(sorted(truthy)))

headline("A periodic clause system")
text = rand_fpn_formula(2, 2, 23, 5)
print(text)
_, periodic = parse_document(text)
flatp = expand_fpn_formula(periodic)
opt = exact_maxsat(flatp, var_budget=50).satisfied
for l in (2, 3, 5):
    sol = fpn_maxsat(periodic, l=l)
    print(f"  l={l}: value {sol.total_value} of {opt} expanded clauses "
          f"(guarantee {sol.guarantee})")
