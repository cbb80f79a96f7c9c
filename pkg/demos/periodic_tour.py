"""A tour of finite periodic specifications.

Run with:  python3 demos/periodic_tour.py

A periodic specification repeats one static block along a lattice of
positions 0..m, wiring copies together by bounded offsets.  Solving time
depends on the block and the accuracy knob — not on m.
"""

from __future__ import annotations

import time

from sgat import (
    exact_mis,
    expand_fpn,
    fpn_ladder,
    fpn_mis,
    fpn_path,
    fpn_slabs,
    fpn_vc,
    parse_document,
    query,
    solution_size,
    verify_solution,
)


def headline(text: str) -> None:
    print(f"\n=== {text} ===")


headline("The path, written once, repeated a billion times")
print(fpn_path(10**9))
_, huge = parse_document(fpn_path(10**9))

t0 = time.perf_counter()
sol = fpn_mis(huge, l=3)
elapsed = time.perf_counter() - t0
print(f"independent set of {solution_size(sol):,} vertices "
      f"in {elapsed * 1000:.2f} ms (guarantee {sol.guarantee})")

headline("Position queries at any coordinate")
for addr in ("v@0", "v@1", "v@500000000", "v@999999999"):
    print(f"  query({addr}) -> {query(sol, addr)}")

headline("Lattice length does not matter")
for m in (10**3, 10**6, 10**9):
    _, spec = parse_document(fpn_path(m))
    t0 = time.perf_counter()
    fpn_mis(spec, l=3)
    print(f"  m = {m:>13,}: {(time.perf_counter() - t0) * 1000:6.2f} ms")

headline("How the lattice is sliced")
dec = fpn_slabs(9, 3, 3, 1)
print("m=9, offset 3, l=3:")
print(f"  head   {dec.head.lo}..{dec.head.hi}")
for j in range(dec.middle.count):
    iv = dec.middle.interval(j)
    print(f"  middle {iv.lo}..{iv.hi}")
print(f"  tail   {dec.tail.lo}..{dec.tail.hi}")
print("positions 3 and 7 are deleted; every slab is solved independently")

headline("A ladder, and the overlap-style vertex cover")
_, ladder = parse_document(fpn_ladder(13))
mis = fpn_mis(ladder, l=2)
vc = fpn_vc(ladder, l=2)
g = expand_fpn(ladder)
print(f"ladder with {len(g.vertices)} vertices:")
print(f"  independent set {mis.total_value} "
      f"(optimum {len(exact_mis(g, budget=100))})")
print(f"  vertex cover    {vc.total_value} "
      f"(covers every edge: {verify_solution(vc).ok})")
