"""Exact and shifting solvers applied to small concrete pieces.

The exact solvers are the ground-truth oracles of the test suite and the
default base solvers of the approximation schemes. They are deterministic:
ties are broken toward the lexicographically least solution under the
canonical vertex order (sorted addresses; for lattice-addressed layered
graphs, numeric position then name).

Structure-aware fast paths keep the oracles polynomial wherever
exponential search is unnecessary: forests and max-degree-2 graphs are
solved in linear time, and layered graphs (periodic expansions, whose
edges only join nearby positions) by dynamic programming over per-layer
choice masks. A branch-and-bound core, guarded by a vertex budget
(default 64), handles everything else.

``baker_mis`` / ``baker_vc`` are shifting solvers over breadth-first
layers of a planar graph: every (l+1)-th layer is deleted (respectively,
every l-th layer is shared between adjacent slabs), each slab is solved
exactly, and the best offset wins — guaranteeing at least l/(l+1) of the
maximum independent set (at most (l+1)/l times the minimum vertex cover).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import networkx as nx
import numpy as np

from .errors import BudgetExceededError, SolverInapplicableError
from .expansion import ExpandedGraph, parse_fpn_vertex_name
from .spec_core import SFormula

__all__ = [
    "DEFAULT_EXACT_BUDGET",
    "DEFAULT_MAXSAT_VAR_BUDGET",
    "mis_size",
    "exact_mis",
    "vc_size",
    "exact_vc",
    "exact_maxcut",
    "maxcut_value",
    "MaxSatResult",
    "exact_maxsat",
    "planarity_check",
    "baker_mis",
    "baker_vc",
    "SolveOutcome",
    "SolverContract",
    "get_solver",
    "GraphLike",
]

DEFAULT_EXACT_BUDGET = 64
DEFAULT_MAXSAT_VAR_BUDGET = 22

GraphLike = ExpandedGraph


# ---------------------------------------------------------------------------
# Canonical indexing
# ---------------------------------------------------------------------------


class _Indexed:
    """A graph re-indexed by its canonical (sorted-address) vertex order."""

    def __init__(self, g: ExpandedGraph):
        self.names: list[str] = sorted(g.vertices)
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.names)}
        n = len(self.names)
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for a, b in g.edges:
            ia, ib = self.index[a], self.index[b]
            if ia != ib:
                self.adj[ia].add(ib)
                self.adj[ib].add(ia)

    def components(self, allowed: set[int]) -> list[list[int]]:
        seen: set[int] = set()
        comps: list[list[int]] = []
        for start in sorted(allowed):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                v = stack.pop()
                for u in self.adj[v]:
                    if u in allowed and u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            comps.append(sorted(comp))
        return comps


# ---------------------------------------------------------------------------
# Layered detection (periodic expansions)
# ---------------------------------------------------------------------------


class _Layered:
    """Vertices grouped into position blocks such that every edge joins
    the same or adjacent blocks; independent-set DP runs over per-block
    choice masks. Exact for any graph admitting such a grouping."""

    MAX_BLOCK_BITS = 18

    def __init__(self, blocks: list[list[str]], edges: list[tuple[str, str]]):
        self.blocks = blocks
        self.pos: dict[str, tuple[int, int]] = {}
        for bi, block in enumerate(blocks):
            for vi, v in enumerate(block):
                self.pos[v] = (bi, vi)
        # internal[b]: list of (i, j) bit pairs; cross[b]: pairs between
        # block b-1 (first) and block b (second).
        self.internal: list[list[tuple[int, int]]] = [[] for _ in blocks]
        self.cross: list[list[tuple[int, int]]] = [[] for _ in blocks]
        for a, b in edges:
            (ba, ia), (bb, ib) = self.pos[a], self.pos[b]
            if ba == bb:
                self.internal[ba].append((ia, ib))
            elif ba + 1 == bb:
                self.cross[bb].append((ia, ib))
            elif bb + 1 == ba:
                self.cross[ba].append((ib, ia))
            else:  # pragma: no cover - grouping guarantees adjacency
                raise ValueError("edge spans non-adjacent blocks")

    @classmethod
    def try_build(cls, g: ExpandedGraph) -> "_Layered | None":
        try:
            parsed = {v: parse_fpn_vertex_name(v) for v in g.vertices}
        except ValueError:
            return None
        if not parsed:
            return None
        span = 1
        for a, b in g.edges:
            span = max(span, abs(parsed[a][1] - parsed[b][1]))
        blocks_by_slot: dict[int, list[str]] = {}
        for v in g.vertices:
            blocks_by_slot.setdefault(parsed[v][1] // span, []).append(v)
        lo_slot = min(blocks_by_slot)
        hi_slot = max(blocks_by_slot)
        blocks = [
            sorted(blocks_by_slot.get(i, []), key=lambda v: parsed[v])
            for i in range(lo_slot, hi_slot + 1)
        ]
        if any(len(b) > cls.MAX_BLOCK_BITS for b in blocks):
            return None
        return cls(blocks, list(g.edges))

    def _valid_masks(self, b: int, allowed: int) -> list[int]:
        out = []
        for mask in range(1 << len(self.blocks[b])):
            if mask & ~allowed:
                continue
            if any(mask >> i & 1 and mask >> j & 1 for i, j in self.internal[b]):
                continue
            out.append(mask)
        return out

    def _compatible(self, b: int, prev_mask: int, mask: int) -> bool:
        return not any(
            prev_mask >> i & 1 and mask >> j & 1 for i, j in self.cross[b]
        )

    def mis_solve(self, forbidden: set[str] = frozenset()) -> list[str]:
        """Deterministic maximum independent set avoiding ``forbidden``:
        the lexicographically least optimum under (position, name) order."""
        allowed_bits = [
            sum(
                1 << vi
                for vi, v in enumerate(block)
                if v not in forbidden
            )
            for block in self.blocks
        ]
        nb = len(self.blocks)
        valid = [self._valid_masks(b, allowed_bits[b]) for b in range(nb)]
        # suffix[b][mask] = best total over blocks b.. with block b = mask
        suffix: list[dict[int, int]] = [dict() for _ in range(nb)]
        for b in range(nb - 1, -1, -1):
            for mask in valid[b]:
                gain = bin(mask).count("1")
                if b == nb - 1:
                    suffix[b][mask] = gain
                    continue
                best = max(
                    suffix[b + 1][m2]
                    for m2 in valid[b + 1]
                    if self._compatible(b + 1, mask, m2)
                )
                suffix[b][mask] = gain + best
        chosen: list[str] = []
        prev = 0
        for b in range(nb):
            cands = [
                m for m in valid[b] if b == 0 or self._compatible(b, prev, m)
            ]
            target = max(suffix[b][m] for m in cands)
            best_masks = [m for m in cands if suffix[b][m] == target]
            # Lex-least set: prefer including earlier vertices of the block.
            def mask_key(m: int, b: int = b) -> tuple:
                return tuple(
                    vi for vi in range(len(self.blocks[b])) if not (m >> vi & 1)
                )
            pick = min(best_masks, key=mask_key)
            chosen.extend(
                self.blocks[b][vi]
                for vi in range(len(self.blocks[b]))
                if pick >> vi & 1
            )
            prev = pick
        return chosen

    def mis_size(self, forbidden: set[str] = frozenset()) -> int:
        return len(self.mis_solve(forbidden))


# ---------------------------------------------------------------------------
# Independent set
# ---------------------------------------------------------------------------


class _MisSolver:
    """Independent-set sizes over vertex subsets: leaf stripping, then
    per-component closed forms (max degree <= 2) or branch-and-bound."""

    def __init__(self, idx: _Indexed, budget: int):
        self.idx = idx
        self.budget = budget

    def size(self, allowed: set[int]) -> int:
        total, remaining = self._strip(set(allowed))
        for comp in self.idx.components(remaining):
            total += self._component_size(comp)
        return total

    def _strip(self, allowed: set[int]) -> tuple[int, set[int]]:
        """Greedily take vertices of degree <= 1 (always safe for a
        maximum independent set); returns (count taken, residual)."""
        adj = self.idx.adj
        deg = {v: len(adj[v] & allowed) for v in allowed}
        queue = sorted(v for v, d in deg.items() if d <= 1)
        taken = 0
        while queue:
            next_queue: set[int] = set()
            for v in queue:
                if v not in allowed or deg[v] > 1:
                    continue
                taken += 1
                removed = (adj[v] & allowed) | {v}
                allowed -= removed
                for r in removed:
                    for u in adj[r] & allowed:
                        deg[u] = len(adj[u] & allowed)
                        if deg[u] <= 1:
                            next_queue.add(u)
            queue = sorted(next_queue)
        return taken, allowed

    def _component_size(self, comp: list[int]) -> int:
        adj = self.idx.adj
        comp_set = set(comp)
        degs = [len(adj[v] & comp_set) for v in comp]
        if all(d <= 2 for d in degs):
            # After stripping, a connected max-degree-2 component is a cycle.
            return len(comp) // 2
        if len(comp) > self.budget:
            raise BudgetExceededError(
                "exact independent set (branch and bound core)",
                len(comp),
                self.budget,
            )
        local = {v: i for i, v in enumerate(comp)}
        masks = [0] * len(comp)
        for v in comp:
            for u in adj[v] & comp_set:
                masks[local[v]] |= 1 << local[u]
        return _mis_bb(masks, (1 << len(comp)) - 1, {})


def _mis_bb(masks: list[int], mask: int, memo: dict[int, int]) -> int:
    if mask == 0:
        return 0
    cached = memo.get(mask)
    if cached is not None:
        return cached
    # Find a minimum-degree vertex; take it greedily if degree <= 1,
    # otherwise branch on a maximum-degree vertex.
    best_min = best_max = -1
    dmin, dmax = 10**9, -1
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        d = bin(masks[v] & mask).count("1")
        if d < dmin:
            dmin, best_min = d, v
        if d > dmax:
            dmax, best_max = d, v
    if dmin <= 1:
        res = 1 + _mis_bb(masks, mask & ~(masks[best_min] | 1 << best_min), memo)
    elif dmax <= 2:
        res = _cycle_paths_size(masks, mask)
    else:
        u = best_max
        res = max(
            1 + _mis_bb(masks, mask & ~(masks[u] | 1 << u), memo),
            _mis_bb(masks, mask & ~(1 << u), memo),
        )
    memo[mask] = res
    return res


def _cycle_paths_size(masks: list[int], mask: int) -> int:
    """Independent-set size of a max-degree-2 subgraph (paths + cycles)."""
    total = 0
    todo = mask
    while todo:
        start = (todo & -todo).bit_length() - 1
        comp = 1 << start
        frontier = 1 << start
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= masks[v] & mask & ~comp
            comp |= nxt
            frontier = nxt
        size = bin(comp).count("1")
        # path iff some vertex in comp has degree <= 1
        is_path = False
        c = comp
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            if bin(masks[v] & comp).count("1") <= 1:
                is_path = True
                break
        total += (size + 1) // 2 if is_path else size // 2
        todo &= ~comp
    return total


def _as_graph(g: ExpandedGraph) -> ExpandedGraph:
    if not isinstance(g, ExpandedGraph):
        raise TypeError("expected an ExpandedGraph")
    return g


def mis_size(g: ExpandedGraph, budget: int = DEFAULT_EXACT_BUDGET) -> int:
    """Size of a maximum independent set (value-only fast path)."""
    g = _as_graph(g)
    layered = _Layered.try_build(g)
    if layered is not None:
        return layered.mis_size()
    idx = _Indexed(g)
    return _MisSolver(idx, budget).size(set(range(idx.n)))


def exact_mis(
    g: ExpandedGraph, budget: int = DEFAULT_EXACT_BUDGET
) -> frozenset[str]:
    """A maximum independent set; deterministic (the lexicographically
    least optimum under the canonical vertex order)."""
    g = _as_graph(g)
    layered = _Layered.try_build(g)
    if layered is not None:
        return frozenset(layered.mis_solve())
    idx = _Indexed(g)
    solver = _MisSolver(idx, budget)
    allowed = set(range(idx.n))
    chosen: list[int] = []
    target = solver.size(allowed)
    for v in range(idx.n):
        if v not in allowed:
            continue
        rest = allowed - ({v} | idx.adj[v])
        if 1 + solver.size(rest) == target:
            chosen.append(v)
            allowed = rest
            target -= 1
    return frozenset(idx.names[v] for v in chosen)


# ---------------------------------------------------------------------------
# Vertex cover (independent implementation: edge branching + tree DP)
# ---------------------------------------------------------------------------


class _VcSolver:
    """Minimum-vertex-cover sizes via an edge-branching branch-and-bound
    with forest and cycle fast paths (no reuse of the independent-set
    machinery, so the two oracles cross-check each other)."""

    def __init__(self, idx: _Indexed, budget: int):
        self.idx = idx
        self.budget = budget

    def size(self, allowed: set[int]) -> int:
        total = 0
        live = {v for v in allowed if self.idx.adj[v] & allowed}
        for comp in self.idx.components(live):
            total += self._component_size(comp)
        return total

    def _component_size(self, comp: list[int]) -> int:
        adj = self.idx.adj
        comp_set = set(comp)
        n_edges = sum(len(adj[v] & comp_set) for v in comp) // 2
        if n_edges == len(comp) - 1:
            return self._tree_size(comp, comp_set)
        if all(len(adj[v] & comp_set) <= 2 for v in comp):
            return (len(comp) + 1) // 2  # cycle
        if len(comp) > self.budget:
            raise BudgetExceededError(
                "exact vertex cover (branch and bound core)",
                len(comp),
                self.budget,
            )
        local = {v: i for i, v in enumerate(comp)}
        masks = [0] * len(comp)
        for v in comp:
            for u in adj[v] & comp_set:
                masks[local[v]] |= 1 << local[u]
        return _vc_bb(masks, (1 << len(comp)) - 1, {})

    def _tree_size(self, comp: list[int], comp_set: set[int]) -> int:
        adj = self.idx.adj
        root = comp[0]
        order: list[int] = []
        parent: dict[int, int] = {root: -1}
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            for u in adj[v] & comp_set:
                if u not in parent:
                    parent[u] = v
                    stack.append(u)
        out_dp: dict[int, tuple[int, int]] = {}
        for v in reversed(order):
            children = [u for u in adj[v] & comp_set if parent.get(u) == v]
            not_in = sum(out_dp[c][1] for c in children)
            in_cover = 1 + sum(min(out_dp[c]) for c in children)
            out_dp[v] = (not_in, in_cover)
        return min(out_dp[root])


def _vc_bb(masks: list[int], mask: int, memo: dict[int, int]) -> int:
    # Drop vertices without live edges.
    live = 0
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if masks[v] & mask:
            live |= 1 << v
    mask = live
    if mask == 0:
        return 0
    cached = memo.get(mask)
    if cached is not None:
        return cached
    # Degree-1 rule: take the neighbor of a pendant vertex.
    pend_nbr = -1
    u_branch = -1
    dmax = -1
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        d = bin(masks[v] & mask).count("1")
        if d == 1 and pend_nbr < 0:
            pend_nbr = (masks[v] & mask).bit_length() - 1
        if d > dmax:
            dmax, u_branch = d, v
    if pend_nbr >= 0:
        res = 1 + _vc_bb(masks, mask & ~(1 << pend_nbr), memo)
    else:
        # Every edge needs one endpoint: branch on a max-degree vertex
        # (take it, or take its whole neighborhood).
        nbrs = masks[u_branch] & mask
        res = min(
            1 + _vc_bb(masks, mask & ~(1 << u_branch), memo),
            bin(nbrs).count("1") + _vc_bb(masks, mask & ~nbrs & ~(1 << u_branch), memo),
        )
    memo[mask] = res
    return res


def vc_size(g: ExpandedGraph, budget: int = DEFAULT_EXACT_BUDGET) -> int:
    """Size of a minimum vertex cover (value-only fast path)."""
    g = _as_graph(g)
    layered = _Layered.try_build(g)
    if layered is not None:
        # Complement duality: a minimum cover is the complement of a
        # maximum independent set.
        return len(g.vertices) - layered.mis_size()
    idx = _Indexed(g)
    return _VcSolver(idx, budget).size(set(range(idx.n)))


def exact_vc(g: ExpandedGraph, budget: int = DEFAULT_EXACT_BUDGET) -> frozenset[str]:
    """A minimum vertex cover; deterministic (greedy lexicographic
    forcing over the canonical vertex order)."""
    g = _as_graph(g)
    layered = _Layered.try_build(g)
    if layered is not None:
        return frozenset(g.vertex_set - frozenset(layered.mis_solve()))
    idx = _Indexed(g)
    solver = _VcSolver(idx, budget)
    allowed = set(range(idx.n))
    cover: set[int] = set()
    for v in range(idx.n):
        if v not in allowed:
            continue
        if not (idx.adj[v] & allowed):
            allowed.discard(v)
            continue
        cur = solver.size(allowed)
        rest = allowed - {v}
        if 1 + solver.size(rest) == cur:
            cover.add(v)
            allowed = rest
        else:
            # No minimum cover of the residual contains v, so every one
            # contains all of v's residual neighbors.
            nbrs = idx.adj[v] & allowed
            cover.update(nbrs)
            allowed -= nbrs | {v}
    return frozenset(idx.names[v] for v in cover)


# ---------------------------------------------------------------------------
# Max cut
# ---------------------------------------------------------------------------


def exact_maxcut(
    g: ExpandedGraph, budget: int = DEFAULT_EXACT_BUDGET
) -> tuple[frozenset[str], int]:
    """A maximum cut as (one side of the bipartition, cut value).

    Deterministic: per connected component the canonically least vertex
    sits on the excluded side; bipartite components cut all their edges;
    others are solved by branch-and-bound (first optimum in
    false-before-true assignment order).
    """
    g = _as_graph(g)
    idx = _Indexed(g)
    side_true: set[int] = set()
    value = 0
    for comp in idx.components(set(range(idx.n))):
        comp_set = set(comp)
        color: dict[int, bool] = {comp[0]: False}
        stack = [comp[0]]
        bipartite = True
        while stack:
            v = stack.pop()
            for u in idx.adj[v] & comp_set:
                if u not in color:
                    color[u] = not color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    bipartite = False
        n_edges = sum(len(idx.adj[v] & comp_set) for v in comp) // 2
        if bipartite:
            side_true.update(v for v in comp if color[v])
            value += n_edges
            continue
        if len(comp) > budget:
            raise BudgetExceededError(
                "exact max cut (branch and bound core)", len(comp), budget
            )
        best_val, best_assign = _maxcut_bb(idx, comp)
        side_true.update(v for v in comp if best_assign[v])
        value += best_val
    return frozenset(idx.names[v] for v in side_true), value


def _maxcut_bb(idx: _Indexed, comp: list[int]) -> tuple[int, dict[int, bool]]:
    order = comp  # canonical order
    pos = {v: i for i, v in enumerate(order)}
    comp_set = set(comp)
    # suffix_edges[i]: edges whose later endpoint sits at position >= i;
    # an upper bound on what positions i.. can still add to the cut.
    suffix_edges = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        v = order[i]
        ending_here = sum(1 for u in idx.adj[v] & comp_set if pos[u] < i)
        suffix_edges[i] = suffix_edges[i + 1] + ending_here
    assign: dict[int, bool] = {}
    best = {"val": -1, "assign": {}}

    def dfs(i: int, cut: int) -> None:
        if cut + suffix_edges[i] <= best["val"]:
            return
        if i == len(order):
            if cut > best["val"]:
                best["val"] = cut
                best["assign"] = dict(assign)
            return
        v = order[i]
        choices = (False,) if i == 0 else (False, True)
        for side in choices:
            gained = sum(
                1
                for u in idx.adj[v] & comp_set
                if u in assign and assign[u] != side
            )
            assign[v] = side
            dfs(i + 1, cut + gained)
            del assign[v]

    dfs(0, 0)
    return best["val"], best["assign"]


def maxcut_value(g: ExpandedGraph, budget: int = DEFAULT_EXACT_BUDGET) -> int:
    return exact_maxcut(g, budget)[1]


# ---------------------------------------------------------------------------
# MAX-SAT
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaxSatResult:
    assignment: Mapping[str, bool]
    satisfied: int


def exact_maxsat(
    formula: SFormula, var_budget: int = DEFAULT_MAXSAT_VAR_BUDGET
) -> MaxSatResult:
    """Maximum simultaneously satisfiable clause count by vectorized
    enumeration over all assignments of the occurring variables
    (non-occurring ones are reported false); deterministic (first
    optimum in all-false-first order)."""
    if not formula.clauses:
        return MaxSatResult({v: False for v in formula.variables}, 0)
    used = {a for _, args in formula.clauses for a in args}
    occurring = [v for v in formula.variables if v in used]
    n = len(occurring)
    if n > var_budget:
        raise BudgetExceededError("assignment enumeration", n, var_budget)
    var_index = {v: i for i, v in enumerate(occurring)}
    rels = formula.relation_map()
    idx = np.arange(1 << n, dtype=np.int64)
    sat = np.zeros(1 << n, dtype=np.int32)
    for rel_name, args in formula.clauses:
        rel = rels[rel_name]
        table = np.zeros(1 << rel.arity, dtype=np.int32)
        for tup in rel.satisfying_tuples:
            key = sum(bit << i for i, bit in enumerate(tup))
            table[key] = 1
        local = np.zeros(1 << n, dtype=np.int64)
        for i, arg in enumerate(args):
            local |= ((idx >> var_index[arg]) & 1) << i
        sat += table[local]
    best = int(np.argmax(sat))
    assignment = {v: False for v in formula.variables}
    for v in occurring:
        assignment[v] = bool((best >> var_index[v]) & 1)
    return MaxSatResult(assignment, int(sat[best]))


# ---------------------------------------------------------------------------
# Planarity
# ---------------------------------------------------------------------------


def planarity_check(g: ExpandedGraph) -> bool:
    """True iff the graph is planar: Euler-bound fast reject
    (|E| > 3|V| - 6), then a standard combinatorial planarity test."""
    g = _as_graph(g)
    n, m = len(g.vertices), len(g.edges)
    if n >= 3 and m > 3 * n - 6:
        return False
    if n < 5:
        return True
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.edges)
    ok, _ = nx.check_planarity(nxg, counterexample=False)
    return bool(ok)


# ---------------------------------------------------------------------------
# Shifting solvers over breadth-first layers
# ---------------------------------------------------------------------------


def _bfs_layers(idx: _Indexed, comp: list[int]) -> list[list[int]]:
    comp_set = set(comp)
    layers: list[list[int]] = [[comp[0]]]
    seen = {comp[0]}
    while True:
        nxt: set[int] = set()
        for v in layers[-1]:
            nxt |= idx.adj[v] & comp_set
        nxt -= seen
        if not nxt:
            break
        layer = sorted(nxt)
        layers.append(layer)
        seen |= nxt
    return layers


def _induced(g: ExpandedGraph, idx: _Indexed, verts: Iterable[int]) -> ExpandedGraph:
    names = sorted(idx.names[v] for v in verts)
    keep = set(names)
    return ExpandedGraph(
        vertices=tuple(names),
        edges=tuple((a, b) for a, b in g.edges if a in keep and b in keep),
        origin="slab",
    )


def baker_mis(
    g: ExpandedGraph, l: int, budget: int = DEFAULT_EXACT_BUDGET
) -> frozenset[str]:
    """Shifting independent-set solver for planar graphs: per component,
    delete every (l+1)-th breadth-first layer at the best of l+1 offsets,
    solving each remaining slab of <= l consecutive layers exactly.
    Returns an independent set of size >= (l/(l+1)) times the optimum."""
    if l < 1:
        raise ValueError("l must be >= 1")
    g = _as_graph(g)
    idx = _Indexed(g)
    result: set[str] = set()
    for comp in idx.components(set(range(idx.n))):
        layers = _bfs_layers(idx, comp)
        best_set: frozenset[str] | None = None
        for r in range(l + 1):
            chosen: set[str] = set()
            slab: list[int] = []
            for d in range(len(layers) + 1):
                if d < len(layers) and d % (l + 1) != r:
                    slab.extend(layers[d])
                    continue
                if slab:
                    chosen |= exact_mis(_induced(g, idx, slab), budget)
                    slab = []
            if best_set is None or len(chosen) > len(best_set):
                best_set = frozenset(chosen)
        result |= best_set or frozenset()
    return frozenset(result)


def baker_vc(
    g: ExpandedGraph, l: int, budget: int = DEFAULT_EXACT_BUDGET
) -> frozenset[str]:
    """Shifting vertex-cover solver: slabs of l+1 consecutive
    breadth-first layers overlapping on every l-th layer; each slab is
    covered exactly and the union (at the best of l offsets) is returned.
    Every edge lies inside some slab, so the union is a cover, of size
    <= ((l+1)/l) times the optimum."""
    if l < 1:
        raise ValueError("l must be >= 1")
    g = _as_graph(g)
    idx = _Indexed(g)
    result: set[str] = set()
    for comp in idx.components(set(range(idx.n))):
        layers = _bfs_layers(idx, comp)
        n_layers = len(layers)
        best_set: frozenset[str] | None = None
        for r in range(l):
            boundaries = [d for d in range(n_layers) if d % l == r]
            segments: list[tuple[int, int]] = []
            prev = 0
            for b in boundaries:
                segments.append((prev, b))
                prev = b
            segments.append((prev, n_layers - 1))
            cover: set[str] = set()
            for lo, hi in segments:
                if lo > hi:
                    continue
                verts = [v for d in range(lo, hi + 1) for v in layers[d]]
                if not verts:
                    continue
                cover |= exact_vc(_induced(g, idx, verts), budget)
            if best_set is None or len(cover) < len(best_set):
                best_set = frozenset(cover)
        result |= best_set or frozenset()
    return frozenset(result)


# ---------------------------------------------------------------------------
# Solver contracts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolveOutcome:
    """Uniform solver result: the objective value plus the witness
    (chosen vertex set, cover, true-side of a cut, or assignment)."""

    value: int
    payload: object


@dataclass(frozen=True)
class SolverContract:
    """A pluggable base solver with a declared worst-case ratio.

    For maximization problems the returned value is >= OPT/rho; for
    minimization it is <= rho*OPT. ``applicable`` reports whether the
    solver may be used on a given input (e.g. planar-only solvers);
    identical inputs always produce identical outputs.
    """

    name: str
    problem: str
    rho: Fraction
    deterministic: bool
    applicable: Callable[[object], tuple[bool, str]]
    solve: Callable[[object, int], SolveOutcome]


def _always(_x: object) -> tuple[bool, str]:
    return True, ""


def _needs_planar(x: object) -> tuple[bool, str]:
    if planarity_check(x):  # type: ignore[arg-type]
        return True, ""
    return False, "input graph is not planar"


def get_solver(base: str, problem: str, l: int | None = None) -> SolverContract:
    """Look up a base solver by family ("exact" or "baker") and problem
    ("mis", "vc", "maxcut", "maxsat"). The shifting family needs ``l``."""
    problem = problem.lower()
    if base == "exact":
        if problem == "mis":
            return SolverContract(
                "exact", "mis", Fraction(1), True, _always,
                lambda g, b: SolveOutcome(len(s := exact_mis(g, b)), s),
            )
        if problem == "vc":
            return SolverContract(
                "exact", "vc", Fraction(1), True, _always,
                lambda g, b: SolveOutcome(len(s := exact_vc(g, b)), s),
            )
        if problem == "maxcut":
            return SolverContract(
                "exact", "maxcut", Fraction(1), True, _always,
                lambda g, b: SolveOutcome(
                    (r := exact_maxcut(g, b))[1], r[0]
                ),
            )
        if problem == "maxsat":
            return SolverContract(
                "exact", "maxsat", Fraction(1), True, _always,
                lambda f, b: SolveOutcome(
                    (r := exact_maxsat(f, b)).satisfied, r.assignment
                ),
            )
        raise ValueError(f"unknown problem {problem!r}")
    if base == "baker":
        if l is None or l < 1:
            raise ValueError("the shifting solver family needs l >= 1")
        if problem == "mis":
            return SolverContract(
                f"baker(l={l})", "mis", Fraction(l + 1, l), True, _needs_planar,
                lambda g, b, l=l: SolveOutcome(len(s := baker_mis(g, l, b)), s),
            )
        if problem == "vc":
            return SolverContract(
                f"baker(l={l})", "vc", Fraction(l + 1, l), True, _needs_planar,
                lambda g, b, l=l: SolveOutcome(len(s := baker_vc(g, l, b)), s),
            )
        raise ValueError(
            f"the shifting solver family supports mis and vc, not {problem!r}"
        )
    raise ValueError(f"unknown solver family {base!r}")
