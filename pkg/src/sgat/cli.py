"""Command-line surface: validate, expand, stats, pieces, approx, query,
stream, emit, oracle, verify, and gen subcommands over the five document
kinds.

Exit codes: 0 success; 1 usage error; 2 validation/parse failure
(including base-solver applicability); 3 budget exceeded; 4 guarantee
check failure. Diagnostics go to standard error; all numeric output is
full decimal (never scientific notation), and ratios print as exact
fractions. No subcommand ever writes to its input files.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import click

from .approx_schemes import (
    ApproxSolution,
    epsilon_to_l,
    fpn_maxcut,
    fpn_maxsat,
    fpn_mis,
    fpn_vc,
    h_maxcut,
    h_maxsat,
    h_mis,
    h_vc,
)
from .base_solvers import (
    DEFAULT_EXACT_BUDGET,
    exact_maxcut,
    exact_maxsat,
    exact_mis,
    exact_vc,
)
from .errors import (
    BudgetExceededError,
    ConstraintError,
    GuaranteeFailureError,
    SolverInapplicableError,
)
from .expansion import (
    DEFAULT_EXPAND_BUDGET,
    DepthCounter,
    FormulaDepthCounter,
    count_expansion,
    count_formula_expansion,
    count_fpn_formula_clauses,
    expand,
    expand_formula,
    expand_fpn,
    expand_fpn_formula,
    formula_level_restriction,
    fpn_formula_narrowness,
    fpn_narrowness,
    level_restriction,
    serialize_expanded_graph,
)
from .generators import (
    GenerationError,
    bintree_spec,
    chain_triangles_spec,
    example4_lformula,
    fpn_ladder,
    fpn_path,
    rand_1level_lformula,
    rand_1level_lspec,
    rand_fpn,
    rand_fpn_formula,
    tri_spec,
)
from .partial_expansion import (
    SlabDecomposition,
    formula_pieces,
    fpn_formula_pieces,
    fpn_interval_graph,
    fpn_slabs,
    partial_expand,
)
from .solution_repr import (
    emit_solution_lspec,
    query as solution_query,
    stream_solution,
    verify_solution,
)
from .spec_core import (
    ParseError,
    ValidationReport,
    parse_document,
    serialize_lspec,
    serialize_sformula,
    validate_document,
)

__all__ = ["main", "console_main", "cli"]

DEFAULT_MAXSAT_ENUM_BUDGET = 22

_EPSILON_KIND = {
    "mis": "maximize-squared",
    "vc": "minimize-squared",
    "maxcut": "maximize-linear",
    "maxsat": "maxsat",
}

_SCHEMES: dict[tuple[str, str], Callable[..., ApproxSolution]] = {
    ("lspec", "mis"): h_mis,
    ("lspec", "vc"): h_vc,
    ("lspec", "maxcut"): h_maxcut,
    ("lformula", "maxsat"): h_maxsat,
    ("fpn", "mis"): fpn_mis,
    ("fpn", "vc"): fpn_vc,
    ("fpn", "maxcut"): fpn_maxcut,
    ("fpncnf", "maxsat"): fpn_maxsat,
}


class _ValidationFailed(Exception):
    """An input document violated its grammar's invariants."""

    def __init__(self, path: str, report: ValidationReport):
        self.path = path
        self.report = report
        super().__init__(f"{path}: {len(report.violations)} violation(s)")


def _load(path: str) -> tuple[str, object, str]:
    """Read, parse, and validate a document; returns (kind, object, text)."""
    text = Path(path).read_text(encoding="utf-8")
    kind, obj = parse_document(text)
    report = validate_document(kind, obj)
    if not report.ok:
        raise _ValidationFailed(path, report)
    return kind, obj, text


def _echo_json(payload: object) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _ratio(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# Shared options
# ---------------------------------------------------------------------------


def _accuracy_options(fn):
    fn = click.option("--l", "l", type=int, default=None,
                      help="Shifting parameter (mutually exclusive with --epsilon).")(fn)
    fn = click.option("--epsilon", type=float, default=None,
                      help="Target error bound; mapped to the smallest adequate l.")(fn)
    return fn


def _scheme_options(fn):
    fn = _accuracy_options(fn)
    fn = click.option("--k", type=int, default=None,
                      help="Deletion band width (default: measured from the input).")(fn)
    fn = click.option("--base", type=click.Choice(["exact", "baker"]), default="exact",
                      help="Base solver for pieces.")(fn)
    fn = click.option("--budget-exact", type=int, default=None,
                      help="Exact-solver size budget (default 64; clause "
                           "satisfaction defaults to its enumeration budget).")(fn)
    fn = click.option("--budget-piece", type=int, default=20000,
                      help="Largest piece the schemes may materialize.")(fn)
    fn = click.option("--budget-expand", type=int, default=DEFAULT_EXPAND_BUDGET,
                      help="Largest full expansion any step may materialize.")(fn)
    fn = click.option("--threads", type=int, default=1,
                      help="Accepted for interface stability; execution is "
                           "sequential and outputs are identical for any value.")(fn)
    fn = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")(fn)
    return fn


def _resolve_accuracy(problem: str, l: int | None, epsilon: float | None) -> tuple[int, bool]:
    """The effective l, plus whether it came from an epsilon mapping."""
    if l is not None and epsilon is not None:
        raise click.UsageError("give exactly one of --l / --epsilon")
    if l is None and epsilon is None:
        raise click.UsageError("one of --l / --epsilon is required")
    if l is not None:
        if l < 1:
            raise click.UsageError("--l must be >= 1")
        return l, False
    return epsilon_to_l(epsilon, _EPSILON_KIND[problem]), True


def _run_scheme(
    problem: str,
    path: str,
    l: int | None,
    epsilon: float | None,
    k: int | None,
    base: str,
    budget_exact: int | None,
    budget_piece: int,
    budget_expand: int,
) -> tuple[ApproxSolution, str, object, bool]:
    kind, obj, _ = _load(path)
    scheme = _SCHEMES.get((kind, problem))
    if scheme is None:
        raise click.UsageError(f"{problem} is not defined for {kind} documents")
    eff_l, from_eps = _resolve_accuracy(problem, l, epsilon)
    kwargs: dict[str, object] = {
        "l": eff_l,
        "piece_budget": budget_piece,
        "expand_budget": budget_expand,
    }
    if problem == "maxsat":
        if k is not None:
            raise click.UsageError("--k does not apply to clause satisfaction")
        if base != "exact":
            raise click.UsageError("clause satisfaction has no alternative base solver")
        kwargs["exact_budget"] = (
            DEFAULT_MAXSAT_ENUM_BUDGET if budget_exact is None else budget_exact
        )
    else:
        kwargs["k"] = k
        kwargs["base"] = base
        kwargs["exact_budget"] = (
            DEFAULT_EXACT_BUDGET if budget_exact is None else budget_exact
        )
    return scheme(obj, **kwargs), kind, obj, from_eps


def _solution_json(sol: ApproxSolution) -> dict[str, object]:
    return {
        "problem": sol.problem,
        "source": sol.source_kind,
        "l": sol.l,
        "offset": sol.offset,
        "value": sol.total_value,
        "guarantee": _ratio(sol.guarantee),
        "base_ratio": _ratio(sol.rho),
        "mode": sol.mode,
        "stats": {k: (str(v) if isinstance(v, tuple) else v) for k, v in sol.stats.items()},
    }


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group()
def cli() -> None:
    """Succinct graph/formula specifications and their approximation schemes."""


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def validate(file: str, as_json: bool) -> None:
    """Parse FILE and check every structural invariant of its format."""
    text = Path(file).read_text(encoding="utf-8")
    kind, obj = parse_document(text)
    report = validate_document(kind, obj)
    if as_json:
        _echo_json({
            "file": file,
            "format": kind,
            "ok": report.ok,
            "violations": [
                {"code": v.code, "message": v.message, "location": v.location}
                for v in report.violations
            ],
        })
    if not report.ok:
        raise _ValidationFailed(file, report)
    if not as_json:
        click.echo(f"ok format={kind}")


@cli.command(name="expand")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--budget-expand", type=int, default=DEFAULT_EXPAND_BUDGET)
@click.option("--json", "as_json", is_flag=True)
def expand_cmd(file: str, budget_expand: int, as_json: bool) -> None:
    """Materialize the full expansion of FILE (budget-guarded)."""
    kind, obj, _ = _load(file)
    if kind == "lspec":
        g = expand(obj, budget_expand)
    elif kind == "fpn":
        g = expand_fpn(obj, budget_expand)
    elif kind == "lformula":
        f = expand_formula(obj, budget_expand)
        _emit_formula(f, as_json)
        return
    elif kind == "fpncnf":
        f = expand_fpn_formula(obj, budget_expand)
        _emit_formula(f, as_json)
        return
    else:  # sformula: already flat
        _emit_formula(obj, as_json)
        return
    if as_json:
        _echo_json({"vertices": list(g.vertices),
                    "edges": [[a, b] for a, b in g.edges]})
    else:
        click.echo(serialize_expanded_graph(g), nl=False)


def _emit_formula(f, as_json: bool) -> None:
    if as_json:
        _echo_json({
            "variables": list(f.variables),
            "clauses": [[rel, list(args)] for rel, args in f.clauses],
        })
    else:
        click.echo(serialize_sformula(f), nl=False)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def stats(file: str, as_json: bool) -> None:
    """Exact size counts and structural measures, without expanding."""
    kind, obj, _ = _load(file)
    info: dict[str, object] = {"format": kind}
    if kind == "lspec":
        counts = count_expansion(obj)
        top = obj.top.name
        info.update(
            cells=len(obj.cells),
            top=top,
            depth=DepthCounter(obj).max_depth(top),
            level_restriction=level_restriction(obj),
            expanded_vertices=counts.vertices[top],
            expanded_edges=counts.edges[top],
        )
    elif kind == "fpn":
        edge_count = sum(
            max(0, obj.m + 1 - off) for _, _, off in obj.edges
        )
        info.update(
            m=obj.m,
            static_vertices=len(obj.vertices),
            static_edges=len(obj.edges),
            narrowness=fpn_narrowness(obj),
            expanded_vertices=(obj.m + 1) * len(obj.vertices),
            expanded_edges=edge_count,
        )
    elif kind == "lformula":
        var_counts, clause_counts = count_formula_expansion(obj)
        top = obj.top.name
        info.update(
            fcells=len(obj.fcells),
            relations=len(obj.relations),
            top=top,
            depth=FormulaDepthCounter(obj).max_depth(top),
            level_restriction=formula_level_restriction(obj),
            expanded_variables=var_counts[top],
            expanded_clauses=clause_counts[top],
        )
    elif kind == "fpncnf":
        info.update(
            m=obj.m,
            static_variables=len(obj.variables),
            clause_templates=len(obj.clauses),
            narrowness=fpn_formula_narrowness(obj),
            expanded_variables=(obj.m + 1) * len(obj.variables),
            expanded_clauses=count_fpn_formula_clauses(obj),
        )
    else:  # sformula
        info.update(
            variables=len(obj.variables),
            clauses=len(obj.clauses),
            relations=len(obj.relations),
        )
    if as_json:
        _echo_json(info)
    else:
        for key, value in info.items():
            click.echo(f"{key}={value}")


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@_accuracy_options
@click.option("--k", type=int, default=None,
              help="Band width (default: measured).")
@click.option("--budget-expand", type=int, default=DEFAULT_EXPAND_BUDGET)
@click.option("--json", "as_json", is_flag=True)
def pieces(file: str, l: int | None, epsilon: float | None, k: int | None,
           budget_expand: int, as_json: bool) -> None:
    """Dump the deletion decomposition's pieces for FILE."""
    kind, obj, _ = _load(file)
    eff_l, _ = _resolve_accuracy("mis" if kind in ("lspec", "fpn") else "maxsat",
                                 l, epsilon)
    if kind == "lspec":
        _pieces_lspec(obj, eff_l, k, budget_expand, as_json)
    elif kind == "fpn":
        _pieces_fpn(obj, eff_l, k, budget_expand, as_json)
    elif kind == "lformula":
        _pieces_lformula(obj, eff_l, budget_expand, as_json)
    elif kind == "fpncnf":
        _pieces_fpncnf(obj, eff_l, as_json)
    else:
        raise click.UsageError("a flat formula has no deletion decomposition")


def _pieces_lspec(spec, l: int, k: int | None, budget: int, as_json: bool) -> None:
    measured = max(1, level_restriction(spec))
    if k is None:
        k = measured
    elif k < measured:
        raise ConstraintError(
            f"band width k={k} is narrower than the measured width {measured}"
        )
    out = []
    for cell in spec.cells:
        pe = partial_expand(spec, cell.name, k * l, "delete", k, budget)
        out.append({
            "cell": cell.name,
            "kept_depths": f"0..{k * l - 1}",
            "deleted_band": f"{k * l}..{k * l + k - 1}",
            "deleted_vertices": pe.deleted_vertex_count,
            "frontier": pe.frontier_map(),
            "vertices": list(pe.graph.vertices),
            "edges": [[a, b] for a, b in pe.graph.edges],
        })
    if as_json:
        _echo_json({"l": l, "k": k, "pieces": out})
        return
    click.echo(f"l={l} k={k}")
    for p in out:
        click.echo(f"piece cell={p['cell']} kept={p['kept_depths']} "
                   f"deleted={p['deleted_band']} deleted_vertices={p['deleted_vertices']}")
        for v in p["vertices"]:
            click.echo(f"v {v}")
        for a, b in p["edges"]:
            click.echo(f"e {a} {b}")
        for tname, n in p["frontier"].items():
            click.echo(f"frontier {tname} x{n}")


def _slab_entries(spec, d: SlabDecomposition, budget: int) -> list[dict[str, object]]:
    entries: list[dict[str, object]] = []

    def entry(role: str, iv, copies: int) -> None:
        g = fpn_interval_graph(spec, iv.lo, iv.hi, budget)
        entries.append({
            "role": role,
            "interval": f"{iv.lo}..{iv.hi}",
            "copies": copies,
            "vertices": list(g.vertices),
            "edges": [[a, b] for a, b in g.edges],
        })

    if d.head:
        entry("head", d.head, 1)
    if d.middle and d.middle.count:
        entry("middle", d.middle.interval(0), d.middle.count)
    if d.tail:
        entry("tail", d.tail, 1)
    return entries


def _pieces_fpn(spec, l: int, k: int | None, budget: int, as_json: bool) -> None:
    measured = max(1, fpn_narrowness(spec))
    if k is None:
        k = measured
    elif k < measured:
        raise ConstraintError(
            f"band width k={k} is narrower than the measured width {measured}"
        )
    offsets = [
        {"offset": i,
         "slabs": _slab_entries(spec, fpn_slabs(spec.m, i, l, k), budget)}
        for i in range(l + 1)
    ]
    if as_json:
        _echo_json({"l": l, "k": k, "offsets": offsets})
        return
    click.echo(f"l={l} k={k}")
    for o in offsets:
        for s in o["slabs"]:
            click.echo(f"slab offset={o['offset']} role={s['role']} "
                       f"interval={s['interval']} copies={s['copies']}")
            for v in s["vertices"]:
                click.echo(f"v {v}")
            for a, b in s["edges"]:
                click.echo(f"e {a} {b}")


def _pieces_lformula(formula, l: int, budget: int, as_json: bool) -> None:
    out = []
    for i in range(0, 2 * l + 1, 2):
        fp = formula_pieces(formula, l, i, budget)
        out.append({
            "iteration": i,
            "offset_j": fp.offset_j,
            "kept_clauses": fp.kept_clauses,
            "deleted_clauses": fp.deleted_clauses,
            "head": serialize_sformula(fp.head),
            "pieces": [
                {"cell": name, "copies": copies, "formula": serialize_sformula(piece)}
                for name, piece, copies in fp.pieces
            ],
        })
    if as_json:
        _echo_json({"l": l, "iterations": out})
        return
    click.echo(f"l={l}")
    for o in out:
        click.echo(f"iteration i={o['iteration']} offset_j={o['offset_j']} "
                   f"kept={o['kept_clauses']} deleted={o['deleted_clauses']}")
        click.echo("head:")
        click.echo(o["head"], nl=False)
        for p in o["pieces"]:
            click.echo(f"piece cell={p['cell']} copies={p['copies']}")
            click.echo(p["formula"], nl=False)


def _pieces_fpncnf(formula, l: int, as_json: bool) -> None:
    out = []
    for off in range(l + 1):
        fpp = fpn_formula_pieces(formula, l, off)
        runs = []
        for role, pair in (("head", fpp.head), ("middle", fpp.middle), ("tail", fpp.tail)):
            if pair is None:
                continue
            iv, piece = pair
            runs.append({
                "role": role,
                "interval": f"{iv.lo}..{iv.hi}",
                "copies": fpp.middle_count if role == "middle" else 1,
                "formula": serialize_sformula(piece),
            })
        out.append({
            "offset": off,
            "kept_clauses": fpp.kept_clauses,
            "deleted_clauses": fpp.deleted_clauses,
            "runs": runs,
        })
    if as_json:
        _echo_json({"l": l, "offsets": out})
        return
    click.echo(f"l={l}")
    for o in out:
        click.echo(f"offset={o['offset']} kept={o['kept_clauses']} "
                   f"deleted={o['deleted_clauses']}")
        for r in o["runs"]:
            click.echo(f"run role={r['role']} interval={r['interval']} "
                       f"copies={r['copies']}")
            click.echo(r["formula"], nl=False)


@cli.command()
@click.argument("problem", type=click.Choice(["mis", "vc", "maxcut", "maxsat"]))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@_scheme_options
def approx(problem: str, file: str, l, epsilon, k, base, budget_exact,
           budget_piece, budget_expand, threads, as_json) -> None:
    """Run the partial-expansion scheme for PROBLEM on FILE."""
    sol, _, _, from_eps = _run_scheme(
        problem, file, l, epsilon, k, base, budget_exact, budget_piece, budget_expand
    )
    if as_json:
        payload = _solution_json(sol)
        if from_eps:
            payload["epsilon"] = epsilon
        _echo_json(payload)
        return
    if from_eps:
        click.echo(f"epsilon={epsilon} l={sol.l}")
    click.echo(f"value={sol.total_value} offset={sol.offset} guarantee={_ratio(sol.guarantee)}")


@cli.command(name="query")
@click.argument("problem", type=click.Choice(["mis", "vc", "maxcut", "maxsat"]))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.argument("address")
@_scheme_options
def query_cmd(problem: str, file: str, address: str, l, epsilon, k, base,
              budget_exact, budget_piece, budget_expand, threads, as_json) -> None:
    """Membership of one expanded vertex/variable in the scheme's solution."""
    sol, _, _, from_eps = _run_scheme(
        problem, file, l, epsilon, k, base, budget_exact, budget_piece, budget_expand
    )
    member = solution_query(sol, address)
    if as_json:
        _echo_json({"address": address, "member": member,
                    "value": sol.total_value, "offset": sol.offset, "l": sol.l})
        return
    if from_eps:
        click.echo(f"epsilon={epsilon} l={sol.l}")
    click.echo("true" if member else "false")


@cli.command(name="stream")
@click.argument("problem", type=click.Choice(["mis", "vc", "maxcut", "maxsat"]))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--cap", type=int, default=None, help="Stop after this many addresses.")
@_scheme_options
def stream_cmd(problem: str, file: str, cap, l, epsilon, k, base,
               budget_exact, budget_piece, budget_expand, threads, as_json) -> None:
    """Stream the solution's member addresses, one `sol <address>` per line."""
    sol, _, _, _ = _run_scheme(
        problem, file, l, epsilon, k, base, budget_exact, budget_piece, budget_expand
    )
    if as_json:
        members: list[str] = []
        count = stream_solution(sol, members.append, cap)
        _echo_json({"count": count, "solution": members,
                    "value": sol.total_value, "offset": sol.offset, "l": sol.l})
        return
    stream_solution(sol, lambda addr: click.echo(f"sol {addr}"), cap)


@cli.command(name="emit")
@click.argument("problem", type=click.Choice(["mis", "vc"]))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@_scheme_options
def emit_cmd(problem: str, file: str, l, epsilon, k, base, budget_exact,
             budget_piece, budget_expand, threads, as_json) -> None:
    """Re-emit the solution itself as a hierarchical specification."""
    sol, _, _, _ = _run_scheme(
        problem, file, l, epsilon, k, base, budget_exact, budget_piece, budget_expand
    )
    mirror = emit_solution_lspec(sol, budget_expand)
    text = serialize_lspec(mirror)
    if as_json:
        _echo_json({"value": sol.total_value, "offset": sol.offset,
                    "l": sol.l, "lspec": text})
        return
    click.echo(text, nl=False)


@cli.command()
@click.argument("problem", type=click.Choice(["mis", "vc", "maxcut", "maxsat"]))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--budget-exact", type=int, default=None)
@click.option("--budget-expand", type=int, default=DEFAULT_EXPAND_BUDGET)
@click.option("--json", "as_json", is_flag=True)
def oracle(problem: str, file: str, budget_exact, budget_expand, as_json) -> None:
    """Exact optimum of FILE's full expansion (budget-guarded)."""
    kind, obj, _ = _load(file)
    value, members = _oracle_value(problem, kind, obj, budget_exact, budget_expand)
    if as_json:
        payload: dict[str, object] = {"problem": problem, "value": value}
        if members is not None:
            payload["members"] = sorted(members)
        _echo_json(payload)
        return
    click.echo(f"value={value}")


def _oracle_value(problem: str, kind: str, obj, budget_exact, budget_expand):
    if problem == "maxsat":
        if kind == "lformula":
            flat = expand_formula(obj, budget_expand)
        elif kind == "fpncnf":
            flat = expand_fpn_formula(obj, budget_expand)
        elif kind == "sformula":
            flat = obj
        else:
            raise click.UsageError(f"maxsat is not defined for {kind} documents")
        budget = DEFAULT_MAXSAT_ENUM_BUDGET if budget_exact is None else budget_exact
        res = exact_maxsat(flat, budget)
        return res.satisfied, None
    if kind == "lspec":
        g = expand(obj, budget_expand)
    elif kind == "fpn":
        g = expand_fpn(obj, budget_expand)
    else:
        raise click.UsageError(f"{problem} is not defined for {kind} documents")
    budget = DEFAULT_EXACT_BUDGET if budget_exact is None else budget_exact
    if problem == "mis":
        s = exact_mis(g, budget)
        return len(s), s
    if problem == "vc":
        s = exact_vc(g, budget)
        return len(s), s
    side, value = exact_maxcut(g, budget)
    return value, side


@cli.command()
@click.argument("problem", type=click.Choice(["mis", "vc", "maxcut", "maxsat"]))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@_scheme_options
def verify(problem: str, file: str, l, epsilon, k, base, budget_exact,
           budget_piece, budget_expand, threads, as_json) -> None:
    """Run the scheme, recheck feasibility against the real expansion,
    and compare the value with the exact optimum's guarantee bound."""
    sol, kind, obj, _ = _run_scheme(
        problem, file, l, epsilon, k, base, budget_exact, budget_piece, budget_expand
    )
    report = verify_solution(sol, budget_expand)
    if not report.ok:
        raise GuaranteeFailureError(f"infeasible solution: {report.details}")
    opt, _ = _oracle_value(problem, kind, obj, budget_exact, budget_expand)
    bound = sol.guarantee * opt
    if problem == "vc":
        ok = Fraction(sol.total_value) <= bound
        relation = "<="
    else:
        ok = Fraction(sol.total_value) >= bound
        relation = ">="
    if not ok:
        raise GuaranteeFailureError(
            f"value {sol.total_value} violates {relation} "
            f"{_ratio(sol.guarantee)}*{opt}"
        )
    if as_json:
        payload = _solution_json(sol)
        payload.update(opt=opt, bound=str(bound), feasible=True, guarantee_ok=True)
        _echo_json(payload)
        return
    click.echo(
        f"value={sol.total_value} opt={opt} bound={bound} "
        f"guarantee={_ratio(sol.guarantee)} ok"
    )


@cli.command()
@click.argument("family", type=click.Choice([
    "tri", "bintree", "chaintri", "rand1level", "fpnpath", "fpnladder",
    "randfpn", "lformula", "fpncnf", "example4",
]))
@click.argument("size", type=int, required=False)
@click.option("--cells", type=int, default=4, help="Cell count for random hierarchical families.")
@click.option("--seed", type=int, default=0, help="Generator seed (deterministic).")
@click.option("--vertices", type=int, default=4, help="Static vertex/variable count for periodic families.")
@click.option("--density", type=float, default=0.35, help="Edge probability for randfpn.")
@click.option("--k", type=int, default=1, help="Max edge offset for randfpn.")
@click.option("--m", type=int, default=20, help="Lattice bound for random periodic families.")
@click.option("--width", type=int, default=1, help="Max literal offset for fpncnf.")
def gen(family: str, size: int | None, cells: int, seed: int, vertices: int,
        density: float, k: int, m: int, width: int) -> None:
    """Generate an instance document on standard output."""
    def need_size() -> int:
        if size is None:
            raise click.UsageError(f"{family} needs a size argument")
        return size

    if family == "tri":
        text = tri_spec()
    elif family == "bintree":
        text = bintree_spec(need_size())
    elif family == "chaintri":
        text = chain_triangles_spec(need_size())
    elif family == "rand1level":
        text = rand_1level_lspec(cells, seed)
    elif family == "fpnpath":
        text = fpn_path(need_size())
    elif family == "fpnladder":
        text = fpn_ladder(need_size())
    elif family == "randfpn":
        text = rand_fpn(vertices, density, k, size if size is not None else m, seed)
    elif family == "lformula":
        text = rand_1level_lformula(cells, seed)
    elif family == "fpncnf":
        text = rand_fpn_formula(vertices, width, size if size is not None else m, seed)
    else:
        text = example4_lformula()
    click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# Entry points and exit-code mapping
# ---------------------------------------------------------------------------


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI with the documented exit-code mapping."""
    try:
        cli.main(args=list(argv) if argv is not None else None,
                 prog_name="sgat", standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:  # --help and friends
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except _ValidationFailed as exc:
        click.echo(f"invalid document: {exc.path}", err=True)
        for v in exc.report.violations:
            click.echo(f"  {v}", err=True)
        return 2
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        return 2
    except (ConstraintError, SolverInapplicableError) as exc:
        click.echo(f"inapplicable: {exc}", err=True)
        return 2
    except BudgetExceededError as exc:
        click.echo(f"budget exceeded: {exc}", err=True)
        return 3
    except GuaranteeFailureError as exc:
        click.echo(f"guarantee check failed: {exc}", err=True)
        return 4
    except GenerationError as exc:
        click.echo(f"generation failed: {exc}", err=True)
        return 1
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1


def console_main() -> None:
    sys.exit(main())
