"""Domain types, parsers, serializers and validators for succinct specifications.

Five document kinds are supported, all line-oriented with ``#`` comments:

* ``LSpec`` — a hierarchical graph specification: an ordered sequence of
  *cells*, each a small labeled graph with numbered boundary *pins*,
  named *explicit vertices*, and *nonterminal* placeholders that call an
  earlier cell and wire that cell's pins to terminals of the caller.
* ``FPNSpec`` — a finite periodic graph specification: a static directed
  graph with non-negative integer edge offsets plus a replication bound
  ``m`` (decimal or ``0b`` binary; may be astronomically larger than the
  document).
* ``SFormula`` — a flat conjunction of fixed Boolean relations applied to
  tuples of distinct variables.
* ``LFormula`` — a hierarchical formula: a sequence of formula cells with
  interface variables, local variables, local clauses, and calls to
  earlier cells.
* ``FPNFormula`` — a periodic CNF over literals ``var@offset`` replicated
  at positions ``0..m``.

All types are immutable dataclasses; parsing and validation are pure.
Structural invariants are *reported* by the validators (violations are
data, not exceptions); only malformed documents raise :class:`ParseError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "ParseError",
    "Violation",
    "ValidationReport",
    "Nonterminal",
    "Cell",
    "LSpec",
    "FPNSpec",
    "VertexAddress",
    "BoolRelation",
    "SFormula",
    "FormulaCall",
    "FormulaCell",
    "LFormula",
    "FPNLiteral",
    "FPNFormula",
    "PIN_PREFIX",
    "ADDRESS_SEP",
    "is_pin_ref",
    "pin_ref",
    "pin_index",
    "parse_lspec",
    "serialize_lspec",
    "validate_lspec",
    "parse_fpn",
    "serialize_fpn",
    "validate_fpn",
    "parse_sformula",
    "serialize_sformula",
    "validate_sformula",
    "parse_lformula",
    "serialize_lformula",
    "validate_lformula",
    "parse_fpn_formula",
    "serialize_fpn_formula",
    "validate_fpn_formula",
    "detect_format",
    "parse_document",
    "validate_document",
    "TRI_TEXT",
]

PIN_PREFIX = "pin:"
ADDRESS_SEP = "/"

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """A document could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class Violation:
    """One violated structural invariant, with a locating hint."""

    code: str
    message: str
    location: str = ""

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        loc = f" [{self.location}]" if self.location else ""
        return f"{self.code}: {self.message}{loc}"


@dataclass(frozen=True)
class ValidationReport:
    """The full list of violated invariants; empty iff the object is valid."""

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def is_pin_ref(term: str) -> bool:
    """True iff ``term`` denotes a pin of the current cell (``pin:<k>``)."""
    return term.startswith(PIN_PREFIX)


def pin_ref(k: int) -> str:
    """Render the surface form of pin number ``k`` (1-based)."""
    return f"{PIN_PREFIX}{k}"


def pin_index(term: str) -> int:
    """Extract the 1-based pin number from a ``pin:<k>`` reference."""
    return int(term[len(PIN_PREFIX):])


def _valid_ident(name: str) -> bool:
    return bool(_IDENT_RE.match(name))


# ---------------------------------------------------------------------------
# Hierarchical graph specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Nonterminal:
    """A placeholder vertex calling an earlier cell.

    ``binds`` wires the callee's pins to terminals of the calling cell:
    each entry is ``(pin_number, terminal)`` where the terminal is an
    explicit-vertex name or a ``pin:<k>`` reference of the *calling* cell.
    """

    name: str
    type_name: str
    binds: tuple[tuple[int, str], ...] = ()

    def bind_map(self) -> dict[int, str]:
        return dict(self.binds)


@dataclass(frozen=True)
class Cell:
    """One module of a hierarchical specification.

    Terminals of a cell are its pins (referenced as ``pin:<k>``,
    ``1 <= k <= pin_count``) and its explicit vertices. Edges join two
    terminals. Nonterminals are not vertices of the expanded graph; they
    are substitution sites.
    """

    name: str
    pin_count: int
    explicit: tuple[str, ...] = ()
    nonterminals: tuple[Nonterminal, ...] = ()
    edges: tuple[tuple[str, str], ...] = ()

    @property
    def n_value(self) -> int:
        """Vertex weight of the cell: pins + explicit + nonterminals."""
        return self.pin_count + len(self.explicit) + len(self.nonterminals)

    @property
    def m_value(self) -> int:
        """Edge weight of the cell: own edges + one per pin wiring."""
        return len(self.edges) + sum(len(nt.binds) for nt in self.nonterminals)

    def terminals(self) -> set[str]:
        out = set(self.explicit)
        out.update(pin_ref(k) for k in range(1, self.pin_count + 1))
        return out

    def nonterminal(self, name: str) -> Nonterminal:
        for nt in self.nonterminals:
            if nt.name == name:
                return nt
        raise KeyError(name)


@dataclass(frozen=True)
class LSpec:
    """An ordered sequence of cells; the last cell is the top level."""

    name: str
    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {c.name: i for i, c in enumerate(self.cells)}
        )

    def cell_position(self, name: str) -> int:
        """0-based position of a cell in the sequence."""
        return self._index[name]  # type: ignore[attr-defined]

    def has_cell(self, name: str) -> bool:
        return name in self._index  # type: ignore[attr-defined]

    def cell(self, name: str) -> Cell:
        return self.cells[self.cell_position(name)]

    @property
    def top(self) -> Cell:
        return self.cells[-1]

    @property
    def vertex_number(self) -> int:
        return sum(c.n_value for c in self.cells)

    @property
    def edge_number(self) -> int:
        return sum(c.m_value for c in self.cells)

    @property
    def size(self) -> int:
        return self.vertex_number + self.edge_number


@dataclass(frozen=True)
class VertexAddress:
    """A vertex of an expanded hierarchical graph.

    ``path`` is the chain of nonterminal names from the top cell down to
    the cell copy owning the vertex; ``vertex`` is the explicit-vertex
    name within that copy. Rendered as ``nt1/nt2/.../vertex``.
    """

    path: tuple[str, ...]
    vertex: str

    @classmethod
    def parse(cls, text: str) -> "VertexAddress":
        parts = text.split(ADDRESS_SEP)
        return cls(tuple(parts[:-1]), parts[-1])

    def render(self) -> str:
        return ADDRESS_SEP.join((*self.path, self.vertex))

    def __str__(self) -> str:
        return self.render()


# ---------------------------------------------------------------------------
# Periodic graph specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FPNSpec:
    """A static directed graph with edge offsets, replicated at 0..m.

    Each static edge ``(u, v, t)`` contributes one undirected edge
    ``{u@p, v@(p+t)}`` for every position ``p`` with ``p + t <= m``.
    """

    m: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoolRelation:
    """A fixed Boolean relation: the set of satisfying bit tuples."""

    name: str
    arity: int
    satisfying_tuples: frozenset[tuple[int, ...]]


@dataclass(frozen=True)
class SFormula:
    """A conjunction of relation applications to distinct variables."""

    relations: tuple[BoolRelation, ...]
    variables: tuple[str, ...]
    clauses: tuple[tuple[str, tuple[str, ...]], ...]

    def relation(self, name: str) -> BoolRelation:
        for rel in self.relations:
            if rel.name == name:
                return rel
        raise KeyError(name)

    def relation_map(self) -> dict[str, BoolRelation]:
        return {rel.name: rel for rel in self.relations}


@dataclass(frozen=True)
class FormulaCall:
    """A call to an earlier formula cell with the caller's variables as
    arguments (one per interface variable of the callee)."""

    callee: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class FormulaCell:
    """One module of a hierarchical formula."""

    name: str
    interface: tuple[str, ...]
    local_vars: tuple[str, ...] = ()
    clauses: tuple[tuple[str, tuple[str, ...]], ...] = ()
    calls: tuple[FormulaCall, ...] = ()

    def own_vars(self) -> set[str]:
        return set(self.interface) | set(self.local_vars)


@dataclass(frozen=True)
class LFormula:
    """An ordered sequence of formula cells; the last has no interface."""

    relations: tuple[BoolRelation, ...]
    fcells: tuple[FormulaCell, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {c.name: i for i, c in enumerate(self.fcells)}
        )

    def cell_position(self, name: str) -> int:
        return self._index[name]  # type: ignore[attr-defined]

    def has_cell(self, name: str) -> bool:
        return name in self._index  # type: ignore[attr-defined]

    def fcell(self, name: str) -> FormulaCell:
        return self.fcells[self.cell_position(name)]

    @property
    def top(self) -> FormulaCell:
        return self.fcells[-1]

    def relation_map(self) -> dict[str, BoolRelation]:
        return {rel.name: rel for rel in self.relations}


@dataclass(frozen=True)
class FPNLiteral:
    """A literal of a periodic clause: variable, offset, polarity."""

    var: str
    offset: int
    positive: bool

    def render(self) -> str:
        sign = "" if self.positive else "!"
        return f"{sign}{self.var}@{self.offset}"


@dataclass(frozen=True)
class FPNFormula:
    """A periodic CNF: static clauses instantiated at positions 0..m.

    The instance of a clause at position ``p`` uses variable copies
    ``var@(p+offset)``; the instance is dropped entirely if any literal
    would land beyond ``m``.
    """

    m: int
    variables: tuple[str, ...]
    clauses: tuple[tuple[FPNLiteral, ...], ...]


# ---------------------------------------------------------------------------
# Line scanning shared by all parsers
# ---------------------------------------------------------------------------


def _scan_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_number, tokens) for every non-blank, non-comment line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        yield lineno, line.split()


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        if token.lower().startswith("0b"):
            return int(token, 2)
        return int(token, 10)
    except ValueError:
        raise ParseError(f"{what}: not an integer: {token!r}", lineno) from None


def _require_ident(token: str, lineno: int, what: str) -> str:
    if not _valid_ident(token):
        raise ParseError(f"{what}: bad identifier {token!r}", lineno)
    return token


def _parse_terminal(token: str, lineno: int) -> str:
    if is_pin_ref(token):
        body = token[len(PIN_PREFIX):]
        if not body.isdigit() or int(body) < 1:
            raise ParseError(f"bad pin reference {token!r}", lineno)
        return token
    return _require_ident(token, lineno, "terminal")


# ---------------------------------------------------------------------------
# LSpec parsing / serialization / validation
# ---------------------------------------------------------------------------


def parse_lspec(text: str) -> LSpec:
    """Parse a hierarchical graph specification document.

    Raises :class:`ParseError` on syntax errors, duplicate declarations,
    references to undefined cells, and forward references (a cell may only
    call cells that appear earlier in the document).
    """
    name: str | None = None
    # Pre-scan cell names to distinguish forward references from unknowns.
    declared: list[str] = []
    for lineno, tokens in _scan_lines(text):
        if tokens[0] == "cell" and len(tokens) >= 2:
            declared.append(tokens[1])

    cells: list[Cell] = []
    seen: set[str] = set()

    cur_name: str | None = None
    cur_line = 0
    cur_pins = 0
    cur_vertices: list[str] = []
    cur_edges: list[tuple[str, str]] = []
    cur_nonterms: list[tuple[str, str]] = []  # (name, type)
    cur_binds: list[tuple[str, int, str, int]] = []  # (nt, pin, term, line)

    def close_cell() -> None:
        nonlocal cur_name
        if cur_name is None:
            return
        nt_names = [n for n, _ in cur_nonterms]
        bind_by_nt: dict[str, list[tuple[int, str]]] = {n: [] for n in nt_names}
        seen_binds: set[tuple[str, int]] = set()
        for nt, k, term, bline in cur_binds:
            if nt not in bind_by_nt:
                raise ParseError(
                    f"bind names unknown nonterminal {nt!r}", bline
                )
            if (nt, k) in seen_binds:
                raise ParseError(f"duplicate bind {nt} {k}", bline)
            seen_binds.add((nt, k))
            bind_by_nt[nt].append((k, term))
        nonterminals = tuple(
            Nonterminal(n, t, tuple(bind_by_nt[n])) for n, t in cur_nonterms
        )
        cells.append(
            Cell(
                name=cur_name,
                pin_count=cur_pins,
                explicit=tuple(cur_vertices),
                nonterminals=nonterminals,
                edges=tuple(cur_edges),
            )
        )
        seen.add(cur_name)
        cur_name = None

    for lineno, tokens in _scan_lines(text):
        kw = tokens[0]
        if kw == "lspec":
            if name is not None:
                raise ParseError("repeated lspec header", lineno)
            if len(tokens) != 2:
                raise ParseError("expected: lspec <name>", lineno)
            name = _require_ident(tokens[1], lineno, "specification name")
        elif kw == "cell":
            if name is None:
                raise ParseError("missing lspec header", lineno)
            close_cell()
            if len(tokens) != 4 or tokens[2] != "pins":
                raise ParseError("expected: cell <name> pins <count>", lineno)
            cname = _require_ident(tokens[1], lineno, "cell name")
            if any(c.name == cname for c in cells):
                raise ParseError(f"duplicate cell name {cname!r}", lineno)
            pins = _parse_int(tokens[3], lineno, "pin count")
            if pins < 0:
                raise ParseError("pin count must be >= 0", lineno)
            cur_name = cname
            cur_line = lineno
            cur_pins = pins
            cur_vertices = []
            cur_edges = []
            cur_nonterms = []
            cur_binds = []
        elif cur_name is None:
            raise ParseError(f"{kw!r} outside any cell", lineno)
        elif kw == "vertex":
            if len(tokens) != 2:
                raise ParseError("expected: vertex <name>", lineno)
            v = _require_ident(tokens[1], lineno, "vertex name")
            if v in cur_vertices:
                raise ParseError(f"duplicate vertex {v!r}", lineno)
            cur_vertices.append(v)
        elif kw == "edge":
            if len(tokens) != 3:
                raise ParseError("expected: edge <t1> <t2>", lineno)
            a = _parse_terminal(tokens[1], lineno)
            b = _parse_terminal(tokens[2], lineno)
            if {a, b} in [{x, y} for x, y in cur_edges]:
                raise ParseError(f"duplicate edge {a} {b}", lineno)
            cur_edges.append((a, b))
        elif kw == "nonterm":
            if len(tokens) != 4 or tokens[2] != "type":
                raise ParseError(
                    "expected: nonterm <name> type <cell>", lineno
                )
            nt = _require_ident(tokens[1], lineno, "nonterminal name")
            ty = _require_ident(tokens[3], lineno, "cell type")
            if any(n == nt for n, _ in cur_nonterms):
                raise ParseError(f"duplicate nonterminal {nt!r}", lineno)
            if ty not in seen:
                if ty in declared or ty == cur_name:
                    raise ParseError(
                        f"forward reference: {cur_name} calls {ty} before it"
                        " is defined",
                        lineno,
                    )
                raise ParseError(f"reference to undefined cell {ty!r}", lineno)
            cur_nonterms.append((nt, ty))
        elif kw == "bind":
            if len(tokens) != 4:
                raise ParseError(
                    "expected: bind <nonterm> <pin> <terminal>", lineno
                )
            nt = tokens[1]
            k = _parse_int(tokens[2], lineno, "pin number")
            if k < 1:
                raise ParseError("pin numbers start at 1", lineno)
            term = _parse_terminal(tokens[3], lineno)
            cur_binds.append((nt, k, term, lineno))
        else:
            raise ParseError(f"unknown construct {kw!r}", lineno)

    close_cell()
    if name is None:
        raise ParseError("no cells: empty document")
    if not cells:
        raise ParseError("no cells")
    return LSpec(name=name, cells=tuple(cells))


def serialize_lspec(spec: LSpec) -> str:
    """Render an LSpec to its canonical document form (round-trips)."""
    out: list[str] = [f"lspec {spec.name}"]
    for cell in spec.cells:
        out.append(f"cell {cell.name} pins {cell.pin_count}")
        for v in cell.explicit:
            out.append(f"  vertex {v}")
        for a, b in cell.edges:
            out.append(f"  edge {a} {b}")
        for nt in cell.nonterminals:
            out.append(f"  nonterm {nt.name} type {nt.type_name}")
            for k, term in nt.binds:
                out.append(f"  bind {nt.name} {k} {term}")
    return "\n".join(out) + "\n"


def validate_lspec(spec: LSpec) -> ValidationReport:
    """Check every structural invariant of an LSpec.

    Returns a report listing all violations (empty iff valid):
    cell-name uniqueness, terminal references, simple cell graphs, no
    pin-to-pin edges, acyclic calls with complete distinct pin wiring, a
    pinless top cell, and non-redundancy (every non-top cell is called).
    """
    v: list[Violation] = []
    if not spec.cells:
        return ValidationReport((Violation("no-cells", "specification has no cells"),))

    names_seen: set[str] = set()
    for cell in spec.cells:
        if cell.name in names_seen:
            v.append(
                Violation(
                    "duplicate-cell-name",
                    f"cell name {cell.name!r} reused",
                    f"cell {cell.name}",
                )
            )
        names_seen.add(cell.name)

    positions = {c.name: i for i, c in enumerate(spec.cells)}
    called: set[str] = set()

    for idx, cell in enumerate(spec.cells):
        loc = f"cell {cell.name}"
        if cell.pin_count < 0:
            v.append(Violation("bad-pin-count", "negative pin count", loc))
        expl = set()
        for name in cell.explicit:
            if not _valid_ident(name):
                v.append(
                    Violation("bad-identifier", f"vertex {name!r}", loc)
                )
            if name in expl:
                v.append(
                    Violation("duplicate-vertex", f"vertex {name!r} repeated", loc)
                )
            expl.add(name)
        nt_names = set()
        for nt in cell.nonterminals:
            if nt.name in nt_names:
                v.append(
                    Violation(
                        "duplicate-nonterm",
                        f"nonterminal {nt.name!r} repeated",
                        loc,
                    )
                )
            nt_names.add(nt.name)
        for name in expl & nt_names:
            v.append(
                Violation(
                    "name-collision",
                    f"{name!r} is both a vertex and a nonterminal",
                    loc,
                )
            )

        def check_terminal(term: str, where: str) -> bool:
            if is_pin_ref(term):
                k = pin_index(term)
                if not (1 <= k <= cell.pin_count):
                    v.append(
                        Violation("unknown-pin", f"{term} in {where}", loc)
                    )
                    return False
                return True
            if term in nt_names:
                v.append(
                    Violation(
                        "edge-endpoint-not-terminal",
                        f"{term!r} in {where} is a nonterminal, not a terminal",
                        loc,
                    )
                )
                return False
            if term not in expl:
                v.append(
                    Violation("unknown-vertex", f"{term!r} in {where}", loc)
                )
                return False
            return True

        seen_edges: set[frozenset[str]] = set()
        for a, b in cell.edges:
            where = f"edge {a}-{b}"
            ok_a = check_terminal(a, where)
            ok_b = check_terminal(b, where)
            if a == b:
                v.append(Violation("self-loop", where, loc))
                continue
            if is_pin_ref(a) and is_pin_ref(b):
                v.append(
                    Violation(
                        "pin-pin-edge",
                        f"{where} joins two pins of the same cell",
                        loc,
                    )
                )
            if ok_a and ok_b:
                key = frozenset((a, b))
                if key in seen_edges:
                    v.append(Violation("duplicate-edge", where, loc))
                seen_edges.add(key)

        for nt in cell.nonterminals:
            nloc = f"{loc} nonterm {nt.name}"
            if nt.type_name not in positions:
                v.append(
                    Violation(
                        "unknown-cell-type",
                        f"type {nt.type_name!r} not defined",
                        nloc,
                    )
                )
                continue
            if positions[nt.type_name] >= idx:
                v.append(
                    Violation(
                        "forward-or-self-reference",
                        f"type {nt.type_name!r} is not an earlier cell",
                        nloc,
                    )
                )
                continue
            called.add(nt.type_name)
            callee = spec.cells[positions[nt.type_name]]
            bind_map: dict[int, str] = {}
            dup = False
            for k, term in nt.binds:
                if k in bind_map:
                    dup = True
                bind_map[k] = term
            expected = set(range(1, callee.pin_count + 1))
            if dup or set(bind_map) != expected:
                v.append(
                    Violation(
                        "pin-degree-mismatch",
                        f"needs exactly pins {sorted(expected)} wired once"
                        f" each, got {sorted(k for k, _ in nt.binds)}",
                        nloc,
                    )
                )
            targets: list[str] = []
            for k, term in nt.binds:
                if check_terminal(term, f"bind {nt.name} {k}"):
                    targets.append(term)
            if len(set(targets)) != len(targets):
                v.append(
                    Violation(
                        "bind-targets-not-distinct",
                        "pin wiring targets must be pairwise distinct",
                        nloc,
                    )
                )

    if spec.top.pin_count != 0:
        v.append(
            Violation(
                "top-cell-has-pins",
                f"top cell {spec.top.name!r} has {spec.top.pin_count} pins",
                f"cell {spec.top.name}",
            )
        )
    for cell in spec.cells[:-1]:
        if cell.name not in called:
            v.append(
                Violation(
                    "redundant-cell",
                    f"cell {cell.name!r} is never called by a later cell",
                    f"cell {cell.name}",
                )
            )
    return ValidationReport(tuple(v))


# ---------------------------------------------------------------------------
# FPNSpec parsing / serialization / validation
# ---------------------------------------------------------------------------


def parse_fpn(text: str) -> FPNSpec:
    """Parse a periodic graph specification (``fpn m=<int>`` header)."""
    m: int | None = None
    vertices: list[str] = []
    edges: list[tuple[str, str, int]] = []
    for lineno, tokens in _scan_lines(text):
        kw = tokens[0]
        if kw == "fpn":
            if m is not None:
                raise ParseError("repeated fpn header", lineno)
            if len(tokens) != 2 or not tokens[1].startswith("m="):
                raise ParseError("expected: fpn m=<int>", lineno)
            m = _parse_int(tokens[1][2:], lineno, "bound m")
            if m < 0:
                raise ParseError("negative bound m", lineno)
        elif m is None:
            raise ParseError("missing fpn header", lineno)
        elif kw == "vertex":
            if len(tokens) != 2:
                raise ParseError("expected: vertex <name>", lineno)
            name = _require_ident(tokens[1], lineno, "vertex name")
            if name in vertices:
                raise ParseError(f"duplicate vertex {name!r}", lineno)
            vertices.append(name)
        elif kw == "edge":
            if len(tokens) != 4:
                raise ParseError("expected: edge <u> <v> <offset>", lineno)
            u = _require_ident(tokens[1], lineno, "vertex name")
            w = _require_ident(tokens[2], lineno, "vertex name")
            t = _parse_int(tokens[3], lineno, "offset")
            if t < 0:
                raise ParseError("negative offset", lineno)
            edges.append((u, w, t))
        else:
            raise ParseError(f"unknown construct {kw!r}", lineno)
    if m is None:
        raise ParseError("empty document: missing fpn header")
    return FPNSpec(m=m, vertices=tuple(vertices), edges=tuple(edges))


def serialize_fpn(spec: FPNSpec) -> str:
    out = [f"fpn m={spec.m}"]
    out.extend(f"vertex {v}" for v in spec.vertices)
    out.extend(f"edge {u} {v} {t}" for u, v, t in spec.edges)
    return "\n".join(out) + "\n"


def validate_fpn(spec: FPNSpec) -> ValidationReport:
    """Check FPNSpec invariants: known endpoints, non-negative offsets and
    bound, and a simple replicated graph (no zero-offset self-loops, no
    duplicate or zero-offset-opposite edge pairs)."""
    v: list[Violation] = []
    if spec.m < 0:
        v.append(Violation("negative-bound", f"m = {spec.m}"))
    known = set(spec.vertices)
    if len(known) != len(spec.vertices):
        v.append(Violation("duplicate-vertex", "vertex list has repeats"))
    seen: set[tuple[str, str, int]] = set()
    for u, w, t in spec.edges:
        loc = f"edge {u} {w} {t}"
        if u not in known or w not in known:
            v.append(Violation("unknown-vertex", loc, loc))
        if t < 0:
            v.append(Violation("negative-offset", loc, loc))
        if u == w and t == 0:
            v.append(Violation("self-loop", f"{loc} expands to self-loops", loc))
        if (u, w, t) in seen:
            v.append(Violation("duplicate-edge", loc, loc))
        elif t == 0 and (w, u, 0) in seen:
            v.append(
                Violation(
                    "duplicate-edge",
                    f"{loc} duplicates {w} {u} 0 in the expansion",
                    loc,
                )
            )
        seen.add((u, w, t))
    return ValidationReport(tuple(v))


# ---------------------------------------------------------------------------
# Relations (shared by the three formula kinds)
# ---------------------------------------------------------------------------


def _parse_relation_line(tokens: list[str], lineno: int) -> BoolRelation:
    # relation <R> arity <p> tuples <bits,bits,...>  ("-" for the empty set)
    if (
        len(tokens) != 6
        or tokens[2] != "arity"
        or tokens[4] != "tuples"
    ):
        raise ParseError(
            "expected: relation <name> arity <p> tuples <bits,...>", lineno
        )
    name = _require_ident(tokens[1], lineno, "relation name")
    arity = _parse_int(tokens[3], lineno, "arity")
    if arity < 1:
        raise ParseError("relation arity must be >= 1", lineno)
    tuples: set[tuple[int, ...]] = set()
    if tokens[5] != "-":
        for bits in tokens[5].split(","):
            if len(bits) != arity or any(c not in "01" for c in bits):
                raise ParseError(
                    f"tuple {bits!r} is not a {arity}-bit string", lineno
                )
            tuples.add(tuple(int(c) for c in bits))
    return BoolRelation(name, arity, frozenset(tuples))


def _serialize_relation(rel: BoolRelation) -> str:
    if not rel.satisfying_tuples:
        bits = "-"
    else:
        bits = ",".join(
            "".join(str(b) for b in tup)
            for tup in sorted(rel.satisfying_tuples)
        )
    return f"relation {rel.name} arity {rel.arity} tuples {bits}"


def _parse_clause_args(blob: str, lineno: int) -> tuple[str, tuple[str, ...]]:
    # <R>(<v1>,<v2>,...)
    m = re.match(r"([A-Za-z_][A-Za-z0-9_]*)\((.*)\)\Z", blob)
    if not m:
        raise ParseError("expected: clause <R>(<v1>,...)", lineno)
    rel_name = m.group(1)
    args = tuple(a.strip() for a in m.group(2).split(",")) if m.group(2).strip() else ()
    for a in args:
        if not _valid_ident(a.split(ADDRESS_SEP)[-1]) and not _valid_ident(a):
            raise ParseError(f"bad variable name {a!r}", lineno)
    return rel_name, args


def _relation_arity_check(
    rels: Mapping[str, BoolRelation], rel_name: str, args: Sequence[str], lineno: int
) -> None:
    if rel_name not in rels:
        raise ParseError(f"reference to undeclared relation {rel_name!r}", lineno)
    if len(args) != rels[rel_name].arity:
        raise ParseError(
            f"arity mismatch: {rel_name} takes {rels[rel_name].arity}"
            f" variables, got {len(args)}",
            lineno,
        )


# ---------------------------------------------------------------------------
# SFormula
# ---------------------------------------------------------------------------


def parse_sformula(text: str) -> tuple[dict[str, BoolRelation], SFormula]:
    """Parse a flat formula; returns (relations by name, the formula)."""
    rels: dict[str, BoolRelation] = {}
    variables: list[str] = []
    var_set: set[str] = set()
    clauses: list[tuple[str, tuple[str, ...]]] = []

    def note_var(name: str) -> None:
        if name not in var_set:
            var_set.add(name)
            variables.append(name)

    any_line = False
    for lineno, tokens in _scan_lines(text):
        any_line = True
        kw = tokens[0]
        if kw == "relation":
            rel = _parse_relation_line(tokens, lineno)
            if rel.name in rels:
                raise ParseError(f"duplicate relation {rel.name!r}", lineno)
            rels[rel.name] = rel
        elif kw == "var":
            if len(tokens) != 2:
                raise ParseError("expected: var <name>", lineno)
            note_var(tokens[1])
        elif kw == "clause":
            blob = "".join(tokens[1:])
            rel_name, args = _parse_clause_args(blob, lineno)
            _relation_arity_check(rels, rel_name, args, lineno)
            for a in args:
                note_var(a)
            clauses.append((rel_name, args))
        else:
            raise ParseError(f"unknown construct {kw!r}", lineno)
    if not any_line:
        raise ParseError("empty document")
    formula = SFormula(
        relations=tuple(rels.values()),
        variables=tuple(variables),
        clauses=tuple(clauses),
    )
    return rels, formula


def serialize_sformula(formula: SFormula) -> str:
    out = [_serialize_relation(rel) for rel in formula.relations]
    out.extend(f"var {v}" for v in formula.variables)
    out.extend(
        f"clause {rel}({','.join(args)})" for rel, args in formula.clauses
    )
    return "\n".join(out) + "\n"


def validate_sformula(formula: SFormula) -> ValidationReport:
    """Check flat-formula invariants: unique relation names, declared
    variables, arity matches, and distinct variables within each clause."""
    v: list[Violation] = []
    rels = {}
    for rel in formula.relations:
        if rel.name in rels:
            v.append(Violation("duplicate-relation", rel.name))
        rels[rel.name] = rel
        for tup in rel.satisfying_tuples:
            if len(tup) != rel.arity or any(b not in (0, 1) for b in tup):
                v.append(
                    Violation(
                        "bad-tuple",
                        f"{tup} does not match arity {rel.arity}",
                        f"relation {rel.name}",
                    )
                )
    known = set(formula.variables)
    if len(known) != len(formula.variables):
        v.append(Violation("duplicate-variable", "variable list has repeats"))
    for i, (rel_name, args) in enumerate(formula.clauses):
        loc = f"clause {i}: {rel_name}({','.join(args)})"
        if rel_name not in rels:
            v.append(Violation("unknown-relation", rel_name, loc))
        elif len(args) != rels[rel_name].arity:
            v.append(Violation("arity-mismatch", loc, loc))
        if len(set(args)) != len(args):
            v.append(
                Violation(
                    "repeated-variable",
                    "clause variables must be distinct",
                    loc,
                )
            )
        for a in args:
            if a not in known:
                v.append(Violation("unknown-variable", a, loc))
    return ValidationReport(tuple(v))


# ---------------------------------------------------------------------------
# LFormula
# ---------------------------------------------------------------------------


def parse_lformula(text: str) -> LFormula:
    """Parse a hierarchical formula document (relations + fcell blocks)."""
    rels: dict[str, BoolRelation] = {}
    fcells: list[FormulaCell] = []
    declared = [
        tokens[1]
        for _, tokens in _scan_lines(text)
        if tokens[0] == "fcell" and len(tokens) >= 2
    ]
    seen: dict[str, FormulaCell] = {}

    cur_name: str | None = None
    cur_interface: tuple[str, ...] = ()
    cur_locals: list[str] = []
    cur_clauses: list[tuple[str, tuple[str, ...]]] = []
    cur_calls: list[FormulaCall] = []

    def close_cell() -> None:
        nonlocal cur_name
        if cur_name is None:
            return
        cell = FormulaCell(
            name=cur_name,
            interface=cur_interface,
            local_vars=tuple(cur_locals),
            clauses=tuple(cur_clauses),
            calls=tuple(cur_calls),
        )
        fcells.append(cell)
        seen[cur_name] = cell
        cur_name = None

    for lineno, tokens in _scan_lines(text):
        kw = tokens[0]
        if kw == "relation":
            if cur_name is not None:
                raise ParseError("relations must precede fcell blocks", lineno)
            rel = _parse_relation_line(tokens, lineno)
            if rel.name in rels:
                raise ParseError(f"duplicate relation {rel.name!r}", lineno)
            rels[rel.name] = rel
        elif kw == "fcell":
            close_cell()
            if len(tokens) == 2:
                iface: tuple[str, ...] = ()
            elif len(tokens) >= 3 and tokens[2] == "in":
                blob = "".join(tokens[3:]) if len(tokens) > 3 else ""
                if not blob:
                    raise ParseError("expected interface variables after 'in'", lineno)
                iface = tuple(x.strip() for x in blob.split(","))
                for x in iface:
                    _require_ident(x, lineno, "interface variable")
            else:
                raise ParseError("expected: fcell <name> [in <v1>,<v2>,...]", lineno)
            cname = _require_ident(tokens[1], lineno, "fcell name")
            if cname in seen:
                raise ParseError(f"duplicate fcell {cname!r}", lineno)
            cur_name = cname
            cur_interface = iface
            cur_locals = []
            cur_clauses = []
            cur_calls = []
        elif cur_name is None:
            raise ParseError(f"{kw!r} outside any fcell", lineno)
        elif kw == "var":
            if len(tokens) != 2:
                raise ParseError("expected: var <name>", lineno)
            name = _require_ident(tokens[1], lineno, "variable name")
            if name in cur_locals:
                raise ParseError(f"duplicate variable {name!r}", lineno)
            cur_locals.append(name)
        elif kw == "clause":
            blob = "".join(tokens[1:])
            rel_name, args = _parse_clause_args(blob, lineno)
            _relation_arity_check(rels, rel_name, args, lineno)
            cur_clauses.append((rel_name, args))
        elif kw == "call":
            blob = "".join(tokens[1:])
            callee, args = _parse_clause_args(blob, lineno)
            if callee not in seen:
                if callee in declared or callee == cur_name:
                    raise ParseError(
                        f"forward reference: {cur_name} calls {callee} before"
                        " it is defined",
                        lineno,
                    )
                raise ParseError(f"reference to undefined fcell {callee!r}", lineno)
            if len(args) != len(seen[callee].interface):
                raise ParseError(
                    f"arity mismatch: {callee} takes"
                    f" {len(seen[callee].interface)} arguments, got {len(args)}",
                    lineno,
                )
            cur_calls.append(FormulaCall(callee, args))
        else:
            raise ParseError(f"unknown construct {kw!r}", lineno)

    close_cell()
    if not fcells:
        raise ParseError("no fcells: empty document")
    return LFormula(relations=tuple(rels.values()), fcells=tuple(fcells))


def serialize_lformula(formula: LFormula) -> str:
    out = [_serialize_relation(rel) for rel in formula.relations]
    for cell in formula.fcells:
        if cell.interface:
            out.append(f"fcell {cell.name} in {','.join(cell.interface)}")
        else:
            out.append(f"fcell {cell.name}")
        out.extend(f"  var {z}" for z in cell.local_vars)
        out.extend(
            f"  clause {rel}({','.join(args)})" for rel, args in cell.clauses
        )
        out.extend(
            f"  call {c.callee}({','.join(c.args)})" for c in cell.calls
        )
    return "\n".join(out) + "\n"


def validate_lformula(formula: LFormula) -> ValidationReport:
    """Check hierarchical-formula invariants: acyclic calls with matching
    argument counts and distinct arguments drawn from the caller's
    variables, clauses over the cell's own variables, and an interface-free
    top cell."""
    v: list[Violation] = []
    positions = {c.name: i for i, c in enumerate(formula.fcells)}
    rels = formula.relation_map()
    for idx, cell in enumerate(formula.fcells):
        loc = f"fcell {cell.name}"
        own = cell.own_vars()
        if len(cell.interface) + len(cell.local_vars) != len(own):
            v.append(
                Violation(
                    "duplicate-variable",
                    "interface and local variables must be distinct",
                    loc,
                )
            )
        for rel_name, args in cell.clauses:
            cl = f"{loc} clause {rel_name}({','.join(args)})"
            if rel_name not in rels:
                v.append(Violation("unknown-relation", rel_name, cl))
            elif len(args) != rels[rel_name].arity:
                v.append(Violation("arity-mismatch", cl, cl))
            if len(set(args)) != len(args):
                v.append(Violation("repeated-variable", cl, cl))
            for a in args:
                if a not in own:
                    v.append(Violation("unknown-variable", a, cl))
        for call in cell.calls:
            cl = f"{loc} call {call.callee}"
            if call.callee not in positions:
                v.append(Violation("unknown-fcell", call.callee, cl))
                continue
            if positions[call.callee] >= idx:
                v.append(
                    Violation(
                        "forward-or-self-reference",
                        f"{call.callee} is not an earlier fcell",
                        cl,
                    )
                )
                continue
            callee = formula.fcells[positions[call.callee]]
            if len(call.args) != len(callee.interface):
                v.append(Violation("arity-mismatch", cl, cl))
            if len(set(call.args)) != len(call.args):
                v.append(Violation("repeated-variable", cl, cl))
            for a in call.args:
                if a not in own:
                    v.append(Violation("unknown-variable", a, cl))
    if formula.top.interface:
        v.append(
            Violation(
                "top-cell-has-interface",
                f"top fcell {formula.top.name!r} must have no interface",
                f"fcell {formula.top.name}",
            )
        )
    return ValidationReport(tuple(v))


# ---------------------------------------------------------------------------
# FPNFormula
# ---------------------------------------------------------------------------

_LIT_RE = re.compile(r"(!?)([A-Za-z_][A-Za-z0-9_]*)@(\d+)\Z")


def parse_fpn_formula(text: str) -> FPNFormula:
    """Parse a periodic CNF (``fpncnf m=<int>`` header, ``var@offset``
    literals, ``!`` for negation)."""
    m: int | None = None
    variables: list[str] = []
    clauses: list[tuple[FPNLiteral, ...]] = []
    for lineno, tokens in _scan_lines(text):
        kw = tokens[0]
        if kw == "fpncnf":
            if m is not None:
                raise ParseError("repeated fpncnf header", lineno)
            if len(tokens) != 2 or not tokens[1].startswith("m="):
                raise ParseError("expected: fpncnf m=<int>", lineno)
            m = _parse_int(tokens[1][2:], lineno, "bound m")
            if m < 0:
                raise ParseError("negative bound m", lineno)
        elif m is None:
            raise ParseError("missing fpncnf header", lineno)
        elif kw == "var":
            if len(tokens) != 2:
                raise ParseError("expected: var <name>", lineno)
            name = _require_ident(tokens[1], lineno, "variable name")
            if name in variables:
                raise ParseError(f"duplicate variable {name!r}", lineno)
            variables.append(name)
        elif kw == "clause":
            lits: list[FPNLiteral] = []
            if len(tokens) < 2:
                raise ParseError("empty clause", lineno)
            for tok in tokens[1:]:
                match = _LIT_RE.match(tok)
                if not match:
                    raise ParseError(f"bad literal {tok!r}", lineno)
                neg, var, off = match.groups()
                if var not in variables:
                    raise ParseError(f"unknown variable {var!r}", lineno)
                lits.append(FPNLiteral(var, int(off), neg != "!"))
            clauses.append(tuple(lits))
        else:
            raise ParseError(f"unknown construct {kw!r}", lineno)
    if m is None:
        raise ParseError("empty document: missing fpncnf header")
    return FPNFormula(m=m, variables=tuple(variables), clauses=tuple(clauses))


def serialize_fpn_formula(formula: FPNFormula) -> str:
    out = [f"fpncnf m={formula.m}"]
    out.extend(f"var {v}" for v in formula.variables)
    out.extend(
        "clause " + " ".join(lit.render() for lit in clause)
        for clause in formula.clauses
    )
    return "\n".join(out) + "\n"


def validate_fpn_formula(formula: FPNFormula) -> ValidationReport:
    """Check periodic-CNF invariants: non-negative bound and offsets, known
    variables, non-empty clauses, and distinct (variable, offset) pairs
    within each clause (expanded clauses apply to distinct variables)."""
    v: list[Violation] = []
    if formula.m < 0:
        v.append(Violation("negative-bound", f"m = {formula.m}"))
    known = set(formula.variables)
    for i, clause in enumerate(formula.clauses):
        loc = f"clause {i}"
        if not clause:
            v.append(Violation("empty-clause", loc, loc))
        seen: set[tuple[str, int]] = set()
        for lit in clause:
            if lit.var not in known:
                v.append(Violation("unknown-variable", lit.var, loc))
            if lit.offset < 0:
                v.append(Violation("negative-offset", lit.render(), loc))
            if (lit.var, lit.offset) in seen:
                v.append(
                    Violation(
                        "repeated-variable",
                        f"{lit.var}@{lit.offset} appears twice",
                        loc,
                    )
                )
            seen.add((lit.var, lit.offset))
    return ValidationReport(tuple(v))


# ---------------------------------------------------------------------------
# Format detection / dispatch
# ---------------------------------------------------------------------------

_FORMATS = ("lspec", "fpn", "sformula", "lformula", "fpncnf")


def detect_format(text: str) -> str:
    """Identify which of the five document kinds ``text`` contains."""
    keywords = [tokens[0] for _, tokens in _scan_lines(text)]
    if not keywords:
        raise ParseError("empty document")
    first = keywords[0]
    if first == "lspec":
        return "lspec"
    if first == "fpn":
        return "fpn"
    if first == "fpncnf":
        return "fpncnf"
    if any(k == "fcell" for k in keywords):
        return "lformula"
    if first in ("relation", "var", "clause"):
        return "sformula"
    raise ParseError(f"unrecognized document (starts with {first!r})")


def parse_document(text: str):
    """Parse any supported document kind; returns (kind, parsed object)."""
    kind = detect_format(text)
    if kind == "lspec":
        return kind, parse_lspec(text)
    if kind == "fpn":
        return kind, parse_fpn(text)
    if kind == "fpncnf":
        return kind, parse_fpn_formula(text)
    if kind == "lformula":
        return kind, parse_lformula(text)
    return kind, parse_sformula(text)[1]


def validate_document(kind: str, obj) -> ValidationReport:
    """Run the validator matching a parsed document kind."""
    if kind == "lspec":
        return validate_lspec(obj)
    if kind == "fpn":
        return validate_fpn(obj)
    if kind == "fpncnf":
        return validate_fpn_formula(obj)
    if kind == "lformula":
        return validate_lformula(obj)
    if kind == "sformula":
        return validate_sformula(obj)
    raise ValueError(f"unknown kind {kind!r}")


# The canonical two-cell fixture: a triangle specified hierarchically.
# Cell G1 is a path pin:1 - a - pin:2; the top cell G2 holds edge u-v and
# calls G1 wiring its pins to u and v, closing the triangle {u, v, X/a}.
TRI_TEXT = """\
lspec tri
cell G1 pins 2
  vertex a
  edge pin:1 a
  edge a pin:2
cell G2 pins 0
  vertex u
  vertex v
  edge u v
  nonterm X type G1
  bind X 1 u
  bind X 2 v
"""
