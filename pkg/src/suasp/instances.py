"""Application instances (QBFs, parity games, labeled graphs) and their file formats."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ParseError, UnsupportedInstanceError

EXISTS = "exists"
FORALL = "forall"

_CONST_RE = re.compile(r"^(_*[a-z][A-Za-z0-9_']*|-?[0-9]+)$")


def check_constant(name: str, what: str) -> str:
    name = str(name)
    if not _CONST_RE.match(name):
        raise UnsupportedInstanceError(f"{what} {name!r} is not a valid constant")
    return name


# -- QBF ----------------------------------------------------------------------

@dataclass(frozen=True)
class QbfInstance:
    """Prenex QBF over integer variables.

    ``matrix`` is a list of cubes (``form='dnf'``) or clauses (``form='cnf'``);
    each is a tuple of non-zero signed variables.
    """

    blocks: tuple
    matrix: tuple
    form: str = "dnf"

    def __post_init__(self):
        blocks = tuple((q, tuple(vs)) for q, vs in self.blocks)
        matrix = tuple(tuple(c) for c in self.matrix)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "matrix", matrix)
        if self.form not in ("dnf", "cnf"):
            raise UnsupportedInstanceError(f"unknown matrix form {self.form!r}")
        seen: set = set()
        for q, vs in blocks:
            if q not in (EXISTS, FORALL):
                raise UnsupportedInstanceError(f"unknown quantifier {q!r}")
            for v in vs:
                if v <= 0 or v in seen:
                    raise UnsupportedInstanceError(f"variable {v} quantified twice or invalid")
                seen.add(v)
        for c in matrix:
            for lit in c:
                if lit == 0 or abs(lit) not in seen:
                    raise UnsupportedInstanceError(f"matrix variable {abs(lit)} is not quantified")

    @property
    def variables(self) -> list[int]:
        return [v for _, vs in self.blocks for v in vs]

    @property
    def quantifiers(self) -> list[str]:
        return [q for q, _ in self.blocks]

    def canonical(self) -> "QbfInstance":
        """Merge adjacent blocks with equal quantifiers and drop empty blocks."""
        merged: list = []
        for q, vs in self.blocks:
            if not vs:
                continue
            if merged and merged[-1][0] == q:
                merged[-1] = (q, merged[-1][1] + tuple(vs))
            else:
                merged.append((q, tuple(vs)))
        return QbfInstance(tuple(merged), self.matrix, self.form)

    def matrix_holds(self, assignment: Mapping[int, bool]) -> bool:
        def lit_true(lit):
            return assignment[abs(lit)] == (lit > 0)

        if self.form == "dnf":
            return any(all(lit_true(l) for l in cube) for cube in self.matrix)
        return all(any(lit_true(l) for l in clause) for clause in self.matrix)


def parse_qdimacs(text: str) -> QbfInstance:
    """Read QDIMACS-style text; a ``c matrix: dnf|cnf`` comment selects the matrix form (default cnf)."""
    form = "cnf"
    blocks: list = []
    matrix: list = []
    current: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            m = re.match(r"c\s+matrix\s*:\s*(dnf|cnf)\s*$", line, re.IGNORECASE)
            if m:
                form = m.group(1).lower()
            continue
        if line.startswith("p"):
            continue
        parts = line.split()
        try:
            if parts[0] in ("e", "a"):
                nums = [int(x) for x in parts[1:]]
                if not nums or nums[-1] != 0:
                    raise ParseError("quantifier line must end with 0", lineno, 1)
                blocks.append((EXISTS if parts[0] == "e" else FORALL, tuple(nums[:-1])))
                continue
            nums = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"malformed line {line!r}", lineno, 1) from None
        for n in nums:
            if n == 0:
                matrix.append(tuple(current))
                current = []
            else:
                current.append(n)
    if current:
        raise ParseError("matrix line not terminated by 0", len(text.splitlines()), 1)
    return QbfInstance(tuple(blocks), tuple(matrix), form)


def format_qdimacs(q: QbfInstance) -> str:
    nvars = max(q.variables, default=0)
    lines = [f"c matrix: {q.form}", f"p {q.form} {nvars} {len(q.matrix)}"]
    for quant, vs in q.blocks:
        lines.append(" ".join(["e" if quant == EXISTS else "a", *map(str, vs), "0"]))
    for c in q.matrix:
        lines.append(" ".join([*map(str, c), "0"]))
    return "\n".join(lines) + "\n"


# -- parity games -------------------------------------------------------------

@dataclass(frozen=True)
class ParityGame:
    nodes: tuple
    arcs: frozenset
    initial: str
    owner: Mapping[str, str] = field(hash=False)
    priority: Mapping[str, int] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(str(n) for n in self.nodes))
        object.__setattr__(self, "arcs", frozenset((str(u), str(v)) for u, v in self.arcs))
        object.__setattr__(self, "initial", str(self.initial))
        object.__setattr__(self, "owner", {str(k): v for k, v in self.owner.items()})
        object.__setattr__(self, "priority", {str(k): int(v) for k, v in self.priority.items()})

    def successors(self, node: str) -> list[str]:
        return sorted(v for u, v in self.arcs if u == node)

    def validate(self) -> "ParityGame":
        nodes = set(self.nodes)
        if self.initial not in nodes:
            raise UnsupportedInstanceError(f"initial node {self.initial} is not a node")
        for u, v in self.arcs:
            if u not in nodes or v not in nodes:
                raise UnsupportedInstanceError(f"arc ({u},{v}) leaves the node set")
        for n in self.nodes:
            check_constant(n, "node")
            if not self.successors(n):
                raise UnsupportedInstanceError(f"node {n} has no outgoing arc")
            if self.owner.get(n) not in (EXISTS, FORALL):
                raise UnsupportedInstanceError(f"node {n} has no owner")
            if self.priority.get(n, -1) < 0:
                raise UnsupportedInstanceError(f"node {n} has no natural priority")
        return self

    def to_facts(self) -> str:
        self.validate()
        lines = []
        for n in self.nodes:
            lines.append(f"{'existNode' if self.owner[n] == EXISTS else 'univNode'}({n}).")
        for u, v in sorted(self.arcs):
            lines.append(f"arc({u},{v}).")
        for n in self.nodes:
            lines.append(f"omega({n},{self.priority[n]}).")
        lines.append(f"init({self.initial}).")
        return "\n".join(lines) + "\n"


def _fact_tuples(text: str) -> list[tuple[str, tuple]]:
    from .frontend.parser import parse
    from .frontend.syntax import Fn, is_ground, render

    ast = parse(text)
    out = []
    for stmt in ast.statements:
        if stmt.body or stmt.head is None or stmt.is_choice or not is_ground(stmt.head):
            raise ParseError(f"expected a ground fact, got '{stmt}'", stmt.line, 1)
        head = stmt.head
        if isinstance(head, Fn):
            out.append((head.name, tuple(a if isinstance(a, Fn) else render(a) for a in head.args)))
        else:
            out.append((head, ()))
    return out


def parse_parity_facts(text: str) -> ParityGame:
    nodes: dict = {}
    arcs, priority, initial = set(), {}, None
    for pred, args in _fact_tuples(text):
        if pred in ("existNode", "univNode") and len(args) == 1:
            nodes[args[0]] = EXISTS if pred == "existNode" else FORALL
        elif pred == "arc" and len(args) == 2:
            arcs.add(args)
        elif pred == "omega" and len(args) == 2:
            priority[args[0]] = int(args[1])
        elif pred == "init" and len(args) == 1:
            initial = args[0]
        else:
            raise ParseError(f"unexpected fact {pred}/{len(args)} in parity game file")
    if initial is None:
        raise ParseError("missing init/1 fact")
    return ParityGame(tuple(nodes), frozenset(arcs), initial, nodes, priority).validate()


# -- labeled graphs -------------------------------------------------------------

@dataclass(frozen=True)
class LabeledGraph:
    """Graph whose arcs carry a literal label ``(variable, positive)``."""

    nodes: tuple
    arcs: tuple
    initial: str
    target: str

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(str(n) for n in self.nodes))
        object.__setattr__(self, "arcs", tuple((str(u), str(v), (str(l[0]), bool(l[1]))) for u, v, l in self.arcs))
        object.__setattr__(self, "initial", str(self.initial))
        object.__setattr__(self, "target", str(self.target))

    def validate(self) -> "LabeledGraph":
        nodes = set(self.nodes)
        if self.initial not in nodes or self.target not in nodes:
            raise UnsupportedInstanceError("initial and target must be nodes")
        pairs = set()
        for u, v, (var, _) in self.arcs:
            if u not in nodes or v not in nodes:
                raise UnsupportedInstanceError(f"arc ({u},{v}) leaves the node set")
            if (u, v) in pairs:
                raise UnsupportedInstanceError(f"more than one arc between {u} and {v}")
            pairs.add((u, v))
            check_constant(var, "label variable")
        for n in self.nodes:
            check_constant(n, "node")
        return self

    def to_facts(self) -> str:
        self.validate()
        lines = [f"arc({u},{v},{'pos' if sign else 'neg'}({var}))." for u, v, (var, sign) in self.arcs]
        lines.append(f"init({self.initial}).")
        lines.append(f"ponr({self.target}).")
        return "\n".join(lines) + "\n"


def parse_ponr_facts(text: str) -> LabeledGraph:
    from .frontend.syntax import Fn, render

    arcs, nodes = [], []
    initial = target = None

    def node(n):
        if n not in nodes:
            nodes.append(n)
        return n

    for pred, args in _fact_tuples(text):
        if pred == "arc" and len(args) == 3:
            label = args[2]
            if not (isinstance(label, Fn) and label.name in ("pos", "neg") and len(label.args) == 1):
                raise UnsupportedInstanceError(f"arc label {render(label)} is not pos(x) or neg(x)")
            arcs.append((node(args[0]), node(args[1]), (render(label.args[0]), label.name == "pos")))
        elif pred == "init" and len(args) == 1:
            initial = node(args[0])
        elif pred == "ponr" and len(args) == 1:
            target = node(args[0])
        else:
            raise ParseError(f"unexpected fact {pred}/{len(args)} in graph file")
    if initial is None or target is None:
        raise ParseError("graph file needs init/1 and ponr/1 facts")
    return LabeledGraph(tuple(nodes), tuple(arcs), initial, target).validate()
