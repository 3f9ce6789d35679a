"""Non-ground program syntax tree.

Ground term values are plain Python objects: ``str`` for symbolic constants,
``int`` for integers and :class:`Fn` for function applications.  Non-ground
terms additionally use :class:`Var` and :class:`Arith`.  An atom is a term
whose outermost symbol is a constant or function, so a ground atom renders to
its name via :func:`render`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Arith:
    op: str
    left: object
    right: object

    def __str__(self):
        return f"({self.left}{self.op}{self.right})"


Term = Union[str, int, Var, Fn, Arith]


def render(term) -> str:
    if isinstance(term, Fn):
        return f"{term.name}({','.join(render(a) for a in term.args)})"
    if isinstance(term, Arith):
        return f"({render(term.left)}{term.op}{render(term.right)})"
    if isinstance(term, Var):
        return term.name
    return str(term)


def variables(term) -> set:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Fn):
        out = set()
        for a in term.args:
            out |= variables(a)
        return out
    if isinstance(term, Arith):
        return variables(term.left) | variables(term.right)
    return set()


def is_ground(term) -> bool:
    return not variables(term)


def signature(atom) -> tuple:
    if isinstance(atom, Fn):
        return atom.name, len(atom.args)
    return atom, 0


@dataclass(frozen=True)
class Literal:
    atom: Term
    positive: bool = True

    def vars(self) -> set:
        return variables(self.atom)

    def __str__(self):
        return render(self.atom) if self.positive else f"not {render(self.atom)}"


@dataclass(frozen=True)
class Comparison:
    op: str
    left: Term
    right: Term

    def vars(self) -> set:
        return variables(self.left) | variables(self.right)

    def __str__(self):
        return f"{render(self.left)}{self.op}{render(self.right)}"


Simple = Union[Literal, Comparison]


@dataclass(frozen=True)
class CondLiteral:
    """``literal : c1, ..., cn`` (colon syntax); an empty condition is unconditional."""

    literal: Simple
    condition: tuple = ()

    def vars(self) -> set:
        out = self.literal.vars()
        for c in self.condition:
            out |= c.vars()
        return out

    def __str__(self):
        if not self.condition:
            return str(self.literal)
        return f"{self.literal} : {', '.join(str(c) for c in self.condition)}"


@dataclass(frozen=True)
class CardinalityAtom:
    lower: Optional[int]
    upper: Optional[int]
    elements: tuple
    positive: bool = True

    def vars(self) -> set:
        out = set()
        for e in self.elements:
            out |= e.vars()
        return out

    def __str__(self):
        inner = "; ".join(str(e) for e in self.elements)
        lo = f"{self.lower} " if self.lower is not None else ""
        hi = f" {self.upper}" if self.upper is not None else ""
        text = f"{lo}{{ {inner} }}{hi}"
        return text if self.positive else f"not {text}"


@dataclass(frozen=True)
class RuleStmt:
    """A rule; ``head`` is an atom term, a (choice) :class:`CardinalityAtom`, or None for constraints."""

    head: object
    body: tuple = ()
    line: int = 0

    @property
    def is_choice(self) -> bool:
        return isinstance(self.head, CardinalityAtom)

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    def __str__(self):
        head = "" if self.head is None else (str(self.head) if self.is_choice else render(self.head))
        if not self.body:
            return f"{head}."
        return f"{head} :- {'; '.join(str(b) for b in self.body)}."


@dataclass(frozen=True)
class ExternalStmt:
    atom: Term
    condition: tuple = ()
    line: int = 0

    def __str__(self):
        cond = f" : {', '.join(str(c) for c in self.condition)}" if self.condition else ""
        return f"#external {render(self.atom)}{cond}."


@dataclass
class ProgramAST:
    statements: list = field(default_factory=list)
    externals: list = field(default_factory=list)

    def __add__(self, other: "ProgramAST") -> "ProgramAST":
        return ProgramAST(self.statements + other.statements, self.externals + other.externals)

    def __str__(self):
        return "\n".join(str(s) for s in self.externals + self.statements)
