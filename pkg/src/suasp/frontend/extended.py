"""Ground extended programs: the grounder's output and the normalizer's input.

A body item is a :class:`GLit`, a :class:`GCard` (cardinality atom, possibly
negated) or a :class:`GCond` (conditional literal ``l : c1, ..., cn`` that
still depends on non-fact conditions).  Cardinality elements and choice
elements carry a ground condition; an element counts when its literal and
all its condition literals hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


@dataclass(frozen=True)
class GLit:
    atom: str
    positive: bool = True

    def holds(self, interpretation) -> bool:
        return (self.atom in interpretation) == self.positive

    def __str__(self):
        return self.atom if self.positive else f"not {self.atom}"


@dataclass(frozen=True)
class GElement:
    literal: GLit
    condition: tuple = ()

    @property
    def literals(self) -> tuple:
        return (self.literal,) + tuple(self.condition)

    def holds(self, interpretation) -> bool:
        return all(l.holds(interpretation) for l in self.literals)

    def __str__(self):
        if not self.condition:
            return str(self.literal)
        return f"{self.literal} : {', '.join(str(c) for c in self.condition)}"


@dataclass(frozen=True)
class GCard:
    lower: Optional[int]
    upper: Optional[int]
    elements: tuple
    positive: bool = True

    def count(self, interpretation) -> int:
        return sum(1 for e in self.elements if e.holds(interpretation))

    def within_bounds(self, interpretation) -> bool:
        n = self.count(interpretation)
        return (self.lower is None or self.lower <= n) and (self.upper is None or n <= self.upper)

    def holds(self, interpretation) -> bool:
        return self.within_bounds(interpretation) == self.positive

    @property
    def atoms(self) -> set:
        return {l.atom for e in self.elements for l in e.literals}

    def __str__(self):
        lo = f"{self.lower} " if self.lower is not None else ""
        hi = f" {self.upper}" if self.upper is not None else ""
        text = f"{lo}{{ {'; '.join(str(e) for e in self.elements)} }}{hi}"
        return text if self.positive else f"not {text}"


@dataclass(frozen=True)
class GCond:
    literal: GLit
    condition: tuple

    def holds(self, interpretation) -> bool:
        return self.literal.holds(interpretation) or not all(c.holds(interpretation) for c in self.condition)

    def __str__(self):
        return f"{self.literal} : {', '.join(str(c) for c in self.condition)}"


@dataclass(frozen=True)
class GChoice:
    lower: Optional[int]
    upper: Optional[int]
    elements: tuple

    def __str__(self):
        lo = f"{self.lower} " if self.lower is not None else ""
        hi = f" {self.upper}" if self.upper is not None else ""
        return f"{lo}{{ {'; '.join(str(e) for e in self.elements)} }}{hi}"


BodyItem = Union[GLit, GCard, GCond]


@dataclass(frozen=True)
class GRule:
    head: Union[str, GChoice, None]
    body: tuple = ()

    def body_holds(self, interpretation) -> bool:
        return all(b.holds(interpretation) for b in self.body)

    @property
    def atoms(self) -> set:
        out = set()
        if isinstance(self.head, str):
            out.add(self.head)
        elif isinstance(self.head, GChoice):
            for e in self.head.elements:
                out |= {l.atom for l in e.literals}
        for b in self.body:
            if isinstance(b, GLit):
                out.add(b.atom)
            elif isinstance(b, GCard):
                out |= b.atoms
            else:
                out |= {b.literal.atom} | {c.atom for c in b.condition}
        return out

    def __str__(self):
        head = "" if self.head is None else str(self.head)
        if not self.body:
            return f"{head}."
        return f"{head} :- {', '.join(str(b) for b in self.body)}."


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple = ()
    externals: frozenset = frozenset()
    facts: frozenset = frozenset()
    atoms: frozenset = field(default=frozenset())

    def __post_init__(self):
        atoms = set(self.atoms) | set(self.externals) | set(self.facts)
        for r in self.rules:
            atoms |= r.atoms
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "atoms", frozenset(atoms))
        object.__setattr__(self, "externals", frozenset(self.externals))
        object.__setattr__(self, "facts", frozenset(self.facts))

    def __str__(self):
        lines = [f"#external {a}." for a in sorted(self.externals)]
        lines += [str(r) for r in self.rules]
        return "\n".join(lines)
