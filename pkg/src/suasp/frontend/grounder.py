"""Bottom-up instantiation of safe non-ground programs.

The Herbrand base is over-approximated by a semi-naive fixpoint in which
negative literals, cardinality atoms and conditional literals are ignored.
Every ground atom written literally in the program belongs to the base as
well, so propositional atoms without defining rules stay in the vocabulary.
Rules are then instantiated over that base and simplified against the atoms
that are certainly true (derived by definite rules from facts).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from ..config import DEFAULT_CAPS
from ..errors import GroundingError, GroundingTypeError, ResourceLimitError
from .extended import GCard, GChoice, GCond, GElement, GLit, GroundProgram, GRule
from .syntax import (
    Arith,
    CardinalityAtom,
    Comparison,
    CondLiteral,
    ExternalStmt,
    Fn,
    Literal,
    ProgramAST,
    RuleStmt,
    Var,
    is_ground,
    render,
    signature,
)


# -- terms ------------------------------------------------------------------

def evaluate(term, subst: dict):
    """Instantiate ``term`` under ``subst`` and evaluate arithmetic."""
    if isinstance(term, Var):
        try:
            return subst[term.name]
        except KeyError:
            raise GroundingError(f"unbound variable {term.name}") from None
    if isinstance(term, Fn):
        return Fn(term.name, tuple(evaluate(a, subst) for a in term.args))
    if isinstance(term, Arith):
        left, right = evaluate(term.left, subst), evaluate(term.right, subst)
        if not isinstance(left, int) or not isinstance(right, int):
            raise GroundingTypeError(f"arithmetic on non-integer terms: {render(left)}{term.op}{render(right)}")
        if term.op == "+":
            return left + right
        if term.op == "-":
            return left - right
        if term.op == "*":
            return left * right
        if right == 0:
            raise GroundingError(f"division by zero in {render(term)}")
        if term.op == "/":
            return int(left / right)
        return left - right * int(left / right)
    return term


def compare(op: str, left, right) -> bool:
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    if not isinstance(left, int) or not isinstance(right, int):
        raise GroundingTypeError(f"comparison {op} on non-integer terms: {render(left)}, {render(right)}")
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    return left >= right


def match(pattern, value, subst: dict) -> Optional[dict]:
    if isinstance(pattern, Var):
        bound = subst.get(pattern.name, _UNBOUND)
        if bound is _UNBOUND:
            out = dict(subst)
            out[pattern.name] = value
            return out
        return subst if bound == value else None
    if isinstance(pattern, Fn):
        if not isinstance(value, Fn) or value.name != pattern.name or len(value.args) != len(pattern.args):
            return None
        for p, v in zip(pattern.args, value.args):
            subst = match(p, v, subst)
            if subst is None:
                return None
        return subst
    return subst if pattern == value else None


_UNBOUND = object()


# -- atom store -------------------------------------------------------------

class _AtomBase:
    """Possible atoms, indexed by signature and by (signature, argument, value)."""

    def __init__(self, limit: int):
        self.limit = limit
        self.by_sig: dict = defaultdict(list)
        self.by_arg: dict = defaultdict(list)
        self.names: set = set()

    def add(self, atom) -> bool:
        name = render(atom)
        if name in self.names:
            return False
        self.names.add(name)
        if len(self.names) > self.limit:
            raise ResourceLimitError(f"grounding exceeds max_ground_atoms={self.limit}")
        sig = signature(atom)
        self.by_sig[sig].append(atom)
        if isinstance(atom, Fn):
            for i, arg in enumerate(atom.args):
                self.by_arg[(sig, i, arg)].append(atom)
        return True

    def candidates(self, pattern, subst: dict) -> list:
        sig = signature(pattern)
        if isinstance(pattern, Fn):
            for i, arg in enumerate(pattern.args):
                if isinstance(arg, Var):
                    if arg.name in subst:
                        return self.by_arg.get((sig, i, subst[arg.name]), [])
                elif is_ground(arg):
                    return self.by_arg.get((sig, i, arg), [])
        return self.by_sig.get(sig, [])


def _join(lits: list, comparisons: list, subst: dict, base: _AtomBase,
          pinned: Optional[tuple] = None) -> Iterator[dict]:
    """Enumerate substitutions matching positive ``lits`` and satisfying ``comparisons``.

    ``pinned=(k, atoms)`` restricts literal ``k`` to ``atoms`` (semi-naive delta).
    """
    pending = [c for c in comparisons]

    def check(s, remaining):
        keep = []
        for c in remaining:
            if c.vars() <= s.keys():
                if not compare(c.op, evaluate(c.left, s), evaluate(c.right, s)):
                    return None
            else:
                keep.append(c)
        return keep

    def rec(k: int, s: dict, remaining: list):
        if k == len(lits):
            if remaining:
                unbound = sorted(set().union(*(c.vars() for c in remaining)) - s.keys())
                raise GroundingError(f"unsafe comparison, unbound variables {unbound}")
            yield s
            return
        pattern = lits[k].atom
        source = pinned[1] if pinned is not None and pinned[0] == k else base.candidates(pattern, s)
        for atom in source:
            s2 = match(pattern, atom, s)
            if s2 is None:
                continue
            rem = check(s2, remaining)
            if rem is None:
                continue
            yield from rec(k + 1, s2, rem)

    first = check(subst, pending)
    if first is None:
        return
    yield from rec(0, subst, first)


def _split(items: Iterable) -> tuple[list, list]:
    lits, comps = [], []
    for item in items:
        if isinstance(item, Comparison):
            comps.append(item)
        elif isinstance(item, Literal) and item.positive:
            lits.append(item)
    return lits, comps


# -- raw instances ------------------------------------------------------------

@dataclass
class _Instance:
    head: object  # atom name, ("choice", lower, upper, [(name, [GLit])]), or None
    pos: list = field(default_factory=list)
    neg: list = field(default_factory=list)
    conds: list = field(default_factory=list)  # list of list of (literal GLit|bool, [GLit])
    cards: list = field(default_factory=list)  # (lower, upper, positive, [(GLit, [GLit])])


def _ground_condition(cond: tuple, extra: list, subst: dict, base: _AtomBase) -> Iterator[tuple[dict, list]]:
    lits, comps = _split(tuple(extra) + tuple(cond))
    for s in _join(lits, comps, subst, base):
        glits = []
        for c in cond:
            if isinstance(c, Literal):
                glits.append(GLit(render(evaluate(c.atom, s)), c.positive))
        yield s, glits


def _ground_simple(lit, s: dict):
    if isinstance(lit, Comparison):
        return compare(lit.op, evaluate(lit.left, s), evaluate(lit.right, s))
    return GLit(render(evaluate(lit.atom, s)), lit.positive)


class Grounder:
    def __init__(self, ast: ProgramAST, max_ground_atoms: Optional[int] = None):
        self.ast = ast
        self.base = _AtomBase(max_ground_atoms or DEFAULT_CAPS.max_ground_atoms)
        self.rules: list[RuleStmt] = list(ast.statements)
        self.externals: list[ExternalStmt] = list(ast.externals)

    # phase 1: possible atoms
    def _units(self) -> list:
        """(positive literals, comparisons, head atom term) triples deriving possible atoms."""
        units = []
        for stmt in self.rules:
            lits, comps = _split(stmt.body)
            if stmt.is_choice:
                for element in stmt.head.elements:
                    clits, ccomps = _split(element.condition)
                    units.append((lits + clits, comps + ccomps, element.literal.atom))
            elif stmt.head is not None:
                units.append((lits, comps, stmt.head))
        for ext in self.externals:
            lits, comps = _split(ext.condition)
            units.append((lits, comps, ext.atom))
        return units

    def possible_atoms(self) -> None:
        for stmt in self.rules:
            for atom in _literal_ground_atoms(stmt):
                self.base.add(atom)
        units = self._units()
        pending = []
        for lits, comps, head in units:
            if not lits:
                pending.extend(evaluate(head, s) for s in _join(lits, comps, {}, self.base))
        for atom in pending:
            self.base.add(atom)
        delta = {sig: list(atoms) for sig, atoms in self.base.by_sig.items()}
        while delta:
            pending = []
            for lits, comps, head in units:
                for k, lit in enumerate(lits):
                    d = delta.get(signature(lit.atom))
                    if d:
                        pending.extend(evaluate(head, s)
                                       for s in _join(lits, comps, {}, self.base, pinned=(k, d)))
            new: dict = defaultdict(list)
            for atom in pending:
                if self.base.add(atom):
                    new[signature(atom)].append(atom)
            delta = new

    # phase 2: instances
    def instances(self) -> Iterator[_Instance]:
        for stmt in self.rules:
            lits, comps = _split(stmt.body)
            for s in _join(lits, comps, {}, self.base):
                inst = self._instantiate(stmt, s)
                if inst is not None:
                    yield inst

    def _instantiate(self, stmt: RuleStmt, s: dict) -> Optional[_Instance]:
        inst = _Instance(head=None)
        for item in stmt.body:
            if isinstance(item, Literal):
                name = render(evaluate(item.atom, s))
                (inst.pos if item.positive else inst.neg).append(name)
            elif isinstance(item, CondLiteral):
                expansion = []
                for s2, glits in _ground_condition(item.condition, [], s, self.base):
                    expansion.append((_ground_simple(item.literal, s2), glits))
                inst.conds.append(expansion)
            elif isinstance(item, CardinalityAtom):
                elements = []
                for element in item.elements:
                    extra = [element.literal] if isinstance(element.literal, Literal) and element.literal.positive else []
                    for s2, glits in _ground_condition(element.condition, extra, s, self.base):
                        elements.append((_ground_simple(element.literal, s2), glits))
                inst.cards.append((item.lower, item.upper, item.positive, elements))
        if stmt.is_choice:
            elements = []
            for element in stmt.head.elements:
                for s2, glits in _ground_condition(element.condition, [], s, self.base):
                    elements.append((render(evaluate(element.literal.atom, s2)), glits))
            inst.head = ("choice", stmt.head.lower, stmt.head.upper, elements)
        elif stmt.head is not None:
            inst.head = render(evaluate(stmt.head, s))
        return inst

    def ground_externals(self) -> set:
        out = set()
        for ext in self.externals:
            lits, comps = _split(ext.condition)
            for s in _join(lits, comps, {}, self.base):
                out.add(render(evaluate(ext.atom, s)))
        return out

    def run(self) -> GroundProgram:
        self.possible_atoms()
        possible = self.base.names
        raw = list(self.instances())
        externals = self.ground_externals()
        certain = _certain_atoms(raw, possible)
        rules = [GRule(a) for a in sorted(certain)]
        seen = set(rules)
        for inst in raw:
            if isinstance(inst.head, str) and inst.head in certain:
                continue
            r = _simplify(inst, certain, possible)
            if r is not None and r not in seen:
                seen.add(r)
                rules.append(r)
        return GroundProgram(tuple(rules), frozenset(externals), frozenset(certain))


def _literal_ground_atoms(stmt: RuleStmt) -> Iterator:
    def from_simple(lit):
        if isinstance(lit, Literal) and is_ground(lit.atom):
            yield lit.atom

    def from_cond(cond: CondLiteral):
        yield from from_simple(cond.literal)
        for c in cond.condition:
            yield from from_simple(c)

    if stmt.is_choice:
        for e in stmt.head.elements:
            yield from from_cond(e)
    elif stmt.head is not None and is_ground(stmt.head):
        yield stmt.head
    for item in stmt.body:
        if isinstance(item, CardinalityAtom):
            for e in item.elements:
                yield from from_cond(e)
        elif isinstance(item, CondLiteral):
            yield from from_cond(item)
        else:
            yield from from_simple(item)


# -- certainty and simplification ---------------------------------------------

_TRUE, _FALSE, _UNKNOWN = 1, -1, 0


def _lit_status(lit, certain: set, possible: set) -> int:
    if isinstance(lit, bool):
        return _TRUE if lit else _FALSE
    if lit.positive:
        if lit.atom in certain:
            return _TRUE
        return _UNKNOWN if lit.atom in possible else _FALSE
    if lit.atom in certain:
        return _FALSE
    return _UNKNOWN if lit.atom in possible else _TRUE


def _resolve_condition(glits: list, certain: set, possible: set) -> Optional[list]:
    """Remaining uncertain condition literals, or None when the condition is certainly false."""
    rest = []
    for c in glits:
        st = _lit_status(c, certain, possible)
        if st == _FALSE:
            return None
        if st == _UNKNOWN:
            rest.append(c)
    return rest


def _resolve_cond_literal(expansion: list, certain: set, possible: set):
    """Resolve a conditional body literal: returns (status, residual GCond/GLit items)."""
    residual = []
    for lit, glits in expansion:
        rest = _resolve_condition(glits, certain, possible)
        if rest is None:
            continue
        st = _lit_status(lit, certain, possible)
        if st == _TRUE:
            continue
        if not rest:
            if st == _FALSE:
                return _FALSE, []
            residual.append(lit)
        else:
            residual.append(GCond(None if st == _FALSE else lit, tuple(rest)))
    return (_TRUE if not residual else _UNKNOWN), residual


def _certain_atoms(raw: list, possible: set) -> set:
    certain: set = set()
    candidates = [i for i in raw if isinstance(i.head, str) and not i.cards]
    changed = True
    while changed:
        changed = False
        for inst in candidates:
            if inst.head in certain:
                continue
            if not all(a in certain for a in inst.pos):
                continue
            if any(a in possible for a in inst.neg):
                continue
            if all(_resolve_cond_literal(e, certain, possible)[0] == _TRUE for e in inst.conds):
                certain.add(inst.head)
                changed = True
    return certain


def _simplify(inst: _Instance, certain: set, possible: set) -> Optional[GRule]:
    body: list = []
    for a in inst.pos:
        if a not in certain:
            body.append(GLit(a, True))
    for a in inst.neg:
        if a in certain:
            return None
        if a in possible:
            body.append(GLit(a, False))
    for expansion in inst.conds:
        status, residual = _resolve_cond_literal(expansion, certain, possible)
        if status == _FALSE:
            return None
        body.extend(residual)
    for lower, upper, positive, elements in inst.cards:
        kept = []
        for lit, glits in elements:
            rest = _resolve_condition(glits, certain, possible)
            if rest is None or _lit_status(lit, certain, possible) == _FALSE:
                continue
            kept.append(GElement(lit, tuple(rest)))
        body.append(GCard(lower, upper, tuple(kept), positive))
    head = inst.head
    if isinstance(head, tuple):
        _, lower, upper, elements = head
        kept = []
        for name, glits in elements:
            rest = _resolve_condition(glits, certain, possible)
            if rest is None:
                continue
            kept.append(GElement(GLit(name), tuple(rest)))
        head = GChoice(lower, upper, tuple(kept))
    return GRule(head, tuple(body))


def ground(ast: ProgramAST, facts: Optional[ProgramAST] = None,
           max_ground_atoms: Optional[int] = None) -> GroundProgram:
    """Instantiate ``ast`` together with ``facts`` into a ground extended program."""
    program = ast if facts is None else ast + facts
    return Grounder(program, max_ground_atoms).run()
