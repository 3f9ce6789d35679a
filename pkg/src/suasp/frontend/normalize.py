"""Translation of ground extended programs into normal programs.

* choice element ``h : C`` under body ``B``:  ``h :- B, C, not h'`` and ``h' :- not h``
* cardinality atom over elements ``e1..en``: a sequential counting ladder
  ``cnt(i,j)`` ("at least j of e1..ei hold") plus one atom for the bounds
* constraint ``:- B``:  ``f :- not f, B`` with a fresh ``f`` per constraint
* residual conditional literal ``l : C``: a fresh atom true iff ``C`` fails or ``l`` holds

Auxiliary atoms are named ``_su_<kind>(...)`` and therefore never shared.
"""

from __future__ import annotations

from typing import Iterable, Optional

from ..program import FRESH_PREFIX, NormalProgram, Rule
from .extended import GCard, GChoice, GCond, GElement, GLit, GroundProgram, GRule


class FreshNames:
    """Deterministic fresh atom names that never collide with ``taken``."""

    def __init__(self, taken: Iterable[str] = ()):
        self.taken = set(taken)

    def make(self, kind: str, *args) -> str:
        inner = ",".join(str(a) for a in args)
        name = f"{FRESH_PREFIX}{kind}({inner})" if args else f"{FRESH_PREFIX}{kind}"
        bump = 0
        candidate = name
        while candidate in self.taken:
            bump += 1
            candidate = f"{FRESH_PREFIX}{kind}({inner},{bump})" if args else f"{FRESH_PREFIX}{kind}({bump})"
        self.taken.add(candidate)
        return candidate


class _Normalizer:
    def __init__(self, gp: GroundProgram):
        self.gp = gp
        self.fresh = FreshNames(gp.atoms)
        self.rules: list[Rule] = []
        self.complement: dict[str, str] = {}
        self.n_fail = 0
        self.n_card = 0
        self.n_cond = 0

    def run(self) -> NormalProgram:
        for r in self.gp.rules:
            self.rule(r)
        return NormalProgram.build(self.rules, extra_vocabulary=self.gp.atoms)

    def rule(self, r: GRule) -> None:
        body = self.body(r.body)
        if body is None:
            return
        pos, neg = body
        if isinstance(r.head, str):
            self.rules.append(Rule(r.head, pos, neg))
        elif r.head is None:
            fail = self.fresh.make("fail", self.n_fail)
            self.n_fail += 1
            self.rules.append(Rule(fail, pos, neg | {fail}))
        else:
            self.choice(r.head, r.body, pos, neg)

    def choice(self, head: GChoice, body: tuple, pos: frozenset, neg: frozenset) -> None:
        for element in head.elements:
            h = element.literal.atom
            cond = self.body(element.condition)
            if cond is None:
                continue
            comp = self.complement.get(h)
            if comp is None:
                comp = self.fresh.make("not", h)
                self.complement[h] = comp
                self.rules.append(Rule(comp, (), {h}))
            self.rules.append(Rule(h, pos | cond[0], neg | cond[1] | {comp}))
        n = len(head.elements)
        lower = head.lower if head.lower is not None and head.lower > 0 else None
        upper = head.upper if head.upper is not None and head.upper < n else None
        if lower is not None or upper is not None:
            bound = GCard(lower, upper, head.elements, positive=False)
            self.rule(GRule(None, tuple(body) + (bound,)))

    def body(self, items: Iterable) -> Optional[tuple[frozenset, frozenset]]:
        """Compile body items to (positive, negative) atom sets; None if the body is false."""
        pos: set = set()
        neg: set = set()
        for item in items:
            if isinstance(item, GLit):
                (pos if item.positive else neg).add(item.atom)
            elif isinstance(item, GCard):
                lit = self.card(item)
                if lit is True:
                    continue
                if lit is False:
                    return None
                (pos if lit.positive else neg).add(lit.atom)
            elif isinstance(item, GCond):
                pos.add(self.cond(item))
            else:
                raise TypeError(f"unsupported body item {item!r}")
        return frozenset(pos), frozenset(neg)

    def cond(self, item: GCond) -> str:
        aux = self.fresh.make("cond", self.n_cond)
        self.n_cond += 1
        for c in item.condition:
            self.rules.append(Rule(aux, (), {c.atom}) if c.positive else Rule(aux, {c.atom}, ()))
        if item.literal is not None:
            lit = item.literal
            self.rules.append(Rule(aux, {lit.atom}, ()) if lit.positive else Rule(aux, (), {lit.atom}))
        return aux

    def card(self, card: GCard):
        """Literal for ``card`` (GLit), or a constant True/False when the bounds decide it."""
        n = len(card.elements)
        lower = card.lower if card.lower is not None and card.lower > 0 else None
        upper = card.upper if card.upper is not None and card.upper < n else None
        if lower is not None and lower > n:
            return not card.positive
        if lower is None and upper is None:
            return card.positive
        k = self.n_card
        self.n_card += 1
        threshold = max(lower or 0, (upper + 1) if upper is not None else 0)
        ge = self.ladder(k, card.elements, threshold)
        holds = self.fresh.make("card", k)
        pos, neg = set(), set()
        if lower is not None:
            pos.add(ge[lower])
        if upper is not None:
            neg.add(ge[upper + 1])
        self.rules.append(Rule(holds, pos, neg))
        return GLit(holds, card.positive)

    def ladder(self, k: int, elements: tuple, threshold: int) -> dict[int, str]:
        """Atoms ``ge[j]`` (1 <= j <= threshold) true iff at least j elements hold."""
        prev: dict[int, str] = {}
        for i, element in enumerate(elements, start=1):
            ep, en = self.body(element.literals)
            cur: dict[int, str] = {}
            for j in range(1, min(i, threshold) + 1):
                atom = self.fresh.make("cnt", k, i, j)
                cur[j] = atom
                if j in prev:
                    self.rules.append(Rule(atom, {prev[j]}, ()))
                if j == 1:
                    self.rules.append(Rule(atom, ep, en))
                elif j - 1 in prev:
                    self.rules.append(Rule(atom, ep | {prev[j - 1]}, en))
            prev = cur
        return prev


def normalize(gp: GroundProgram) -> NormalProgram:
    """Normal program equivalent to ``gp`` on its original atoms (no parameters set)."""
    return _Normalizer(gp).run()
