"""Counterexample-guided search for stable-unstable models of k-combined programs.

The outer engine proposes parameterized stable models.  Each candidate is
handed to the level below, restricted to the shared atoms; when that level
has a (stable-unstable) model agreeing with it, every outer candidate with
the same shared projection is refuted at once by a blocking clause.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

from .engine import Engine
from .errors import ContractError
from .program import KCombinedProgram, is_stable, is_stable_unstable


@dataclass
class SuStats:
    candidates: int = 0
    refutations: int = 0
    inner_calls: int = 0


class SuSearch:
    """Search state for one k-combined program; inner engines stay warm across calls."""

    def __init__(self, program: KCombinedProgram, seed: int = 0):
        self.program = program
        self.engine = Engine(program.outer, seed)
        self.shared = sorted(program.shared)
        self.inner: Optional[SuSearch] = None
        self.tester: Optional[Engine] = None
        if program.inner is not None:
            if program.inner.depth == 1:
                self.tester = Engine(program.inner.outer, seed)
            else:
                self.inner = SuSearch(program.inner, seed)
        self.stats = SuStats()
        self.refuted: set[frozenset] = set()

    def _inner_agrees(self, assignment: Mapping[str, bool]) -> bool:
        self.stats.inner_calls += 1
        if self.tester is not None:
            return self.tester.has_model_under(assignment)
        return self.inner.has_model_under(assignment)

    def next_model(self, assumptions: Optional[Mapping[str, bool]] = None) -> Optional[frozenset]:
        """A stable-unstable model consistent with ``assumptions`` and not blocked, or None."""
        while True:
            candidate = self.engine.next_model(assumptions)
            if candidate is None:
                return None
            self.stats.candidates += 1
            if self.program.inner is None:
                return candidate
            projection = {a: a in candidate for a in self.shared}
            if not self._inner_agrees(projection):
                return candidate
            # refuted projections stay refuted under any later assumptions
            self.stats.refutations += 1
            self.refuted.add(frozenset(a for a, v in projection.items() if v))
            self.engine.block(projection)

    def has_model_under(self, assignment: Mapping[str, bool]) -> bool:
        return self.next_model(assignment) is not None

    def solve(self) -> Optional[frozenset]:
        return self.next_model()

    def enumerate_su(self, limit: Optional[int] = None,
                     projection: Optional[Iterable[str]] = None) -> Iterator[frozenset]:
        """Pairwise-distinct stable-unstable models (distinct on ``projection``, default the whole vocabulary)."""
        if limit is not None and limit < 0:
            raise ContractError("limit must be non-negative")
        proj = sorted(self.program.outer.vocabulary if projection is None else set(projection))
        count = 0
        while limit is None or count < limit:
            model = self.next_model()
            if model is None:
                return
            count += 1
            yield model
            self.engine.block({a: a in model for a in proj})

    def check(self, i: Iterable[str]) -> bool:
        """Is ``i`` a stable-unstable model?  Uses fresh engines, so blocking state is irrelevant."""
        i = frozenset(i)
        if not i <= self.program.outer.vocabulary:
            raise ContractError("interpretation must be a subset of the outer vocabulary")
        return is_stable_unstable(self.program, i, oracle=_engine_oracle)


def _engine_oracle(inner: KCombinedProgram, assignment: Mapping[str, bool]) -> bool:
    return SuSearch(inner).has_model_under(assignment)


def solve(c: KCombinedProgram, seed: int = 0) -> Optional[frozenset]:
    return SuSearch(c, seed).solve()


def enumerate_su(c: KCombinedProgram, limit: Optional[int] = None, seed: int = 0,
                 projection: Optional[Iterable[str]] = None) -> list[frozenset]:
    return list(SuSearch(c, seed).enumerate_su(limit, projection))


def check(c: KCombinedProgram, i: Iterable[str]) -> bool:
    return SuSearch(c).check(i)


def complete(c: KCombinedProgram, visible: Iterable[str]) -> Optional[frozenset]:
    """Extend a set of visible outer atoms to a full outer stable model, if one exists.

    Auxiliary atoms are not written by users; the extension fixes every
    visible atom and lets the engine choose the rest.
    """
    visible = frozenset(visible)
    outer = c.outer
    unknown = visible - outer.vocabulary
    if unknown:
        return None
    engine = Engine(outer)
    model = engine.next_model({a: a in visible for a in sorted(outer.visible)})
    if model is not None:
        assert is_stable(outer, model)
    return model
