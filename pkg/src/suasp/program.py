"""Ground normal programs and their definition-level semantics.

Atoms are identified by name (the rendering of a ground term such as
``arc(v1,v2)``).  Names that start with :data:`FRESH_PREFIX` belong to
auxiliary atoms introduced by normalization or encoders; they are part of a
program's vocabulary but never shared between the levels of a combined
program and never printed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional

from .errors import ContractError, SemanticsError

FRESH_PREFIX = "_su_"

Interpretation = frozenset  # frozenset[str] of true atoms


def is_fresh(name: str) -> bool:
    return name.startswith(FRESH_PREFIX)


@dataclass(frozen=True)
class Atom:
    id: int
    name: str


class SymbolTable:
    """Bijection between atom names and dense integer ids (starting at 1)."""

    def __init__(self, names: Iterable[str] = ()):
        self._ids: dict[str, int] = {}
        self._atoms: list[Atom] = []
        for name in names:
            self.add(name)

    def add(self, name: str) -> Atom:
        if not name:
            raise ContractError("atom names must be non-empty")
        atom_id = self._ids.get(name)
        if atom_id is not None:
            return self._atoms[atom_id - 1]
        atom = Atom(len(self._atoms) + 1, name)
        self._ids[name] = atom.id
        self._atoms.append(atom)
        return atom

    def id(self, name: str) -> int:
        return self._ids[name]

    def name(self, atom_id: int) -> str:
        return self._atoms[atom_id - 1].name

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._atoms)

    def __iter__(self):
        return iter(self._atoms)


@dataclass(frozen=True)
class Rule:
    head: Optional[str]
    pos_body: frozenset = frozenset()
    neg_body: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pos_body", frozenset(self.pos_body))
        object.__setattr__(self, "neg_body", frozenset(self.neg_body))

    @property
    def atoms(self) -> frozenset:
        head = {self.head} if self.head is not None else set()
        return frozenset(head) | self.pos_body | self.neg_body

    def body_holds(self, interpretation: frozenset) -> bool:
        return self.pos_body <= interpretation and not (self.neg_body & interpretation)

    def __str__(self) -> str:
        body = sorted(self.pos_body) + [f"not {b}" for b in sorted(self.neg_body)]
        head = self.head or ""
        if not body:
            return f"{head}."
        return f"{head} :- {', '.join(body)}."


def rule(head: Optional[str], pos: Iterable[str] = (), neg: Iterable[str] = ()) -> Rule:
    return Rule(head, frozenset(pos), frozenset(neg))


@dataclass(frozen=True)
class NormalProgram:
    rules: tuple = ()
    vocabulary: frozenset = frozenset()
    parameters: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "vocabulary", frozenset(self.vocabulary))
        object.__setattr__(self, "parameters", frozenset(self.parameters))
        for r in self.rules:
            if r.head is None:
                raise ContractError(f"normal rule without head: {r}")
        if not self.parameters <= self.vocabulary:
            missing = sorted(self.parameters - self.vocabulary)
            raise ContractError(f"parameters outside vocabulary: {missing}")
        occurring = self.occurring_atoms
        if not occurring <= self.vocabulary:
            missing = sorted(occurring - self.vocabulary)
            raise ContractError(f"atoms outside vocabulary: {missing}")
        in_heads = self.head_atoms & self.parameters
        if in_heads:
            raise SemanticsError(f"parameter atoms occur in rule heads: {sorted(in_heads)}")

    @classmethod
    def build(
        cls,
        rules: Iterable[Rule],
        parameters: Iterable[str] = (),
        extra_vocabulary: Iterable[str] = (),
    ) -> "NormalProgram":
        """Program whose vocabulary is the occurring atoms plus the given extras."""
        rules = tuple(rules)
        parameters = frozenset(parameters)
        vocab = set(extra_vocabulary) | parameters
        for r in rules:
            vocab |= r.atoms
        return cls(rules, frozenset(vocab), parameters)

    @property
    def occurring_atoms(self) -> frozenset:
        out: set = set()
        for r in self.rules:
            out |= r.atoms
        return frozenset(out)

    @property
    def head_atoms(self) -> frozenset:
        return frozenset(r.head for r in self.rules)

    @property
    def visible(self) -> frozenset:
        """Vocabulary without auxiliary (fresh) atoms."""
        return frozenset(a for a in self.vocabulary if not is_fresh(a))

    @property
    def is_positive(self) -> bool:
        return all(not r.neg_body for r in self.rules)

    def with_parameters(self, parameters: Iterable[str]) -> "NormalProgram":
        return NormalProgram(self.rules, self.vocabulary, frozenset(parameters))

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.rules)


@dataclass(frozen=True)
class KCombinedProgram:
    """A normal program nested over an optional inner combined program."""

    outer: NormalProgram
    inner: Optional["KCombinedProgram"] = None
    depth: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "depth", 1 if self.inner is None else 1 + self.inner.depth)
        if self.inner is not None:
            expected = self.shared
            got = self.inner.outer.parameters
            if got != expected:
                raise SemanticsError(
                    "inner parameters must equal the shared vocabulary: "
                    f"expected {sorted(expected)}, got {sorted(got)}"
                )

    @property
    def vocabulary(self) -> frozenset:
        return self.outer.vocabulary

    @property
    def shared(self) -> frozenset:
        if self.inner is None:
            return frozenset()
        return self.outer.visible & self.inner.outer.visible

    @property
    def independent(self) -> bool:
        return self.inner is not None and not self.shared

    @property
    def levels(self) -> list[NormalProgram]:
        out, node = [], self
        while node is not None:
            out.append(node.outer)
            node = node.inner
        return out

    @classmethod
    def chain(cls, programs: Iterable[NormalProgram]) -> "KCombinedProgram":
        """Nest programs (outermost first), setting each inner parameter set to the shared atoms."""
        programs = list(programs)
        if not programs:
            raise ContractError("need at least one program")
        node = None
        for i in range(len(programs) - 1, -1, -1):
            prog = programs[i]
            if i > 0:
                shared = programs[i - 1].visible & prog.visible
                prog = prog.with_parameters(shared)
            node = cls(prog, node)
        return node


def _check_interpretation(p: NormalProgram, i: Iterable[str]) -> frozenset:
    i = frozenset(i)
    if not i <= p.vocabulary:
        raise ContractError(f"interpretation outside vocabulary: {sorted(i - p.vocabulary)}")
    return i


def reduct(p: NormalProgram, i: Iterable[str]) -> NormalProgram:
    i = _check_interpretation(p, i)
    kept = tuple(Rule(r.head, r.pos_body) for r in p.rules if not (r.neg_body & i))
    return NormalProgram(kept, p.vocabulary, p.parameters)


def least_model(p: NormalProgram, fixed_params: Iterable[str] = ()) -> frozenset:
    """Least model of a positive program extended with the given parameter facts."""
    fixed = frozenset(fixed_params)
    if not p.is_positive:
        raise ContractError("least_model requires a positive program")
    if not fixed <= p.parameters:
        raise ContractError(f"fixed atoms are not parameters: {sorted(fixed - p.parameters)}")
    return _fixpoint(p.rules, fixed)


def _fixpoint(rules: Iterable[Rule], facts: Iterable[str]) -> frozenset:
    missing: list[int] = []
    watch: dict[str, list[int]] = {}
    heads: list[str] = []
    model: set = set()
    queue: deque = deque()
    for idx, r in enumerate(rules):
        heads.append(r.head)
        missing.append(len(r.pos_body))
        for a in r.pos_body:
            watch.setdefault(a, []).append(idx)
        if not r.pos_body:
            queue.append(r.head)
    queue.extend(facts)
    while queue:
        a = queue.popleft()
        if a in model:
            continue
        model.add(a)
        for idx in watch.get(a, ()):
            missing[idx] -= 1
            if missing[idx] == 0:
                queue.append(heads[idx])
    return frozenset(model)


def is_model(p: NormalProgram, i: Iterable[str]) -> bool:
    i = _check_interpretation(p, i)
    return all(r.head in i for r in p.rules if r.body_holds(i))


def is_stable(p: NormalProgram, i: Iterable[str]) -> bool:
    i = _check_interpretation(p, i)
    return least_model(reduct(p, i), i & p.parameters) == i


SuOracle = Callable[["KCombinedProgram", Mapping[str, bool]], bool]


def is_stable_unstable(c: KCombinedProgram, i: Iterable[str], oracle: Optional[SuOracle] = None) -> bool:
    """Decide stable-unstable membership of ``i``.

    ``oracle(inner, assignment)`` must report whether ``inner`` has a
    stable-unstable model agreeing with the total ``assignment`` over the
    shared atoms.  When omitted, the recursive definition is evaluated with
    :func:`default_oracle` (exponential).
    """
    i = _check_interpretation(c.outer, i)
    if not is_stable(c.outer, i):
        return False
    if c.inner is None:
        return True
    oracle = oracle or default_oracle
    assignment = {a: a in i for a in c.shared}
    return not oracle(c.inner, assignment)


def default_oracle(inner: KCombinedProgram, assignment: Mapping[str, bool]) -> bool:
    from .oracle import enum_stable_bf

    for j in enum_stable_bf(inner.outer):
        if all((a in j) == v for a, v in assignment.items()) and is_stable_unstable(inner, j):
            return True
    return False
