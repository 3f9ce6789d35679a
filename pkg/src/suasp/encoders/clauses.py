"""Clause sets and QBFs as (combined) normal programs.

A propositional variable ``n`` becomes the atom ``v<n>``; its complement
``_su_not(v<n>)`` closes the even negative loop that lets ``v<n>`` be
guessed freely.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from ..errors import ContractError, UnsupportedInstanceError
from ..instances import EXISTS, FORALL, QbfInstance
from ..program import FRESH_PREFIX, KCombinedProgram, NormalProgram, Rule


def var_atom(n: int) -> str:
    return f"v{n}"


def _complement(n: int) -> str:
    return f"{FRESH_PREFIX}not({var_atom(n)})"


def _lit_body(lits: Iterable[int], negate: bool = False) -> tuple[set, set]:
    pos, neg = set(), set()
    for lit in lits:
        positive = (lit > 0) != negate
        (pos if positive else neg).add(var_atom(abs(lit)))
    return pos, neg


def _guess(variables: Iterable[int]) -> list[Rule]:
    rules = []
    for n in variables:
        rules.append(Rule(var_atom(n), (), {_complement(n)}))
        rules.append(Rule(_complement(n), (), {var_atom(n)}))
    return rules


def _clause_constraints(clauses: Sequence[Sequence[int]], tag: str = "") -> list[Rule]:
    rules = []
    for k, clause in enumerate(clauses):
        fail = f"{FRESH_PREFIX}fail({tag}{k})"
        pos, neg = _lit_body(clause, negate=True)
        rules.append(Rule(fail, pos, neg | {fail}))
    return rules


def _cube_rules(cubes: Sequence[Sequence[int]]) -> list[Rule]:
    rules = []
    for cube in cubes:
        pos, neg = _lit_body(cube)
        rules.append(Rule("sat", pos, neg))
    rules.append(Rule("fail", {"sat"}, {"fail"}))
    return rules


def encode_clauses(cnf: Sequence[Sequence[int]], variables: Optional[Iterable[int]] = None) -> NormalProgram:
    """Program whose stable models, restricted to ``v<n>`` atoms, are the satisfying assignments."""
    names = set(variables or ()) | {abs(l) for c in cnf for l in c}
    if 0 in names:
        raise ContractError("0 is not a variable")
    rules = _guess(sorted(names)) + _clause_constraints(cnf)
    return NormalProgram.build(rules)


def encode_sat_unsat(c1: Sequence[Sequence[int]], c2: Sequence[Sequence[int]]) -> KCombinedProgram:
    """Independent combined program with a stable-unstable model iff c1 is satisfiable and c2 is not."""
    v1 = {abs(l) for c in c1 for l in c}
    v2 = {abs(l) for c in c2 for l in c}
    if v1 & v2:
        raise ContractError(f"clause sets share variables {sorted(v1 & v2)}; rename them apart first")
    c = KCombinedProgram.chain([encode_clauses(c1), encode_clauses(c2)])
    assert not c.shared
    return c


def encode_qbf2(q: QbfInstance) -> KCombinedProgram:
    """Combined program for an exists-forall QBF with a DNF matrix."""
    if q.form != "dnf":
        raise UnsupportedInstanceError("the exists-forall encoding needs a DNF matrix")
    if [quant for quant, _ in q.blocks] != [EXISTS, FORALL]:
        raise UnsupportedInstanceError("expected exactly one exists block followed by one forall block")
    return encode_qbfk(q)


def encode_qbfk(q: QbfInstance) -> KCombinedProgram:
    """k-combined program (k = number of blocks) that has a stable-unstable model iff ``q`` is valid.

    Level i guesses block i and sees the variables of blocks 1..i.  The
    innermost level tests the matrix: a CNF is enforced by constraints when
    k is odd, and when k is even the DNF derives ``sat`` which is then
    forbidden, so that level succeeds exactly when the matrix can be
    falsified.
    """
    quants = [quant for quant, _ in q.blocks]
    if not quants or quants[0] != EXISTS:
        raise UnsupportedInstanceError("the prefix must start with an exists block")
    for a, b in zip(quants, quants[1:]):
        if a == b:
            raise UnsupportedInstanceError("quantifier blocks must alternate; canonicalize first")
    if any(not vs for _, vs in q.blocks):
        raise UnsupportedInstanceError("empty quantifier block; canonicalize first")
    k = len(q.blocks)
    wanted = "cnf" if k % 2 == 1 else "dnf"
    if q.form != wanted:
        raise UnsupportedInstanceError(f"a {k}-block prefix needs a {wanted.upper()} matrix")
    programs = []
    seen: list[int] = []
    for level, (_, vs) in enumerate(q.blocks, start=1):
        rules = _guess(vs)
        if level == k:
            rules += _clause_constraints(q.matrix) if wanted == "cnf" else _cube_rules(q.matrix)
        seen += list(vs)
        programs.append(NormalProgram.build(rules, extra_vocabulary=[var_atom(n) for n in seen]))
    return KCombinedProgram.chain(programs)
