"""Fact representation of ground normal programs.

Predicates (each suffixed with ``_<role>`` when a role is given):
``a(A)`` atom, ``r(R)`` rule, ``p(A)`` parameter, ``h(R,A)`` head,
``pb(R,A)`` positive body atom, ``nb(R,A)`` negative body atom.  Atoms are
written as the ground terms they name; rules are numbered ``r1, r2, ...``
in program order.
"""

from __future__ import annotations

from typing import Optional

from ..errors import ContractError, ParseError
from ..program import NormalProgram, Rule

PREDICATES = ("a", "r", "p", "h", "pb", "nb")


def _is_term_name(name: str) -> bool:
    from ..frontend.parser import parse
    from ..frontend.syntax import is_ground, render

    try:
        ast = parse(f"{name}.")
    except ParseError:
        return False
    if len(ast.statements) != 1 or ast.statements[0].body:
        return False
    head = ast.statements[0].head
    return is_ground(head) and render(head) == name


def _pred(name: str, role: Optional[str]) -> str:
    return f"{name}_{role}" if role else name


def reify(p: NormalProgram, role: Optional[str] = "g") -> str:
    """Facts describing ``p``; atom names must be ground terms so they can be read back."""
    for name in p.vocabulary:
        if not _is_term_name(name):
            raise ContractError(f"atom name {name!r} is not a ground term and cannot be reified")
    a, r, par, h, pb, nb = (_pred(x, role) for x in PREDICATES)
    lines = [f"{a}({name})." for name in sorted(p.vocabulary)]
    lines += [f"{par}({name})." for name in sorted(p.parameters)]
    for idx, rl in enumerate(p.rules, start=1):
        rid = f"r{idx}"
        lines.append(f"{r}({rid}).")
        lines.append(f"{h}({rid},{rl.head}).")
        lines += [f"{pb}({rid},{b})." for b in sorted(rl.pos_body)]
        lines += [f"{nb}({rid},{b})." for b in sorted(rl.neg_body)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_reified(text: str, role: Optional[str] = "g") -> NormalProgram:
    """Inverse of :func:`reify` for the same role; facts for other roles are ignored."""
    from ..frontend.parser import parse
    from ..frontend.syntax import Fn, render

    names = {_pred(x, role): x for x in PREDICATES}
    atoms, params, rule_ids = set(), set(), []
    heads: dict = {}
    pos: dict = {}
    neg: dict = {}
    for stmt in parse(text).statements:
        head = stmt.head
        if stmt.body or not isinstance(head, Fn):
            raise ParseError(f"expected a reified fact, got '{stmt}'", stmt.line, 1)
        kind = names.get(head.name)
        if kind is None:
            continue
        args = [render(x) for x in head.args]
        arity = 1 if kind in ("a", "r", "p") else 2
        if len(args) != arity:
            raise ParseError(f"{head.name} expects {arity} argument(s)", stmt.line, 1)
        if kind == "a":
            atoms.add(args[0])
        elif kind == "p":
            params.add(args[0])
        elif kind == "r":
            rule_ids.append(args[0])
        elif kind == "h":
            if args[0] in heads:
                raise ParseError(f"rule {args[0]} has two heads", stmt.line, 1)
            heads[args[0]] = args[1]
        else:
            (pos if kind == "pb" else neg).setdefault(args[0], set()).add(args[1])
    known = set(rule_ids)
    for table in (heads, pos, neg):
        stray = set(table) - known
        if stray:
            raise ContractError(f"rule identifiers without r/1 fact: {sorted(stray)}")

    def order(rid: str):
        return (0, int(rid[1:])) if rid[:1] == "r" and rid[1:].isdigit() else (1, rid)

    rules = []
    for rid in sorted(known, key=order):
        if rid not in heads:
            raise ContractError(f"rule {rid} has no head")
        rules.append(Rule(heads[rid], frozenset(pos.get(rid, ())), frozenset(neg.get(rid, ()))))
    return NormalProgram(tuple(rules), frozenset(atoms), frozenset(params))
