"""Exhaustive reference solvers.

Every function here follows a definition literally and is exponential by
design; caps guard against accidental use on large inputs.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Optional

from .config import DEFAULT_CAPS
from .errors import ResourceLimitError, UnsupportedInstanceError
from .instances import EXISTS, FORALL, LabeledGraph, ParityGame, QbfInstance
from .program import KCombinedProgram, NormalProgram, _fixpoint

# -- stable models ------------------------------------------------------------


def _subsets(atoms: list) -> Iterable[frozenset]:
    for k in range(len(atoms) + 1):
        for combo in combinations(atoms, k):
            yield frozenset(combo)


def _free_atoms(p: NormalProgram) -> list:
    # atoms that are neither parameters nor heads are false in every stable model
    return sorted(p.parameters | p.head_atoms)


def enum_stable_bf(p: NormalProgram, max_atoms: Optional[int] = None) -> set[frozenset]:
    """All parameterized stable models, by testing every candidate interpretation."""
    cap = max_atoms if max_atoms is not None else DEFAULT_CAPS.bf_max_atoms
    free = _free_atoms(p)
    if len(free) > cap:
        raise ResourceLimitError(f"brute force over {len(free)} atoms exceeds cap {cap}")
    rules = p.rules
    params = p.parameters
    out = set()
    for i in _subsets(free):
        # stable models are models: cheap filter before the fixpoint
        if any(r.head not in i and r.body_holds(i) for r in rules):
            continue
        reduct = [r for r in rules if not (r.neg_body & i)]
        if _fixpoint(reduct, i & params) == i:
            out.add(i)
    return out


def enum_su_bf(c: KCombinedProgram, max_atoms: Optional[int] = None) -> set[frozenset]:
    """All stable-unstable models of a k-combined program, level by level."""
    models = enum_stable_bf(c.outer, max_atoms)
    if c.inner is None:
        return models
    shared = c.shared
    inner_projections = {j & shared for j in enum_su_bf(c.inner, max_atoms)}
    return {i for i in models if (i & shared) not in inner_projections}


# -- extended programs (cardinality semantics by direct counting) --------------


def enum_extended_bf(gp, atoms: Optional[Iterable[str]] = None,
                     max_atoms: Optional[int] = None) -> set[frozenset]:
    """Stable models of a ground extended program without translating it.

    Modelhood counts cardinality elements directly; minimality uses the
    reduct in which negative literals and upper bounds are evaluated against
    the candidate and lower bounds stay monotone.  Conditional body literals
    are not supported.
    """
    from .frontend.extended import GCard, GChoice, GCond, GLit

    cap = max_atoms if max_atoms is not None else DEFAULT_CAPS.bf_max_atoms
    universe = sorted(set(atoms) if atoms is not None else gp.atoms)
    heads = set(gp.externals)
    for r in gp.rules:
        if isinstance(r.head, str):
            heads.add(r.head)
        elif isinstance(r.head, GChoice):
            heads |= {e.literal.atom for e in r.head.elements}
        for b in r.body:
            if isinstance(b, GCond):
                raise UnsupportedInstanceError("conditional body literals are not supported by the oracle")
    free = [a for a in universe if a in heads]
    if len(free) > cap:
        raise ResourceLimitError(f"brute force over {len(free)} atoms exceeds cap {cap}")
    externals = frozenset(gp.externals)

    def is_model(i):
        for r in gp.rules:
            if not r.body_holds(i):
                continue
            if r.head is None:
                return False
            if isinstance(r.head, str):
                if r.head not in i:
                    return False
            else:
                n = sum(1 for e in r.head.elements if e.holds(i))
                if (r.head.lower is not None and n < r.head.lower) or (r.head.upper is not None and n > r.head.upper):
                    return False
        return True

    def reduct(i):
        """Positive rules (head, pos atoms, [(lower, [element pos sets])])."""
        out = []

        def reduce_body(body):
            pos, cards = set(), []
            for b in body:
                if isinstance(b, GLit):
                    if b.positive:
                        pos.add(b.atom)
                    elif b.atom in i:
                        return None
                elif isinstance(b, GCard):
                    if not b.positive:
                        if b.holds(i):
                            continue
                        return None
                    if b.upper is not None and b.count(i) > b.upper:
                        return None
                    elems = []
                    for e in b.elements:
                        if any(not l.positive and l.atom in i for l in e.literals):
                            continue
                        elems.append(frozenset(l.atom for l in e.literals if l.positive))
                    cards.append((b.lower or 0, elems))
            return pos, cards

        for r in gp.rules:
            if r.head is None:
                continue
            body = reduce_body(r.body)
            if body is None:
                continue
            if isinstance(r.head, str):
                out.append((r.head, body))
            else:
                for e in r.head.elements:
                    h = e.literal.atom
                    if h not in i:
                        continue
                    cond = reduce_body(e.condition)
                    if cond is None:
                        continue
                    out.append((h, (body[0] | cond[0], body[1] + cond[1])))
        return out

    def least(rules, facts):
        m = set(facts)
        changed = True
        while changed:
            changed = False
            for h, (pos, cards) in rules:
                if h in m or not pos <= m:
                    continue
                if all(sum(1 for e in elems if e <= m) >= lo for lo, elems in cards):
                    m.add(h)
                    changed = True
        return frozenset(m)

    out = set()
    for i in _subsets(free):
        if is_model(i) and least(reduct(i), i & externals) == i:
            out.add(i)
    return out


# -- QBF -----------------------------------------------------------------------


def eval_qbf_bf(q: QbfInstance, max_vars: Optional[int] = None) -> bool:
    """Truth of ``q`` by game-tree evaluation over the quantifier prefix."""
    cap = max_vars if max_vars is not None else DEFAULT_CAPS.bf_max_qbf_vars
    order = [(quant, v) for quant, vs in q.blocks for v in vs]
    if len(order) > cap:
        raise ResourceLimitError(f"QBF with {len(order)} variables exceeds cap {cap}")
    assignment: dict = {}

    def rec(k: int) -> bool:
        if k == len(order):
            return q.matrix_holds(assignment)
        quant, v = order[k]
        results = []
        for value in (False, True):
            assignment[v] = value
            r = rec(k + 1)
            if quant == EXISTS and r:
                return True
            if quant == FORALL and not r:
                return False
            results.append(r)
        return quant == FORALL

    return rec(0)


# -- parity games ----------------------------------------------------------------


def _positional_strategies(g: ParityGame, player: str) -> list[dict]:
    owned = [n for n in g.nodes if g.owner[n] == player]
    choices = [g.successors(n) for n in owned]
    return [dict(zip(owned, pick)) for pick in product(*choices)]


def play_winner(g: ParityGame, strategy: dict) -> str:
    """Winner of the unique play that follows a combined positional strategy."""
    seen: dict = {}
    path = []
    node = g.initial
    while node not in seen:
        seen[node] = len(path)
        path.append(node)
        node = strategy[node]
    cycle = path[seen[node]:]
    return EXISTS if min(g.priority[n] for n in cycle) % 2 == 0 else FORALL


def strategy_wins(g: ParityGame, strategy: dict, player: str) -> bool:
    """Does a positional strategy of ``player`` beat every positional counter-strategy?"""
    opponent = FORALL if player == EXISTS else EXISTS
    return all(play_winner(g, {**strategy, **counter}) == player
               for counter in _positional_strategies(g, opponent))


def solve_parity_bf(g: ParityGame, max_pairs: Optional[int] = None) -> tuple[str, dict]:
    """Winner from the initial node plus a positional winning strategy for it."""
    g.validate()
    cap = max_pairs if max_pairs is not None else DEFAULT_CAPS.bf_max_strategy_pairs
    total = 1
    for n in g.nodes:
        total *= len(g.successors(n))
    if total > cap:
        raise ResourceLimitError(f"{total} strategy pairs exceed cap {cap}")
    for player in (EXISTS, FORALL):
        for strategy in _positional_strategies(g, player):
            if strategy_wins(g, strategy, player):
                return player, strategy
    raise AssertionError("parity games are determined")


# -- points of no return ----------------------------------------------------------


def _consistent(labels: set) -> bool:
    return not any((var, not sign) in labels for var, sign in labels)


def _simple_paths(g: LabeledGraph, source: str, target: str) -> Iterable[list]:
    """Simple paths (no repeated node) from source to target, as lists of labels."""
    out_arcs: dict = {}
    for u, v, label in g.arcs:
        out_arcs.setdefault(u, []).append((v, label))
    if source == target:
        yield []
        return

    def dfs(node, visited, labels):
        for v, label in out_arcs.get(node, ()):
            if v in visited:
                continue
            if v == target:
                yield labels + [label]
            else:
                yield from dfs(v, visited | {v}, labels + [label])

    yield from dfs(source, {source}, [])


def is_ponr_bf(g: LabeledGraph, max_nodes: Optional[int] = None) -> bool:
    """Is ``g.target`` a point of no return from ``g.initial``?

    Forward and return paths are simple paths (the return path may revisit
    nodes of the forward path); the empty path is the only path from a node
    to itself.
    """
    g.validate()
    cap = max_nodes if max_nodes is not None else DEFAULT_CAPS.bf_max_graph_nodes
    if len(g.nodes) > cap:
        raise ResourceLimitError(f"graph with {len(g.nodes)} nodes exceeds cap {cap}")
    returns = [set(p) for p in _simple_paths(g, g.target, g.initial)]
    for forward in _simple_paths(g, g.initial, g.target):
        labels = set(forward)
        if not _consistent(labels):
            continue
        if not any(_consistent(labels | back) for back in returns):
            return True
    return False
