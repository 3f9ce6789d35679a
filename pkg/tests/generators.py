"""Seeded random instance generators shared by the unit and acceptance tests."""

from __future__ import annotations

import random

from suasp.frontend.extended import GCard, GChoice, GElement, GLit, GroundProgram, GRule
from suasp.instances import EXISTS, FORALL, LabeledGraph, ParityGame, QbfInstance
from suasp.program import KCombinedProgram, NormalProgram, Rule

# Worked example sources: a generator, its tester, and an outer level above both.
EXAMPLE_P1 = """\
{c}.
:- c, d.
:- not c, b.
#external d.
#external b.
"""
EXAMPLE_P2 = """\
0 {a} 1.
b :- a.
#external d.
"""
EXAMPLE_P3 = """\
e :- e.
d :- e.
"""


def _subset(rng: random.Random, pool: list, max_size: int) -> frozenset:
    return frozenset(rng.sample(pool, min(len(pool), rng.randint(0, max_size))))


def random_rules(rng: random.Random, heads: list, atoms: list, n_rules: int,
                 max_body: int = 3) -> list[Rule]:
    if not heads:
        return []
    return [Rule(rng.choice(heads), _subset(rng, atoms, max_body), _subset(rng, atoms, max_body))
            for _ in range(n_rules)]


def random_normal_program(rng: random.Random, max_atoms: int = 10, max_rules: int = 20) -> NormalProgram:
    atoms = [f"a{i}" for i in range(rng.randint(1, max_atoms))]
    params = _subset(rng, atoms, max(1, len(atoms) // 3))
    heads = [a for a in atoms if a not in params]
    rules = random_rules(rng, heads, atoms, rng.randint(0, max_rules))
    return NormalProgram(tuple(rules), frozenset(atoms), params)


def random_combined_program(rng: random.Random, max_atoms: int = 8, max_shared: int = 4,
                            max_rules: int = 12) -> KCombinedProgram:
    """Depth-2 program; at most ``max_atoms`` atoms per level, at most ``max_shared`` of them shared."""
    n_shared = rng.randint(0, max_shared)
    shared = [f"s{i}" for i in range(n_shared)]
    own_g = [f"g{i}" for i in range(rng.randint(0, max_atoms - n_shared))]
    own_t = [f"t{i}" for i in range(rng.randint(0, max_atoms - n_shared))]
    g_atoms = shared + own_g
    t_atoms = shared + own_t
    if not g_atoms:
        g_atoms = own_g = ["g0"]
    params = _subset(rng, g_atoms, 2)
    g_heads = [a for a in g_atoms if a not in params]
    outer = NormalProgram(tuple(random_rules(rng, g_heads, g_atoms, rng.randint(0, max_rules))),
                          frozenset(g_atoms), params)
    t_rules = random_rules(rng, own_t, t_atoms, rng.randint(0, max_rules))
    if own_t:
        # constraint-style rules make the tester reject some shared assignments
        for _ in range(rng.randint(0, 3)):
            fail = rng.choice(own_t)
            t_rules.append(Rule(fail, _subset(rng, t_atoms, 2), _subset(rng, t_atoms, 1) | {fail}))
    inner = NormalProgram(tuple(t_rules), frozenset(t_atoms))
    return KCombinedProgram.chain([outer, inner])


def random_depth3_program(rng: random.Random) -> KCombinedProgram:
    levels = []
    names = [f"x{i}" for i in range(5)]
    for depth in range(3):
        atoms = rng.sample(names, rng.randint(2, 4)) + [f"l{depth}_{i}" for i in range(rng.randint(0, 2))]
        levels.append(atoms)
    programs = []
    for idx, atoms in enumerate(levels):
        blocked = set(levels[idx - 1]) if idx else set()
        params = _subset(rng, atoms, 1) if idx == 0 else frozenset()
        heads = [a for a in atoms if a not in blocked and a not in params]
        programs.append(NormalProgram(tuple(random_rules(rng, heads, atoms, rng.randint(0, 8))),
                                      frozenset(atoms), params))
    return KCombinedProgram.chain(programs)


def random_qbf(rng: random.Random, sizes: list, form: str, max_terms: int, max_width: int = 3) -> QbfInstance:
    variables = list(range(1, sum(sizes) + 1))
    blocks, start = [], 0
    for k, size in enumerate(sizes):
        blocks.append((EXISTS if k % 2 == 0 else FORALL, tuple(variables[start:start + size])))
        start += size
    matrix = []
    for _ in range(rng.randint(0, max_terms)):
        chosen = rng.sample(variables, rng.randint(1, min(max_width, len(variables))))
        matrix.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return QbfInstance(tuple(blocks), tuple(matrix), form)


def random_parity_game(rng: random.Random, max_nodes: int = 6, max_priority: int = 4) -> ParityGame:
    nodes = [f"n{i}" for i in range(rng.randint(1, max_nodes))]
    arcs = {(u, rng.choice(nodes)) for u in nodes}
    arcs |= {(rng.choice(nodes), rng.choice(nodes)) for _ in range(rng.randint(0, len(nodes)))}
    owner = {n: rng.choice((EXISTS, FORALL)) for n in nodes}
    priority = {n: rng.randint(0, max_priority) for n in nodes}
    return ParityGame(tuple(nodes), frozenset(arcs), nodes[0], owner, priority)


def random_labeled_graph(rng: random.Random, max_nodes: int = 8, variables: str = "xyz") -> LabeledGraph:
    nodes = [f"n{i}" for i in range(rng.randint(1, max_nodes))]
    pairs = sorted({(rng.choice(nodes), rng.choice(nodes)) for _ in range(rng.randint(0, 2 * len(nodes)))})
    arcs = [(u, v, (rng.choice(variables), rng.random() < 0.5)) for u, v in pairs]
    return LabeledGraph(tuple(nodes), tuple(arcs), nodes[0], rng.choice(nodes))


def random_extended_program(rng: random.Random, max_atoms: int = 8, max_bound: int = 3) -> GroundProgram:
    """Ground program with choice rules, constraints and cardinality body atoms."""
    atoms = [f"p{i}" for i in range(rng.randint(1, max_atoms))]
    externals = _subset(rng, atoms, 2)
    heads = [a for a in atoms if a not in externals] or None

    def lit() -> GLit:
        return GLit(rng.choice(atoms), rng.random() < 0.7)

    def elements(pool_heads: bool) -> tuple:
        out = []
        for _ in range(rng.randint(1, 3)):
            head = GLit(rng.choice(heads)) if pool_heads else lit()
            cond = tuple(lit() for _ in range(rng.randint(0, 1)))
            out.append(GElement(head, cond))
        return tuple(out)

    def bounds() -> tuple:
        lower = rng.choice([None, rng.randint(0, max_bound)])
        upper = rng.choice([None, rng.randint(0, max_bound)])
        if lower is not None and upper is not None and lower > upper:
            lower, upper = upper, lower
        return lower, upper

    def body() -> tuple:
        items = [lit() for _ in range(rng.randint(0, 2))]
        if rng.random() < 0.5:
            items.append(GCard(*bounds(), elements(False), rng.random() < 0.8))
        return tuple(items)

    rules = []
    for _ in range(rng.randint(1, 6)):
        kind = rng.random()
        if heads is None or kind < 0.2:
            rules.append(GRule(None, body()))
        elif kind < 0.55:
            rules.append(GRule(GChoice(*bounds(), elements(True)), body()))
        else:
            rules.append(GRule(rng.choice(heads), body()))
    return GroundProgram(tuple(rules), externals, frozenset(), frozenset(atoms))
