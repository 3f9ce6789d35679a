"""Non-ground generator/tester templates for parity games and points of no return."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..instances import EXISTS, FORALL, LabeledGraph, ParityGame, QbfInstance
from ..errors import UnsupportedInstanceError
from .clauses import var_atom

PARITY_GENERATOR = """\
1 { eStrategy(X,Y) : arc(X,Y) } 1 :- existNode(X).
"""

PARITY_TESTER = """\
#external eStrategy(X,Y) : arc(X,Y).
1 { uStrategy(X,Y) : arc(X,Y) } 1 :- univNode(X).
next(X,Y) :- eStrategy(X,Y).
next(X,Y) :- uStrategy(X,Y).
r(X) :- init(X).
r(Y) :- r(X), next(X,Y).
inf(V) :- init(V), next(X,V), r(X).
inf(X) :- next(Y,X), next(Z,X), r(Y), r(Z), Y != Z.
inf(Y) :- inf(X), next(X,Y).
infNum(N) :- omega(X,N), inf(X).
num(N) :- omega(X,N).
minNum(N) :- num(N), N <= M : num(M).
nextNum(N,M) :- num(N), num(M), N < M, M <= P : num(P), N < P.
nonMin(M) :- infNum(N), nextNum(N,M).
nonMin(M) :- nonMin(N), nextNum(N,M).
min(N) :- infNum(N), not nonMin(N).
:- min(N), N \\ 2 = 0.
"""

PONR_GENERATOR = """\
0 { pick_g(X,Y) } 1 :- arc(X,Y,L).
:- pick_g(X,Y), pick_g(X2,Y2), arc(X,Y,pos(A)), arc(X2,Y2,neg(A)).
r_g(X) :- init(X).
r_g(Y) :- r_g(X), pick_g(X,Y).
:- not r_g(X), pick_g(X,Y).
:- ponr(X), not r_g(X).
:- ponr(X), pick_g(X,Y).
:- pick_g(X,Y), pick_g(X,Z), Y != Z.
:- pick_g(X,Y), pick_g(Z,Y), X != Z.
"""

PONR_TESTER = """\
#external pick_g(X,Y) : arc(X,Y,L).
0 { pick_t(X,Y) } 1 :- arc(X,Y,L).
pick(X,Y) :- pick_t(X,Y).
pick(X,Y) :- pick_g(X,Y).
:- pick(X,Y), pick(X2,Y2), arc(X,Y,pos(A)), arc(X2,Y2,neg(A)).
r_t(X) :- ponr(X).
r_t(Y) :- r_t(X), pick_t(X,Y).
:- not r_t(X), pick_t(X,Y).
:- init(X), not r_t(X).
:- init(X), pick_t(X,Y).
:- pick_t(X,Y), pick_t(X,Z), Y != Z.
:- pick_t(X,Y), pick_t(Z,Y), X != Z.
"""


@dataclass(frozen=True)
class Encoding:
    """Component texts (generator first) plus the instance facts appended to each."""

    components: tuple
    instance: str

    def assemble(self, max_ground_atoms: Optional[int] = None):
        from ..frontend.assemble import assemble

        return assemble(self.components, self.instance, max_ground_atoms)


def encode_parity(g: ParityGame) -> Encoding:
    return Encoding((PARITY_GENERATOR, PARITY_TESTER), g.validate().to_facts())


def encode_ponr(g: LabeledGraph) -> Encoding:
    return Encoding((PONR_GENERATOR, PONR_TESTER), g.validate().to_facts())


TOP = "top"


def qbf_to_ponr(q: QbfInstance) -> LabeledGraph:
    """Graph in which ``v<n>`` (n = number of exists variables) is a point of no return iff ``q`` is valid.

    Every arc carries a single literal.  A two-way choice between ``x`` and
    ``not x`` goes through two intermediate nodes so that no node pair has
    two arcs; arcs that should be unlabeled carry the literal ``top``, which
    is never negated.  The arc for the negated matrix becomes one gadget per
    cube, each offering a branch for every negated literal of the cube.
    The zero-exists-variable case is degenerate (start and target coincide).
    """
    if [quant for quant, _ in q.blocks] != [EXISTS, FORALL] or q.form != "dnf":
        raise UnsupportedInstanceError("the reduction needs an exists-forall prefix with a DNF matrix")
    xs, ys = q.blocks[0][1], q.blocks[1][1]
    names = {var_atom(v) for v in q.variables}
    if TOP in names:
        raise UnsupportedInstanceError("variable name clashes with the top label")
    n, m = len(xs), len(ys)
    nodes = [f"n{i}" for i in range(n + m + 2)]
    arcs = []

    def choice(i: int, u: str, v: str, var: int) -> None:
        for sign, tag in ((True, "p"), (False, "m")):
            mid = f"c{i}{tag}"
            nodes.append(mid)
            arcs.append((u, mid, (var_atom(var), sign)))
            arcs.append((mid, v, (TOP, True)))

    for i, x in enumerate(xs, start=1):
        choice(i, nodes[i - 1], nodes[i], x)
    start, end = nodes[n], nodes[n + 1]
    if not q.matrix:
        arcs.append((start, end, (TOP, True)))
    for j, cube in enumerate(q.matrix, start=1):
        left = start if j == 1 else f"g{j - 1}"
        right = end if j == len(q.matrix) else f"g{j}"
        if right != end:
            nodes.append(right)
        for k, lit in enumerate(sorted(set(cube), key=lambda l: (abs(l), l)), start=1):
            mid = f"d{j}_{k}"
            nodes.append(mid)
            arcs.append((left, mid, (var_atom(abs(lit)), lit < 0)))
            arcs.append((mid, right, (TOP, True)))
    for j, y in enumerate(ys, start=1):
        choice(n + j, nodes[n + j], nodes[n + j + 1], y)
    arcs.append((nodes[n + m + 1], nodes[0], (TOP, True)))
    return LabeledGraph(tuple(nodes), tuple(arcs), nodes[0], nodes[n]).validate()
