import random

import pytest

from generators import EXAMPLE_P1, EXAMPLE_P2, EXAMPLE_P3, random_parity_game
from suasp.errors import ResourceLimitError
from suasp.frontend import assemble
from suasp.frontend.extended import GCard, GChoice, GElement, GLit, GroundProgram, GRule
from suasp.instances import EXISTS, FORALL, LabeledGraph, ParityGame, QbfInstance
from suasp.oracle import (
    enum_extended_bf,
    enum_stable_bf,
    enum_su_bf,
    eval_qbf_bf,
    is_ponr_bf,
    play_winner,
    solve_parity_bf,
    strategy_wins,
)
from suasp.program import KCombinedProgram, NormalProgram, rule


def visible(models, program):
    return {frozenset(m & program.visible) for m in models}


@pytest.fixture(scope="module")
def example():
    return assemble([EXAMPLE_P2, EXAMPLE_P1])


def test_stable_models_of_worked_example(example):
    p2, p1 = example.outer, example.inner.outer
    assert visible(enum_stable_bf(p1), p1) == {frozenset("d"), frozenset("bc"), frozenset(), frozenset("c")}
    assert visible(enum_stable_bf(p2), p2) == {frozenset("dab"), frozenset("d"), frozenset("ab"), frozenset()}


def test_empty_program_has_the_empty_model():
    assert enum_stable_bf(NormalProgram()) == {frozenset()}


def test_cap_is_enforced():
    atoms = [f"a{i}" for i in range(6)]
    p = NormalProgram.build([rule(a, neg=[a + "x"]) for a in atoms] + [rule(a + "x", neg=[a]) for a in atoms])
    with pytest.raises(ResourceLimitError):
        enum_stable_bf(p, max_atoms=5)


def test_su_models_of_examples(example):
    assert visible(enum_su_bf(example), example.outer) == {frozenset("dab")}
    assert enum_su_bf(assemble([EXAMPLE_P3, EXAMPLE_P2, EXAMPLE_P1])) == {frozenset()}


def test_inconsistent_independent_tester_accepts_everything():
    outer = NormalProgram.build([rule("a", neg=["b"]), rule("b", neg=["a"])])
    c = KCombinedProgram.chain([outer, NormalProgram.build([rule("f", neg=["f"])])])
    assert enum_su_bf(c) == enum_stable_bf(outer) == {frozenset("a"), frozenset("b")}


def test_depth_one_su_models_are_stable_models(example):
    single = KCombinedProgram(example.outer)
    assert enum_su_bf(single) == enum_stable_bf(example.outer)


def test_extended_oracle_counts_cardinality_directly():
    elems = (GElement(GLit("p")), GElement(GLit("q")))
    gp = GroundProgram((GRule(GChoice(1, 1, elems)),))
    assert enum_extended_bf(gp) == {frozenset("p"), frozenset("q")}
    # r holds when at least two of p, q hold
    gp2 = GroundProgram((GRule(GChoice(None, None, elems)), GRule("r", (GCard(2, None, elems),))))
    assert frozenset({"p", "q", "r"}) in enum_extended_bf(gp2)
    assert frozenset({"p", "r"}) not in enum_extended_bf(gp2)


def test_qbf_examples():
    q = QbfInstance(((EXISTS, (1,)), (FORALL, (2,))), ((1, 2), (1, -2)))
    assert eval_qbf_bf(q)
    assert not eval_qbf_bf(QbfInstance(((EXISTS, (1,)), (FORALL, (2,))), ((1, 2),)))
    assert not eval_qbf_bf(QbfInstance(((EXISTS, (1,)),), ()))
    with pytest.raises(ResourceLimitError):
        eval_qbf_bf(QbfInstance(((EXISTS, tuple(range(1, 18))),), ()))


def one_node(priority):
    return ParityGame(("v",), {("v", "v")}, "v", {"v": EXISTS}, {"v": priority})


def test_parity_examples():
    assert solve_parity_bf(one_node(0))[0] == EXISTS
    assert solve_parity_bf(one_node(1))[0] == FORALL
    g = ParityGame(("v0", "u"), {("v0", "v0"), ("v0", "u"), ("u", "u")}, "v0",
                   {"v0": EXISTS, "u": FORALL}, {"v0": 1, "u": 2})
    winner, strategy = solve_parity_bf(g)
    assert winner == EXISTS and strategy == {"v0": "u"}
    assert play_winner(g, {"v0": "v0", "u": "u"}) == FORALL


def test_parity_witness_strategies_win():
    rng = random.Random(11)
    for _ in range(40):
        g = random_parity_game(rng)
        winner, strategy = solve_parity_bf(g)
        assert strategy_wins(g, strategy, winner)
        loser = FORALL if winner == EXISTS else EXISTS
        assert not any(strategy_wins(g, s, loser) for s in _all_strategies(g, loser))


def _all_strategies(g, player):
    from suasp.oracle import _positional_strategies

    return _positional_strategies(g, player)


def test_ponr_examples():
    assert is_ponr_bf(LabeledGraph(("s", "v"), (("s", "v", ("x", True)), ("v", "s", ("x", False))), "s", "v"))
    assert not is_ponr_bf(LabeledGraph(("s", "v"), (("s", "v", ("x", True)), ("v", "s", ("x", True))), "s", "v"))
    # unreachable target is not a point of no return
    assert not is_ponr_bf(LabeledGraph(("s", "v"), (), "s", "v"))
    # inconsistent forward path does not count
    g = LabeledGraph(("s", "m", "v"), (("s", "m", ("x", True)), ("m", "v", ("x", False))), "s", "v")
    assert not is_ponr_bf(g)


def test_ponr_cap():
    nodes = tuple(f"n{i}" for i in range(11))
    with pytest.raises(ResourceLimitError):
        is_ponr_bf(LabeledGraph(nodes, (), "n0", "n1"))
