import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import EXAMPLE_P1, EXAMPLE_P2, random_normal_program, random_parity_game, random_qbf
from suasp.encoders import (
    combined_sources,
    encode_clauses,
    encode_parity,
    encode_ponr,
    encode_qbf2,
    encode_qbfk,
    encode_sat_unsat,
    parse_reified,
    qbf_to_ponr,
    reify,
)
from suasp.encoders.templates import PARITY_GENERATOR, PARITY_TESTER
from suasp.engine import Engine
from suasp.errors import ContractError, UnsupportedInstanceError
from suasp.frontend import assemble, parse
from suasp.instances import EXISTS, FORALL, LabeledGraph, ParityGame, QbfInstance
from suasp.oracle import eval_qbf_bf, is_ponr_bf
from suasp.program import NormalProgram, rule
from suasp.su import SuSearch, solve


def ef(cubes, xs=(1,), ys=(2,)):
    return QbfInstance(((EXISTS, xs), (FORALL, ys)), cubes, "dnf")


def test_qbf2_valid_instance_yields_witness():
    q = ef(((1, 2), (1, -2)))
    model = solve(encode_qbf2(q))
    assert model is not None and "v1" in model


def test_qbf2_invalid_and_empty():
    assert solve(encode_qbf2(ef(((1, 2),)))) is None
    assert solve(encode_qbf2(ef(()))) is None


def test_qbf2_shape():
    c = encode_qbf2(ef(((1, 2),)))
    assert c.shared == {"v1"}
    assert rule("fail", ["sat"], ["fail"]) in c.inner.outer.rules
    assert rule("v1", neg=["_su_not(v1)"]) in c.outer.rules


def test_qbf2_input_errors():
    with pytest.raises(UnsupportedInstanceError):
        encode_qbf2(QbfInstance(((EXISTS, (1,)), (FORALL, (2,))), ((1,),), "cnf"))
    with pytest.raises(UnsupportedInstanceError):
        encode_qbf2(QbfInstance(((FORALL, (1,)), (EXISTS, (2,))), ((1,),), "dnf"))


def test_qbfk_agrees_with_qbf2_at_depth_two():
    q = ef(((1, -2),))
    assert encode_qbfk(q) == encode_qbf2(q)


def test_qbfk_single_block_is_satisfiability():
    sat = QbfInstance(((EXISTS, (1, 2)),), ((1, 2), (-1,)), "cnf")
    unsat = QbfInstance(((EXISTS, (1,)),), ((1,), (-1,)), "cnf")
    assert encode_qbfk(sat).depth == 1
    assert solve(encode_qbfk(sat)) & {"v1", "v2"} == {"v2"}
    assert solve(encode_qbfk(unsat)) is None


def test_qbfk_rejects_bad_prefixes():
    with pytest.raises(UnsupportedInstanceError):
        encode_qbfk(QbfInstance(((EXISTS, (1,)), (EXISTS, (2,))), (), "dnf"))
    with pytest.raises(UnsupportedInstanceError):
        encode_qbfk(QbfInstance(((EXISTS, (1,)), (FORALL, (2,)), (EXISTS, (3,))), (), "dnf"))


def test_qbfk_depth_three_and_four_match_evaluation():
    rng = random.Random(41)
    for _ in range(50):
        q = random_qbf(rng, [rng.randint(1, 2) for _ in range(3)], "cnf", 6)
        assert (solve(encode_qbfk(q)) is not None) == eval_qbf_bf(q)
    for _ in range(30):
        q = random_qbf(rng, [1, 1, 1, 1], "dnf", 5)
        assert (solve(encode_qbfk(q)) is not None) == eval_qbf_bf(q)


def models_on(p, atoms):
    return {m & atoms for m in Engine(p).enumerate()}


def test_encode_clauses_examples():
    assert models_on(encode_clauses([(1, -2)]), {"v1", "v2"}) == {frozenset(), frozenset({"v1"}),
                                                                 frozenset({"v1", "v2"})}
    assert models_on(encode_clauses([(1,), ()]), {"v1"}) == set()
    assert models_on(encode_clauses([], variables=[1]), {"v1"}) == {frozenset(), frozenset({"v1"})}


def test_sat_unsat_examples():
    assert solve(encode_sat_unsat([(1,)], [(2,), (-2,)])) is not None
    assert solve(encode_sat_unsat([(1,), (-1,)], [(2,)])) is None
    assert solve(encode_sat_unsat([(1,)], [(2,)])) is None
    assert encode_sat_unsat([(1,)], [(2,)]).independent
    with pytest.raises(ContractError):
        encode_sat_unsat([(1,)], [(1,)])


def self_loop(priority):
    return ParityGame(("v",), {("v", "v")}, "v", {"v": EXISTS}, {"v": priority})


def test_parity_examples():
    assert solve(encode_parity(self_loop(0)).assemble()) is not None
    assert solve(encode_parity(self_loop(1)).assemble()) is None
    with pytest.raises(UnsupportedInstanceError):
        encode_parity(ParityGame(("v", "u"), {("v", "u")}, "v", {"v": EXISTS, "u": EXISTS}, {"v": 0, "u": 0}))


def test_parity_encoding_size_is_linear():
    rng = random.Random(43)
    template_size = len(parse(PARITY_GENERATOR).statements) + len(parse(PARITY_TESTER).statements)
    for _ in range(20):
        g = random_parity_game(rng)
        enc = encode_parity(g)
        assert len(parse(enc.components[0]).statements) + len(parse(enc.components[1]).statements) == template_size
        assert len(parse(enc.instance).statements) == 2 * len(g.nodes) + len(g.arcs) + 1


def graph(arcs, s="s", v="v"):
    nodes = sorted({s, v} | {u for u, _, _ in arcs} | {w for _, w, _ in arcs})
    return LabeledGraph(tuple(nodes), tuple(arcs), s, v)


def test_ponr_examples():
    assert solve(encode_ponr(graph([("s", "v", ("x", True)), ("v", "s", ("x", False))])).assemble()) is not None
    assert solve(encode_ponr(graph([("s", "v", ("x", True)), ("v", "s", ("x", True))])).assemble()) is None
    with pytest.raises(UnsupportedInstanceError):
        encode_ponr(graph([("s", "v", ("x", True)), ("s", "v", ("y", True))]))


def test_qbf_to_ponr_examples():
    assert not is_ponr_bf(qbf_to_ponr(ef(((1, 2),))), max_nodes=50)
    assert is_ponr_bf(qbf_to_ponr(ef(((1,),))), max_nodes=50)
    degenerate = QbfInstance(((EXISTS, ()), (FORALL, (1,))), ((),), "dnf")
    g = qbf_to_ponr(degenerate)
    assert g.initial == g.target and not is_ponr_bf(g, max_nodes=50)


def test_qbf_to_ponr_matches_evaluation():
    rng = random.Random(44)
    for _ in range(30):
        q = random_qbf(rng, [rng.randint(1, 3), rng.randint(1, 3)], "dnf", 3)
        g = qbf_to_ponr(q)
        assert is_ponr_bf(g, max_nodes=len(g.nodes)) == eval_qbf_bf(q)


def test_qbf_to_ponr_rejects_other_prefixes():
    with pytest.raises(UnsupportedInstanceError):
        qbf_to_ponr(QbfInstance(((EXISTS, (1,)),), ((1,),), "dnf"))


def test_reify_example():
    p = NormalProgram.build([rule("b", ["a"])], parameters=["a"])
    facts = set(reify(p, None).split())
    assert facts == {"r(r1).", "a(a).", "a(b).", "p(a).", "h(r1,b).", "pb(r1,a)."}
    assert reify(NormalProgram((), frozenset({"c"})), None) == "a(c).\n"


def test_reify_role_suffix_and_round_trip():
    c = assemble([EXAMPLE_P2, EXAMPLE_P1])
    p1 = c.inner.outer
    text = reify(p1, "t")
    assert "a_t(_su_not(c))." in text.split()
    assert parse_reified(text, "t") == p1
    both = reify(c.outer, "g") + text
    assert parse_reified(both, "g") == c.outer


def test_reify_rejects_unreadable_names():
    with pytest.raises(ContractError):
        reify(NormalProgram((), frozenset({"not a term"})))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000))
def test_reify_round_trip_on_random_programs(seed):
    p = random_normal_program(random.Random(seed))
    assert parse_reified(reify(p)) == p


def test_rendered_sources_reassemble():
    rng = random.Random(45)
    for _ in range(20):
        q = random_qbf(rng, [2, 2, 1], "cnf", 4)
        c = encode_qbfk(q)
        again = assemble(combined_sources(c))
        assert again.depth == c.depth
        assert [lvl.parameters for lvl in again.levels] == [lvl.parameters for lvl in c.levels]
        assert (solve(again) is not None) == (solve(c) is not None) == eval_qbf_bf(q)
