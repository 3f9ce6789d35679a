import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import EXAMPLE_P1, EXAMPLE_P2, EXAMPLE_P3, random_combined_program, random_depth3_program
from suasp.frontend import assemble
from suasp.oracle import enum_su_bf
from suasp.program import KCombinedProgram, NormalProgram, is_stable_unstable, rule
from suasp.su import SuSearch, check, complete, enumerate_su, solve


@pytest.fixture(scope="module")
def example():
    return assemble([EXAMPLE_P2, EXAMPLE_P1])


def test_solve_examples(example):
    assert solve(example) & example.outer.visible == {"d", "a", "b"}
    assert solve(assemble([EXAMPLE_P3, EXAMPLE_P2, EXAMPLE_P1])) == frozenset()
    single = assemble([EXAMPLE_P1])
    assert solve(single) & single.outer.visible in [frozenset("d"), frozenset("bc"), frozenset(), frozenset("c")]


def test_enumerate_examples(example):
    assert [m & example.outer.visible for m in enumerate_su(example)] == [{"d", "a", "b"}]
    assert enumerate_su(example, limit=0) == []
    with pytest.raises(ValueError):
        list(SuSearch(example).enumerate_su(-1))


def test_unsatisfiable_tester_admits_every_generator_model():
    gen = NormalProgram.build([rule("a", neg=["b"]), rule("b", neg=["a"])])
    c = KCombinedProgram.chain([gen, NormalProgram.build([rule("f", neg=["f"])])])
    assert set(enumerate_su(c)) == {frozenset("a"), frozenset("b")}


def test_check_examples(example):
    assert check(example, {"d", "a", "b"})
    assert not check(example, {"d", "_su_not(a)"})
    search = SuSearch(example)
    assert not search.check({"b"})
    assert search.stats.inner_calls == 0


def test_complete_fills_auxiliary_atoms(example):
    full = complete(example, {"d"})
    assert full == {"d", "_su_not(a)"}
    assert complete(example, {"b"}) is None
    assert complete(example, {"zz"}) is None


def test_refuted_projections_have_no_su_model():
    rng = random.Random(31)
    for _ in range(60):
        c = random_combined_program(rng)
        search = SuSearch(c)
        list(search.enumerate_su())
        models = enum_su_bf(c)
        for refuted in search.refuted:
            assert all(m & c.shared != refuted for m in models)


combined = st.integers(0, 100_000).map(lambda s: random_combined_program(random.Random(s)))


@settings(max_examples=150, deadline=None)
@given(combined)
def test_depth_two_matches_definition(c):
    got = list(SuSearch(c).enumerate_su())
    assert len(got) == len(set(got))
    assert set(got) == enum_su_bf(c)
    assert all(is_stable_unstable(c, m) for m in got)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_depth_three_matches_definition(seed):
    c = random_depth3_program(random.Random(seed))
    assert c.depth == 3
    assert set(SuSearch(c).enumerate_su()) == enum_su_bf(c)


def test_inner_state_stays_warm(example):
    search = SuSearch(example)
    list(search.enumerate_su())
    assert search.stats.refutations == 3
    assert search.tester.stats.models >= 3
