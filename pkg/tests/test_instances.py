import pytest

from suasp.errors import ParseError, UnsupportedInstanceError
from suasp.instances import (
    EXISTS,
    FORALL,
    LabeledGraph,
    ParityGame,
    QbfInstance,
    format_qdimacs,
    parse_parity_facts,
    parse_ponr_facts,
    parse_qdimacs,
)


def test_qdimacs_round_trip():
    text = "c matrix: dnf\np dnf 3 2\ne 1 0\na 2 3 0\n1 2 0\n-1 -3 0\n"
    q = parse_qdimacs(text)
    assert q.form == "dnf"
    assert q.blocks == ((EXISTS, (1,)), (FORALL, (2, 3)))
    assert q.matrix == ((1, 2), (-1, -3))
    assert parse_qdimacs(format_qdimacs(q)) == q


def test_qdimacs_defaults_to_cnf_and_reports_errors():
    assert parse_qdimacs("p cnf 1 1\ne 1 0\n1 0\n").form == "cnf"
    with pytest.raises(ParseError):
        parse_qdimacs("e 1 0\n1 x 0\n")
    with pytest.raises(ParseError):
        parse_qdimacs("e 1 0\n1\n")
    with pytest.raises(UnsupportedInstanceError):
        parse_qdimacs("e 1 0\n2 0\n")


def test_canonical_merges_blocks():
    q = QbfInstance(((EXISTS, (1,)), (EXISTS, (2,)), (FORALL, ()), (FORALL, (3,))), ((1,),), "dnf")
    assert q.canonical().blocks == ((EXISTS, (1, 2)), (FORALL, (3,)))


def test_qbf_rejects_duplicate_variables():
    with pytest.raises(UnsupportedInstanceError):
        QbfInstance(((EXISTS, (1,)), (FORALL, (1,))), ())


def test_parity_facts_round_trip():
    g = ParityGame(("a", "b"), {("a", "b"), ("b", "a")}, "a", {"a": EXISTS, "b": FORALL}, {"a": 0, "b": 3})
    back = parse_parity_facts(g.to_facts())
    assert back.arcs == g.arcs and back.owner == g.owner and back.priority == g.priority and back.initial == "a"


def test_parity_validation():
    with pytest.raises(UnsupportedInstanceError):
        ParityGame(("a", "b"), {("a", "b")}, "a", {"a": EXISTS, "b": EXISTS}, {"a": 0, "b": 0}).validate()
    with pytest.raises(ParseError):
        parse_parity_facts("existNode(a). arc(a,a). omega(a,0).")


def test_ponr_facts_round_trip():
    g = LabeledGraph(("s", "v"), (("s", "v", ("x", True)), ("v", "s", ("x", False))), "s", "v")
    back = parse_ponr_facts(g.to_facts())
    assert set(back.arcs) == set(g.arcs) and back.initial == "s" and back.target == "v"


def test_ponr_restrictions():
    with pytest.raises(UnsupportedInstanceError):
        LabeledGraph(("s", "v"), (("s", "v", ("x", True)), ("s", "v", ("y", True))), "s", "v").validate()
    with pytest.raises(UnsupportedInstanceError):
        parse_ponr_facts("arc(s,v,and(x,y)). init(s). ponr(v).")
