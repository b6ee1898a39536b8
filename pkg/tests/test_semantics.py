import pytest
from hypothesis import given

from ccsim.semantics import (
    Checker,
    Obstruction,
    RelationKind,
    bisimilar,
    cc_equiv,
    cc_simulates,
    conf_precong,
    conf_simulates,
    is_witness,
    plain_simulates,
    ready_conf_simulates,
    ready_simulates,
)
from ccsim.syntax import parse
from ccsim.table import TermTable
from ccsim.terms import Alphabet, AlphabetError
from oracles import oracle
from strategies import terms

P = lambda s: parse(s)  # noqa: E731
RL = Alphabet.of(r="a_r,b_r", l="a_l")


def test_cc_examples():
    assert cc_simulates(P("b_r"), P("b_r + a_r"), RL)
    assert cc_simulates(P("b_r + a_l"), P("b_r"), RL)
    assert not cc_simulates(P("0"), P("a_l"), RL)


def test_cc_equiv_witness_pair():
    al = Alphabet.of(r="a_r", bi="a_bi")
    p1 = P("a_r.a_bi.a_r.0")
    q1 = P("a_r.a_bi.a_r.0 + a_r.a_bi.0")
    assert cc_equiv(p1, q1, al)
    assert not cc_equiv(P("a_bi.a_r.0"), P("a_bi.a_r.0 + a_bi.0"), al)


def test_conformance_examples():
    assert conf_simulates(P("0"), P("a.b.0"))
    assert not conf_simulates(P("a.c.0"), P("a.b.0 + a.c.0"))
    assert conf_simulates(P("a.b.0 + a.c.0"), P("a.b.0"))
    assert conf_precong(P("a.b.0 + a.c.0"), P("a.b.0"))
    assert not conf_precong(P("0"), P("a.b.0"))
    assert conf_precong(P("a.b.0"), P("a.(b.0 + c.0)"))


def test_other_relations():
    assert bisimilar(P("a + a"), P("a"))
    assert not bisimilar(P("a.b"), P("a"))
    assert plain_simulates(P("0"), P("a.b + c"))
    assert not plain_simulates(P("a.(b + c)"), P("a.b"))
    assert not ready_simulates(P("a.(b + c)"), P("a.b"))
    p, q = P("a.b + a.c"), P("a.b")
    assert ready_conf_simulates(p, q).verdict == ready_simulates(q, p).verdict


def test_judgement_witnesses():
    j = conf_simulates(P("a.c.0"), P("a.b.0 + a.c.0"))
    assert isinstance(j.witness, Obstruction)
    assert "a" in j.witness.describe()
    j = conf_simulates(P("0"), P("a.b.0"))
    assert is_witness(RelationKind.CONF_SIM, j.witness)
    assert (j.lhs, j.rhs) in j.witness


def test_cc_needs_declared_actions():
    with pytest.raises(AlphabetError):
        Checker("cc_sim", RL).holds(P("zz"), P("0"))
    with pytest.raises((AlphabetError, ValueError)):
        Checker("cc_sim")


KINDS = [k.value for k in RelationKind]
POL = {"a": "r", "b": "l", "c": "bi"}
ABC = Alphabet.of(r="a", l="b", bi="c")


@pytest.mark.parametrize("kind", KINDS)
@given(p=terms(max_depth=3, max_width=2), q=terms(max_depth=3, max_width=2))
def test_agrees_with_fixpoint_oracle(kind, p, q):
    assert Checker(kind, ABC).holds(p, q) == oracle(kind, p, q, POL)


@pytest.mark.parametrize("kind", KINDS)
def test_agrees_with_oracle_exhaustively(kind):
    ts = TermTable(["a", "b"], 2, 2).terms()
    al = Alphabet.of(r="a", l="b")
    chk = Checker(kind, al)
    for p in ts:
        for q in ts:
            assert chk.holds(p, q) == oracle(kind, p, q, {"a": "r", "b": "l"}), (p, q)


@pytest.mark.parametrize("kind", ["cc_sim", "conf_sim", "plain_sim", "ready_sim"])
@given(p=terms(max_width=2), q=terms(max_width=2), r=terms(max_width=2))
def test_preorders_are_transitive(kind, p, q, r):
    chk = Checker(kind, ABC)
    assert chk.holds(p, p)
    if chk.holds(p, q) and chk.holds(q, r):
        assert chk.holds(p, r)


@given(p=terms(max_width=2), q=terms(max_width=2))
def test_positive_verdicts_carry_valid_witness(p, q):
    j = Checker("cc_sim", ABC).judge(p, q)
    if j.verdict:
        assert is_witness("cc_sim", j.witness, ABC)
