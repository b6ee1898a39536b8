import json

import pytest
from hypothesis import given

from ccsim.axioms import A_CS, A_CS_EQ, SCHEMAS
from ccsim.proofs import InvalidStep, Proof, ProofChecker, Step, axiom, check_proof, plus, refl, sym, trans, verify_proof
from ccsim.proofs import prefix as pprefix
from ccsim.provers import (
    BivariantAlphabetError,
    CCEquivProver,
    expand_derived_axiom,
    prove_cc_equiv,
    prove_cc_preorder,
    prove_conf_equiv,
    prove_conf_precong,
)
from ccsim.semantics import Checker
from ccsim.syntax import parse
from ccsim.terms import NIL, Alphabet
from strategies import terms

RL = Alphabet.of(r="a_r,b_r", l="a_l,b_l")
CS = Alphabet.of(r="a,b,c")


def P(s, al=CS):
    return parse(s, al)


def test_reflexivity_proof():
    t = P("a.b")
    pr = Proof(t, t, A_CS, refl(t))
    assert verify_proof(pr)
    assert pr.axiom_steps() == []


def test_cc_preorder_example():
    pr = prove_cc_preorder(P("0", RL), P("a_r.b_r", RL), RL)
    assert verify_proof(pr)
    assert pr.schema_counts() == {"S_r_p": 1}
    assert prove_cc_preorder(P("0", RL), P("a_l", RL), RL) is None


def test_conf_precong_examples():
    pr = prove_conf_precong(P("a.b"), P("a.(b + c)"))
    assert verify_proof(pr) and pr.schema_counts() == {"S_CS_g": 1}
    pr = prove_conf_precong(P("a.b + a.c"), P("a.b"))
    assert verify_proof(pr) and pr.schema_counts() == {"S_inv_CS_p": 1}
    assert prove_conf_precong(NIL, NIL).root.rule == "refl"
    assert prove_conf_precong(P("a.c"), P("a.b + a.c")) is None


def test_equivalence_examples():
    pr = prove_conf_equiv(P("a.b"), P("a.b + a.(b + c)"))
    assert verify_proof(pr)
    pr = prove_cc_equiv(P("a_r.b_r", RL), P("a_r.b_r + a_r", RL), RL)
    assert verify_proof(pr) and len(pr.steps()) == 1


def test_cc_equiv_refuses_bivariant():
    with pytest.raises(BivariantAlphabetError):
        CCEquivProver(Alphabet.of(r="a", bi="b"))


@pytest.mark.parametrize("pr_, pl_", [("b_r + a_r.a_l", "a_l + b_l.b_r"), ("0", "a_l"), ("b_r", "0"), ("0", "0")])
def test_derived_axiom_ds1(pr_, pl_):
    x = P("b_l.a_r", RL)
    sigma = {"x": x, "p_r": P(pr_, RL), "p_l": P(pl_, RL), "a_r": "a_r"}
    pr = expand_derived_axiom("DS1", sigma, RL)
    assert verify_proof(pr)
    from ccsim.terms import prefix as tp

    assert pr.lhs is tp("a_r", x + sigma["p_r"])
    assert pr.rhs is pr.lhs + tp("a_r", x + sigma["p_l"])


def test_derived_axiom_ds2():
    sigma = {"x": NIL, "p_r": P("a_r + b_r", RL), "p_l": P("a_l", RL), "a_l": "b_l"}
    assert verify_proof(expand_derived_axiom("DS2", sigma, RL))


def test_checker_rejects_wrong_conclusion():
    good = prove_conf_precong(P("a.b"), P("a.(b + c)"))
    s = good.root
    forged = Step("axiom", s.lhs, P("a.(b + c) + c"), schema=s.schema, sigma=s.sigma)
    res = check_proof(Proof(s.lhs, forged.rhs, A_CS, forged))
    assert not res.ok and res.failed_index == 0


def test_checker_rejects_side_condition_violation():
    sigma = {"a": "a", "p": P("b"), "q": P("b.c")}
    step = axiom(SCHEMAS["S_CS_g"], sigma, check=False)
    res = check_proof(Proof(step.lhs, step.rhs, A_CS, step))
    assert not res.ok


def test_checker_rejects_reversed_inequation_and_le_in_equational_set():
    s = axiom(SCHEMAS["S_inv_CS_p"], {"a": "a", "p": P("b"), "q": P("c")})
    back = Step("sym", s.rhs, s.lhs, (s,))
    assert not check_proof(Proof(back.lhs, back.rhs, A_CS, back)).ok
    assert not check_proof(Proof(s.lhs, s.rhs, A_CS_EQ, s)).ok
    with pytest.raises(InvalidStep):
        axiom(SCHEMAS["S_inv_CS_p"], {"a": "a", "p": P("b"), "q": P("c")}, direction="rl")


def test_checker_rejects_schema_outside_set():
    s = axiom(SCHEMAS["S_r_p"], {"x": NIL, "a_r": "a_r", "y": NIL}, alphabet=RL)
    assert not check_proof(Proof(s.lhs, s.rhs, A_CS, s, RL)).ok


def test_builders():
    a = axiom(SCHEMAS["S_inv_CS_p"], {"a": "a", "p": P("b"), "q": P("c")})
    assert sym(sym(a)) is a
    assert trans(refl(a.lhs), a, refl(a.rhs)) is a
    with pytest.raises(InvalidStep):
        trans(a, a)
    s = plus(a, refl(P("c")))
    assert s.lhs is a.lhs + P("c")
    assert pprefix("b", a).lhs is P("b.(a.b + a.c)")
    ck = ProofChecker(A_CS)
    assert ck.verify(pprefix("b", s)).ok


def test_json_round_trip_and_tamper():
    pr = prove_conf_equiv(P("a.b"), P("a.b + a.(b + c)"))
    back = Proof.from_json(pr.to_json())
    assert back.lhs is pr.lhs and verify_proof(back)
    doc = json.loads(pr.to_json())
    doc["steps"][0]["substitution"]["q"] = "b.0"
    assert not verify_proof(Proof.from_dict(doc))


def test_render_lists_steps():
    pr = prove_cc_preorder(P("0", RL), P("a_r.b_r", RL), RL)
    assert "S_r_p" in pr.render()


CCP = Alphabet.of(r="a", l="b")
SMALL = terms(("a", "b"), max_depth=3, max_width=2)


@given(SMALL, SMALL)
def test_cc_prover_decides_cc_sim(p, q):
    pr = prove_cc_preorder(p, q, CCP)
    assert (pr is not None) == Checker("cc_sim", CCP).holds(p, q)
    if pr is not None:
        assert verify_proof(pr)


@given(SMALL, SMALL)
def test_cc_equiv_prover_decides(p, q):
    pr = prove_cc_equiv(p, q, CCP)
    assert (pr is not None) == Checker("cc_equiv", CCP).holds(p, q)
    if pr is not None:
        assert verify_proof(pr)


@given(SMALL, SMALL)
def test_conf_provers_decide(p, q):
    pr = prove_conf_precong(p, q)
    assert (pr is not None) == Checker("conf_precong").holds(p, q)
    pe = prove_conf_equiv(p, q)
    assert (pe is not None) == Checker("conf_equiv").holds(p, q)
    for x in (pr, pe):
        if x is not None:
            assert verify_proof(x)
            sem = Checker(x.axiom_set.target, CCP)
            assert all(sem.holds(s.lhs, s.rhs) for s in x.axiom_steps())
