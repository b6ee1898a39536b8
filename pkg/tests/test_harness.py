import pytest

from ccsim.axioms import AXIOM_SETS
from ccsim.harness import (
    POLARITY_MIXES,
    EnumerationBounds,
    FreshPoolExhausted,
    aci_identity,
    coarsest_precong_sweep,
    completeness_sweep,
    degeneration_sweep,
    enumerate_terms,
    hierarchy_sweep,
    nonaxiomatizability_witness,
    soundness_sweep,
    witness_family,
)
from ccsim.axioms import SCHEMAS
from ccsim.provers import BivariantAlphabetError, prover_for
from ccsim.semantics import conf_simulates
from ccsim.syntax import format_term, parse
from ccsim.table import EnumerationTooLarge
from ccsim.terms import Alphabet


def test_enumerate_examples():
    assert [format_term(t) for t in enumerate_terms(EnumerationBounds(1, 1, Alphabet.of(r="a")))] == ["0", "a.0"]
    got = {format_term(t) for t in enumerate_terms(EnumerationBounds(2, 2, Alphabet.of(r="a")))}
    assert got == {"0", "a.0", "a.a.0", "a.0 + a.a.0"}


def test_enumerate_cap():
    with pytest.raises(EnumerationTooLarge):
        list(enumerate_terms(EnumerationBounds(3, 2, Alphabet.of(r="a,b"), max_terms=50)))


def test_aci_identity_classification():
    assert all(aci_identity(SCHEMAS[n]) for n in ("B1", "B2", "B3", "B4"))
    assert not aci_identity(SCHEMAS["S_r_p"])


def test_sweeps_are_deterministic():
    b = EnumerationBounds(2, 2, POLARITY_MIXES["r+l"])
    one = soundness_sweep(AXIOM_SETS["A_CC_pre"], b).to_json()
    two = soundness_sweep(AXIOM_SETS["A_CC_pre"], b).to_json()
    assert one == two and "elapsed" not in one


@pytest.mark.parametrize(
    "relation, mix", [("cc_sim", "r+l"), ("conf_precong", "plain"), ("conf_equiv", "plain"), ("cc_equiv", "r+l")]
)
def test_completeness_depth_two(relation, mix):
    al = POLARITY_MIXES[mix]
    rep = completeness_sweep(None, relation, EnumerationBounds(2, 2, al))
    assert rep.ok, rep.to_json()
    assert rep.counts["proofs"] > 0


def test_cc_equiv_prover_refuses_bivariant():
    with pytest.raises(BivariantAlphabetError):
        prover_for("cc_equiv", POLARITY_MIXES["r+bi"])


def test_coarsest_example_context():
    p, q = parse("0"), parse("a.b.0")
    ctx = parse("a.c.0")
    assert conf_simulates(p, q)
    assert not conf_simulates(ctx + p, ctx + q)


def test_coarsest_sweep_small():
    rep = coarsest_precong_sweep(EnumerationBounds(2, 2, Alphabet.of(r="a,b", fresh="c")))
    assert rep.ok
    assert rep.counts["candidates"] == rep.counts["separated"] > 0


def test_coarsest_needs_fresh_pool():
    with pytest.raises(FreshPoolExhausted):
        coarsest_precong_sweep(EnumerationBounds(1, 1, Alphabet.of(r="a")))


def test_witness_family_shape():
    p, q, pm, qm = witness_family(1, "a_r", "a_bi")
    assert format_term(p) == "a_r.a_bi.a_r.0"
    assert q is p + parse("a_r.a_bi.0")
    assert qm is pm + parse("a_bi.0")


@pytest.mark.parametrize("n", [0, 1, 2, 5, 8])
def test_witness_checks(n):
    rep = nonaxiomatizability_witness(n)
    assert rep.ok, rep.to_json()
    assert len(rep.checks) == 3


def test_witness_with_contravariant_mono_action():
    assert nonaxiomatizability_witness(3, Alphabet.of(l="m", bi="b")).ok


def test_witness_alphabet_errors():
    with pytest.raises(ValueError):
        nonaxiomatizability_witness(2, Alphabet.of(r="a"))
    with pytest.raises(ValueError):
        nonaxiomatizability_witness(-1)


def test_hierarchy_small():
    rep = hierarchy_sweep(EnumerationBounds(2, 2, Alphabet.of(r="a,b,c")))
    assert rep.ok and rep.counts["witnesses"] == 3


def test_degeneration_small():
    rep = degeneration_sweep(["a", "b"], 2, 2)
    assert rep.ok
    assert rep.counts == {"mismatches_covariant": 0, "mismatches_contravariant": 0, "mismatches_bivariant": 0}
