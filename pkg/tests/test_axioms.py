import pytest

from ccsim.axioms import (
    A_CC_EQ,
    A_CC_PRE,
    A_CS,
    A_CS_EQ,
    AXIOM_SETS,
    SCHEMAS,
    InvalidSubstitution,
    PatternSyntaxError,
    apply,
    instantiate,
    load_axiom_set,
    match_at,
    parse_axiom_file,
    parse_pattern,
    positions,
    replace_at,
    subterm_at,
)
from ccsim.harness import EnumerationBounds, soundness_sweep
from ccsim.semantics import RelationKind
from ccsim.syntax import parse
from ccsim.terms import NIL, Alphabet

RL = Alphabet.of(r="a_r,b_r,c_r", l="a_l,b_l")
CS = Alphabet.of(r="a,b,c")


def P(s, al=RL):
    return parse(s, al)


def test_bundled_sets():
    assert set(AXIOM_SETS) == {"A_CC_pre", "A_CS", "A_CC_eq", "A_CS_eq"}
    assert A_CC_PRE.target is RelationKind.CC_SIM
    assert A_CS.target is RelationKind.CONF_PRECONG
    assert A_CC_EQ.target is RelationKind.CC_EQUIV
    assert A_CS_EQ.target is RelationKind.CONF_EQUIV
    assert "S_r_p" in A_CC_PRE and "S_CS_g" in A_CS


def test_match_s_r_p():
    sigmas = match_at(SCHEMAS["S_r_p"], P("b_r + a_r"), (), RL, "rl")
    assert {"x": P("b_r"), "y": NIL, "a_r": "a_r"} in sigmas


def test_match_s_l_p_direction():
    t = P("b_r")
    assert match_at(SCHEMAS["S_l_p"], t, (), RL, "lr") == []
    rl = match_at(SCHEMAS["S_l_p"], t, (), RL, "rl")
    assert rl and all(s["x"] is t for s in rl)


def test_match_s_cs_g():
    t = P("a.(b + c)", CS)
    sigmas = match_at(SCHEMAS["S_CS_g"], t, (), CS, "rl")
    pairs = {(s["p"], s["q"]) for s in sigmas}
    assert (P("b", CS), P("c", CS)) in pairs
    assert (P("b + c", CS), NIL) in pairs


def test_apply_examples():
    t = apply(SCHEMAS["S_r_p"], P("b_r"), (), {"x": P("b_r"), "a_r": "a_r", "y": P("c_r")}, alphabet=RL)
    assert t is P("b_r + a_r.c_r")
    t = apply(SCHEMAS["S1_eq"], P("a_r.b_r"), (), {"a_r": "a_r", "b_r": "b_r", "x": NIL, "y": NIL}, alphabet=RL)
    assert t is P("a_r.b_r + a_r")


def test_apply_refuses_reversed_inequation():
    with pytest.raises(InvalidSubstitution):
        apply(SCHEMAS["S_r_p"], P("b_r + a_r"), (), {"x": P("b_r"), "a_r": "a_r", "y": NIL}, "rl", RL)


def test_polarity_and_side_conditions():
    with pytest.raises(InvalidSubstitution):
        SCHEMAS["S_r_p"].instance({"x": NIL, "a_r": "a_l", "y": NIL}, RL)
    with pytest.raises(InvalidSubstitution):
        SCHEMAS["S_CS_g"].instance({"a": "a", "p": P("b", CS), "q": P("b.c", CS)}, CS)


def test_positions_and_replacement():
    t = P("a.(b + c.a)", CS)
    ps = positions(t)
    assert () in ps and len(ps) == len(set(ps))
    for pos in ps:
        assert replace_at(t, pos, subterm_at(t, pos)) is t


def test_pattern_parser():
    pat = parse_pattern("%a:r.($x + b.0) + $y")
    t = instantiate(pat, {"a": "c", "x": NIL, "y": P("a", CS)})
    assert t is P("c.(0 + b) + a", CS)
    with pytest.raises(PatternSyntaxError):
        parse_pattern("$x +")


def test_axiom_file_round_trip(tmp_path):
    f = tmp_path / "mine.ax"
    f.write_text(
        "target: conf_precong\n"
        "B: bundled B1 B2 B3 B4\n"
        "G: %a.$p <= %a.($p + $q) when disjoint($p, $q)\n"
    )
    A = load_axiom_set(str(f))
    assert A.target is RelationKind.CONF_PRECONG
    assert [s.name for s in A.schemata][-1] == "G"
    with pytest.raises(PatternSyntaxError):
        parse_axiom_file("target: cc_sim\nbad line\n")
    with pytest.raises(FileNotFoundError):
        load_axiom_set("no-such-set")


def test_injected_unsound_schema_is_caught():
    bad = parse_axiom_file("target: cc_sim\nS_bad: $x <= $x + %a:l.$y\n", "bad")
    rep = soundness_sweep(bad, EnumerationBounds(2, 2, Alphabet.of(r="a", l="b")))
    assert not rep.ok
    assert all(v.evidence.startswith("S_bad") for v in rep.violations)


@pytest.mark.parametrize("name", sorted(AXIOM_SETS))
def test_bundled_sets_sound_at_depth_two(name):
    for al in (Alphabet.of(r="a", l="b"), Alphabet.of(r="a", bi="b")):
        assert soundness_sweep(AXIOM_SETS[name], EnumerationBounds(2, 2, al)).ok
