import pytest
from hypothesis import given

from ccsim.syntax import ParseError, UndeclaredActionError, format_term, parse, parse_alphabet, parse_file
from ccsim.terms import NIL, Alphabet, prefix
from strategies import terms

AL = Alphabet.of(r="a,b,c")


def test_basic_forms():
    assert parse("0") is NIL
    assert parse("a.0 + a.0") is prefix("a")
    assert parse("a.(b.0 + c.0)") is prefix("a", prefix("b") + prefix("c"))


def test_juxtaposition_with_alphabet():
    assert parse("ab+ac", AL) is parse("a.b.0 + a.c.0")
    assert parse("a(b0+c0)", AL) is parse("a.(b.0+c.0)")


def test_undeclared_action():
    with pytest.raises(UndeclaredActionError):
        parse("d.0", AL)


@pytest.mark.parametrize("bad", ["a.", "(a.0", "a.0 +", "+", "a..0", ")"])
def test_malformed(bad):
    with pytest.raises(ParseError):
        parse(bad)


@given(terms())
def test_format_parse_round_trip(t):
    assert parse(format_term(t)) is t


def test_alphabet_block():
    al = parse_alphabet("r: a, b; l: c; bi: d; fresh: z")
    assert sorted(al.covariant) == ["a", "b"]
    assert sorted(al.bivariant) == ["d"]
    with pytest.raises(ParseError):
        parse_alphabet("q: a")


def test_process_file():
    pf = parse_file(
        """
        alphabet { r: a, b; l: c }
        P = a.b.0   # comment
        Q = a.b.0 + c.0
        """
    )
    assert pf["Q"] is pf["P"] + prefix("c")
    assert parse_file(pf.render()).definitions == pf.definitions
    with pytest.raises(KeyError):
        pf["R"]


def test_file_errors_carry_line():
    with pytest.raises(ParseError) as exc:
        parse_file("alphabet { r: a }\nP = a.0\nP = a.0\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_file("alphabet { r: a }\nP = d.0\n")
