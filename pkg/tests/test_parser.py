import pytest
from hypothesis import given, settings, strategies as st

from adeg.errors import NotAGerm, UsageError
from adeg.jets import GermSpec
from adeg.parser import GermSyntaxError, format_germ, parse_germ


def test_parse_examples():
    assert parse_germ("y^2 - x^3").as_dict() == {(0, 2): 1, (3, 0): -1}
    assert parse_germ("x*y").as_dict() == {(1, 1): 1}
    assert parse_germ("y^3 - x^2*y").as_dict() == {(0, 3): 1, (2, 1): -1}


def test_format_examples():
    assert format_germ(GermSpec.from_terms({(1, 1): 1})) == "x*y"
    assert format_germ(GermSpec.from_terms({(0, 2): 1, (3, 0): -1})) == "y^2 - x^3"
    assert format_germ(GermSpec.from_terms({(2, 1): -3, (0, 1): 2})) == "2*y - 3*x^2*y"


def test_juxtaposition_and_like_terms():
    assert parse_germ("2xy^2 + x y y").as_dict() == {(1, 2): 3}
    assert parse_germ("-x^2 + 2x^2").as_dict() == {(2, 0): 1}
    assert parse_germ("+ x*x*y").as_dict() == {(2, 1): 1}


@pytest.mark.parametrize("text", ["", "x +", "x^", "x^-1", "x**2", "(x)", "2 3x", "x ^ 2 ^ 3"])
def test_syntax_errors(text):
    with pytest.raises(UsageError):
        parse_germ(text)


def test_error_positions():
    with pytest.raises(GermSyntaxError) as exc:
        parse_germ("x + z")
    assert exc.value.position == 4
    with pytest.raises(GermSyntaxError) as exc:
        parse_germ("y^2 - x^")
    assert exc.value.position == 8


def test_not_a_germ():
    with pytest.raises(NotAGerm):
        parse_germ("1 + x")
    with pytest.raises(NotAGerm):
        parse_germ("x - x")


terms = st.dictionaries(
    st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda k: k != (0, 0)),
    st.integers(-40, 40).filter(bool), min_size=1, max_size=6)


@settings(max_examples=100, deadline=None)
@given(terms)
def test_round_trip(t):
    spec = GermSpec.from_terms(t)
    text = format_germ(spec)
    assert parse_germ(text) == spec
    assert format_germ(parse_germ(text)) == text


@settings(max_examples=100, deadline=None)
@given(terms, st.data())
def test_whitespace_insensitive(t, data):
    text = format_germ(GermSpec.from_terms(t))
    # split into tokens at every boundary and rejoin with random runs of spaces
    toks, cur = [], ""
    for ch in text.replace(" ", ""):
        if cur and (ch.isdigit() != cur[-1].isdigit() or not ch.isdigit()):
            toks.append(cur)
            cur = ""
        cur += ch
    toks.append(cur)
    gaps = data.draw(st.lists(st.sampled_from(["", " ", "  ", "\t"]),
                              min_size=len(toks) + 1, max_size=len(toks) + 1))
    spaced = "".join(gap + tok for gap, tok in zip(gaps, toks)) + gaps[-1]
    assert parse_germ(spaced) == parse_germ(text)
