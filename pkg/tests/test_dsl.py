import pytest
from hypothesis import given, strategies as st

from gorsum.dsl import (SessionNameError, SessionSyntaxError, SessionTypeError, format_expr, format_session,
                        parse_expr, parse_session, tokenize)
from helpers import corpus_text


def test_tokens_carry_positions():
    toks = tokenize("ring R =\n  F[x]/(x^2);")
    x = [t for t in toks if t.text == "F"][0]
    assert (x.line, x.col) == (2, 3)


@pytest.mark.parametrize("name", ["fermat", "nonstandard", "squarezero", "cubic_ci", "colength_fiber"])
def test_corpus_round_trip(name):
    s = parse_session(corpus_text(name))
    again = parse_session(format_session(s))
    assert again == s
    assert format_session(again) == format_session(s)


def test_nonstandard_session_declarations():
    s = parse_session(corpus_text("nonstandard"))
    assert len(s.declarations) == 9
    assert s.kinds() == {"F": "field", "R": "ring", "S": "ring", "T": "ring", "eR": "map", "eS": "map", "Q": "let"}
    assert len(s.checks) == 2


def test_syntax_error_position():
    with pytest.raises(SessionSyntaxError) as e:
        parse_session("field F = QQ;\nring R = F[x]/(x^2)\nring S = F[y]/(y^2);")
    assert e.value.line == 3


def test_undeclared_variable():
    with pytest.raises(SessionNameError) as e:
        parse_session("field F = QQ;\nring R = F[x]/(x^2, y);")
    assert e.value.line == 2 and "y" in e.value.message


def test_undeclared_ring():
    with pytest.raises(SessionNameError):
        parse_session("field F = QQ;\nmap f : R -> R sends x -> x;")


def test_kind_mismatch():
    with pytest.raises(SessionTypeError):
        parse_session("field F = QQ;\nring R = F[x]/(x^2);\nmap f : F -> R sends x -> x;")


def test_bad_character():
    with pytest.raises(SessionSyntaxError) as e:
        parse_session("field F = QQ;\nring R = F[x]/(x @ 2);")
    assert (e.value.line, e.value.col) == (2, 18)


_vars = st.sampled_from(["x", "y", "z"]).map(parse_expr)
_nums = st.integers(0, 50).map(str).map(parse_expr)
_exprs = st.recursive(
    _vars | _nums,
    lambda sub: st.one_of(
        st.tuples(sub, st.sampled_from(["+", "-", "*"]), sub).map(lambda t: parse_expr(f"({format_expr(t[0])}) {t[1]} ({format_expr(t[2])})")),
        st.tuples(sub, st.integers(1, 4)).map(lambda t: parse_expr(f"({format_expr(t[0])})^{t[1]}")),
        sub.map(lambda e: parse_expr(f"-({format_expr(e)})")),
    ),
    max_leaves=8,
)


@given(_exprs)
def test_expression_printing_round_trips(e):
    assert parse_expr(format_expr(e)) == e
