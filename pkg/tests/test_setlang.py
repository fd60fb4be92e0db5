from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from _gen import ord_exprs, set_exprs
from numerositas.errors import ParseError
from numerositas.setlang import (
    FFin,
    Finite,
    IntProg,
    Nat,
    NatAdd,
    NatMul,
    Naturals,
    NatProg,
    Omega,
    OrdAdd,
    OrdMul,
    OrdPow,
    PFin,
    QInterval,
    RInterval,
    Theta,
    Union,
    parse_ordinal,
    parse_set,
    render,
)


def test_set_examples():
    assert parse_set("N") == Naturals()
    assert parse_set("mult(3)") == NatProg(3, 3)
    assert parse_set("qint[0,1/2)") == QInterval(0, Fraction(1, 2), True, False)


def test_ordinal_examples():
    assert parse_ordinal("w") == Omega()
    assert parse_ordinal("w^w") == OrdPow(Omega(), Omega())
    w1 = OrdAdd(Omega(), Nat(1))
    assert parse_ordinal("(w+1) <*> (w+1)") == NatMul(w1, w1)


def test_render_examples():
    assert render(Naturals()) == "N"
    assert render(QInterval(0, Fraction(1, 2), True, False)) == "qint[0,1/2)"
    assert render(NatAdd(Omega(), Nat(1))) == "w <+> 1"
    assert render(OrdPow(Omega(), Omega())) == "w^w"
    assert render(NatProg(0, 3)) == "natprog(0,3)"


def test_bracket_conventions():
    assert parse_set("qint]0,1[") == QInterval(0, 1, False, False)
    assert parse_set("rint(0,1]") == RInterval(0, 1, False, True)
    assert parse_set("qint[2,2]") == QInterval(2, 2, True, True)


def test_finite_sets_are_sorted_and_deduplicated():
    assert parse_set("{3, 1/2, 3, -1}") == Finite((Fraction(-1), Fraction(1, 2), Fraction(3)))
    assert render(parse_set("{3, 1/2, 3, -1}")) == "{-1, 1/2, 3}"
    assert parse_set("{}") == Finite(())


def test_precedence_and_associativity():
    assert parse_ordinal("1 + w * 2") == OrdAdd(Nat(1), OrdMul(Omega(), Nat(2)))
    assert parse_ordinal("w^2^3") == OrdPow(Omega(), OrdPow(Nat(2), Nat(3)))
    assert parse_ordinal("1 + 2 <+> 3") == NatAdd(OrdAdd(Nat(1), Nat(2)), Nat(3))
    assert render(OrdAdd(Nat(1), OrdAdd(Nat(2), Nat(3)))) == "1 + (2 + 3)"
    assert render(OrdPow(OrdPow(Omega(), Nat(2)), Nat(3))) == "(w^2)^3"
    assert parse_ordinal("theta(2)") == Theta(2)


@pytest.mark.parametrize(
    "text,pos",
    [
        ("", 1),
        ("union(N", 8),
        ("mult(0)", 1),
        ("qint[1,0)", 1),
        ("qint[0,1/0)", 10),
        ("natprog(1,2", 12),
        ("N N", 3),
        ("foo", 1),
        ("{1,}", 4),
        ("N $", 3),
    ],
)
def test_set_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_set(text)
    assert info.value.position == pos
    assert info.value.expected
    assert isinstance(info.value, SyntaxError)


def test_ordinal_errors():
    for text in ("", "w +", "(w", "theta(-1)", "w ^ ^ w", "v"):
        with pytest.raises(ParseError):
            parse_ordinal(text)


def test_well_formed_constructors():
    with pytest.raises(ValueError):
        NatProg(-1, 2)
    with pytest.raises(ValueError):
        IntProg(0, 0)
    with pytest.raises(ValueError):
        QInterval(1, 1, True, False)
    assert FFin(Naturals(), Finite((0,))) == parse_set("ffin(N, {0})")


@given(set_exprs)
def test_set_round_trip(e):
    assert parse_set(render(e)) == e


@given(ord_exprs)
def test_ordinal_round_trip(e):
    assert parse_ordinal(render(e)) == e


ALPHABET = "NZQ0123456789{}[]()<>+*^,/- wqintmultpfiunoe$"


@given(st.text(alphabet=ALPHABET, max_size=30))
def test_set_parser_is_total(text):
    try:
        parse_set(text)
    except ParseError as exc:
        assert 1 <= exc.position <= len(text) + 1


@given(st.text(max_size=30))
def test_ordinal_parser_is_total(text):
    try:
        parse_ordinal(text)
    except ParseError as exc:
        assert 1 <= exc.position <= len(text) + 1


def test_nested_sets_render():
    e = Union(PFin(Naturals()), FFin(Naturals(), Finite((0, 1))))
    assert render(e) == "union(pfin(N), ffin(N, {0, 1}))"
