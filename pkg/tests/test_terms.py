from __future__ import annotations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from aisemiring.terms import (Statement, Term, TermSyntaxError, Word, apply, delta_sets,
                              is_subterm, long_words, parse_statement, parse_term, parse_word,
                              print_term, var_key, words_within)

from conftest import terms, words


def test_variables_sort_by_subscript():
    assert sorted(["x10", "x2", "y1", "x1"], key=var_key) == ["x1", "x2", "x10", "y1"]


def test_words_are_commutative_multisets():
    assert parse_word("x*y*x") == parse_word("x^2*y") == Word({"y": 1, "x": 2})
    assert parse_word("x^2*y").length == 3


def test_term_set_semantics():
    assert parse_term("x + x + y") == parse_term("y + x")
    assert len(parse_term("x*y + y*x")) == 1


def test_product_of_terms():
    assert parse_term("x + y") * parse_term("x + y") == parse_term("x^2 + x*y + y^2")


@pytest.mark.parametrize("text", ["x +", "x ** y", "x^0", "", "x + (y", "3*x"])
def test_parse_errors_carry_position(text):
    with pytest.raises(TermSyntaxError) as exc:
        parse_term(text)
    assert exc.value.pos >= 0


def test_statement_parsing():
    st = parse_statement("x*y <= x^2 + y")
    assert st.kind == "inequality"
    assert parse_statement("x^3 = x^2").kind == "identity"
    assert st.as_identity() == Statement.identity(parse_term("x*y + x^2 + y"), parse_term("x^2 + y"))


def test_split_into_word_inequalities():
    st = parse_statement("x + y = x*y")
    parts = st.split()
    assert [str(p) for p in parts] == ["x <= x*y", "y <= x*y", "x*y <= x + y"]


def test_statistics():
    u = parse_term("x1*x2 + x1*x3*y1 + x2*x3*y2")
    assert long_words(u, 3) == frozenset({parse_word("x1*x3*y1"), parse_word("x2*x3*y2")})
    assert words_within(u, parse_word("x1*x2*x3")) == frozenset({parse_word("x1*x2")})
    assert long_words(parse_term("x"), 2) == frozenset()


def test_delta_examples():
    u20 = parse_term("x1*x2 + x1*x3*y1 + x2*x3*y2")
    assert delta_sets(u20) == {frozenset({"x1", "y2"}), frozenset({"x2", "y1"})}
    assert delta_sets(parse_term("x1*x2 + x1*x3 + x2*x3")) == frozenset()
    assert delta_sets(parse_term("x^2")) == frozenset()


def test_subterm_witness():
    w = is_subterm(parse_term("x + y"), parse_term("x*z + y*z + x"))
    assert w is not None and str(w.multiplier) == "z"
    assert is_subterm(parse_term("x + y"), parse_term("x*z + y")) is None


def test_apply_requires_all_variables():
    with pytest.raises(KeyError):
        apply({"x": parse_term("y")}, parse_term("x*z"))


@given(terms())
def test_print_parse_round_trip(u):
    assert parse_term(print_term(u)) == u
    assert parse_term(str(u)) == u


@given(terms(), terms(), terms())
def test_semiring_laws_of_terms(a, b, c):
    assert a + b == b + a
    assert a + a == a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(terms(), terms(), st.fixed_dictionaries({v: terms(("a", "b")) for v in "xyz"}))
def test_substitution_is_a_homomorphism(u, v, phi):
    assert apply(phi, u + v) == apply(phi, u) + apply(phi, v)
    assert apply(phi, u * v) == apply(phi, u) * apply(phi, v)


@given(terms(), words(), terms())
def test_subterm_of_constructed_superterm(u, p, r):
    big = u * Term.of(p) + r
    wit = is_subterm(u, big)
    assert wit is not None
    img = u.words if wit.multiplier is None else frozenset(wit.multiplier * w for w in u.words)
    assert img | wit.remainder == big.words


@given(terms())
def test_subterm_reflexive(u):
    wit = is_subterm(u, u)
    assert wit is not None and wit.multiplier is None and not wit.remainder


@given(terms())
def test_delta_sets_meet_each_word_once(u):
    for z in delta_sets(u):
        for w in u.words:
            hit = [v for v in w.content if v in z]
            assert len(hit) == 1 and w.occ(hit[0]) == 1
