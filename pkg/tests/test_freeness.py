from __future__ import annotations

import pytest
from hypothesis import assume, given
import hypothesis.strategies as st

from aisemiring.families import enumerate_theta, make_u
from aisemiring.freeness import (EmbeddingWitness, SearchBudgetExceeded, find_embedding, is_free,
                                 micro_pairs, naive_embedding)
from aisemiring.terms import Term, apply, is_subterm, parse_term

from conftest import terms, words

FAMILY = [make_u(n, k) for n in range(1, 6) for k in range(n + 1)]


def test_small_u_not_inside_larger_u0():
    assert is_free(make_u(2, 1), make_u(4, 0))


def test_u33_not_inside_u44():
    assert is_free(make_u(3, 3), make_u(4, 4))


def test_theta2_against_u30():
    verdicts = {str(v): is_free(v, make_u(3, 0)) for v in enumerate_theta(2)}
    # the single-word member x1*x2*x3 is the only one that embeds
    assert [v for v, free in verdicts.items() if not free] == ["x1*x2*x3"]


@pytest.mark.parametrize("u", FAMILY, ids=str)
def test_every_term_embeds_in_itself(u):
    wit = find_embedding(u, u)
    assert wit is not None and wit.check(u, u)


def test_square_free_target():
    assert is_free(parse_term("x^2"), make_u(3, 1))
    assert not is_free(parse_term("x^2"), parse_term("y*z^2"))


def test_budget_exhaustion_is_reported():
    with pytest.raises(SearchBudgetExceeded):
        find_embedding(make_u(3, 0), make_u(5, 0), budget=5)


def test_witness_string_and_check():
    wit = find_embedding(parse_term("x*y"), parse_term("a*b*c + d"))
    assert isinstance(wit, EmbeddingWitness)
    assert wit.check(parse_term("x*y"), parse_term("a*b*c + d"))
    assert "r = d" in str(wit)


def test_naive_oracle_on_known_pairs():
    assert naive_embedding(parse_term("x + y"), parse_term("a + b")) is not None
    assert naive_embedding(parse_term("x^2"), parse_term("a*b")) is None


def test_micro_space_is_nonempty_and_bounded():
    pairs = list(micro_pairs(4))
    assert pairs
    assert all(t.total_length() + u.total_length() <= 4 for t, u in pairs)


@given(terms(max_len=2, max_words=2), terms(max_len=2, max_words=3))
def test_matcher_agrees_with_naive_search(t, u):
    assume(t.total_length() + u.total_length() <= 8)
    assert (find_embedding(t, u) is None) == (naive_embedding(t, u) is None)


@given(terms(max_len=2, max_words=2), terms(("a", "b", "c"), max_len=3, max_words=3))
def test_embedding_witness_validates(t, u):
    wit = find_embedding(t, u)
    if wit is not None:
        assert wit.check(t, u)


@given(terms(max_len=2, max_words=2),
       st.fixed_dictionaries({v: terms(("a", "b"), max_len=2, max_words=2) for v in "xyz"}),
       words(("a", "b", "c")), terms(("a", "b", "c"), max_words=2))
def test_constructed_images_are_found(t, phi, p, r):
    image = apply(phi, t) * Term.of(p) + r
    assert not is_free(t, image)


@given(st.sampled_from(FAMILY[:9]), terms(("a", "b"), max_len=2, max_words=2),
       words(("a", "b", "c"), max_len=2), terms(("a", "b", "c"), max_len=2, max_words=2))
def test_freeness_passes_to_superterms(v, u, p, r):
    w = u * Term.of(p) + r
    assert is_subterm(u, w) is not None
    if is_free(u, v):
        assert is_free(w, v)
