from __future__ import annotations

import hypothesis.strategies as st
from hypothesis import settings

from aisemiring.terms import Statement, Term, Word

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

LETTERS = ("x", "y", "z")


@st.composite
def words(draw, letters=LETTERS, max_len: int = 3) -> Word:
    vs = draw(st.lists(st.sampled_from(letters), min_size=1, max_size=max_len))
    return Word.of(*vs)


@st.composite
def terms(draw, letters=LETTERS, max_len: int = 3, max_words: int = 3) -> Term:
    ws = draw(st.lists(words(letters, max_len), min_size=1, max_size=max_words))
    return Term(ws)


@st.composite
def word_inequalities(draw, letters=LETTERS, max_len: int = 3, max_words: int = 3) -> Statement:
    q = draw(words(letters, max_len))
    return Statement.inequality(Term.of(q), draw(terms(letters, max_len, max_words)))
