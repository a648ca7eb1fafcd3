"""Satisfaction of identities and inequalities in finite ai-semirings.

``find_countermodel`` scans every assignment (vectorised with numpy, in
row-major order over the canonically sorted variables). The four oracles
decide inequalities with a single-word lower side by syntactic criteria and
are cross-validated against the scan.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

import numpy as np

from .algebra import FiniteAiSemiring
from .catalog import catalog
from .terms import Statement, Term, Word, delta_sets, long_words, words_within

VAR_CAP = 12
_CHUNK = 1 << 20


class CapExceeded(ValueError):
    pass


def evaluate(u: Term, S: FiniteAiSemiring, assignment: Mapping[str, int]) -> int:
    """Value of u under a variable -> element-index assignment."""
    total = None
    for w in u.sorted_words():
        prod = None
        for v, e in w.items:
            if v not in assignment:
                raise KeyError(f"variable {v} is unassigned")
            for _ in range(e):
                a = assignment[v]
                prod = a if prod is None else S.mul[prod][a]
        total = prod if total is None else S.add[total][prod]
    return total


def _eval_block(u: Term, add: np.ndarray, mul: np.ndarray, cols: dict[str, np.ndarray]) -> np.ndarray:
    total = None
    for w in u.sorted_words():
        prod = None
        for v, e in w.items:
            col = cols[v]
            for _ in range(e):
                prod = col if prod is None else mul[prod, col]
        total = prod if total is None else add[total, prod]
    return total


def find_countermodel(S: FiniteAiSemiring, st: Statement, cap: int = VAR_CAP) -> dict[str, int] | None:
    """First failing assignment in row-major order, or None when st holds in S."""
    vs = st.variables
    if len(vs) > cap:
        raise CapExceeded(f"{len(vs)} variables exceed the cap of {cap}")
    n = S.order
    add = np.asarray(S.add, dtype=np.int8)
    mul = np.asarray(S.mul, dtype=np.int8)
    k = len(vs)
    # leading variables are fixed per chunk, trailing ones are vectorised
    inner = 0
    while inner < k and n ** (inner + 1) <= _CHUNK:
        inner += 1
    outer = k - inner
    size = n ** inner
    idx = np.arange(size)
    inner_cols = {}
    for j, v in enumerate(vs[outer:]):
        inner_cols[v] = ((idx // n ** (inner - 1 - j)) % n).astype(np.int8)
    for head in itertools.product(range(n), repeat=outer):
        cols = dict(inner_cols)
        for v, a in zip(vs[:outer], head):
            cols[v] = np.full(size, a, dtype=np.int8)
        lhs = _eval_block(st.lhs, add, mul, cols)
        rhs = _eval_block(st.rhs, add, mul, cols)
        if st.kind == "inequality":
            lhs = add[lhs, rhs]
        bad = np.nonzero(lhs != rhs)[0]
        if bad.size:
            pos = int(bad[0])
            vals = list(head) + [(pos // n ** (inner - 1 - j)) % n for j in range(inner)]
            return dict(zip(vs, (int(a) for a in vals)))
    return None


def holds(S: FiniteAiSemiring, st: Statement, cap: int = VAR_CAP) -> bool:
    return find_countermodel(S, st, cap) is None


def _word_lhs(st: Statement) -> tuple[Word, Term]:
    if st.kind != "inequality" or len(st.lhs) != 1:
        raise ValueError(f"oracles need an inequality with a single-word lower side: {st}")
    (q,) = st.lhs.words
    return q, st.rhs


def oracle_d2(st: Statement) -> bool:
    """q <= u holds in D2 iff some word of u has content inside c(q)."""
    q, u = _word_lhs(st)
    if q in u:
        return True
    return any(w.content <= q.content for w in u.words)


def oracle_s53(st: Statement) -> bool:
    q, u = _word_lhs(st)
    if q in u:
        return True
    if not long_words(u, 2) or not q.content <= u.content:
        return False
    su = u.s2()
    return all(any(w2.content <= w.content for w2 in su) for w in q.s2())


def oracle_s7(st: Statement) -> bool:
    q, u = _word_lhs(st)
    if q in u:
        return True
    return q.content <= u.content and delta_sets(u) <= delta_sets(u + Term.of(q))


def oracle_adjoin_zero(S: FiniteAiSemiring | str, st: Statement) -> bool:
    """Decide q <= u in S^0 by deciding q <= D_q(u) in S."""
    q, u = _word_lhs(st)
    if q in u:
        return True
    if isinstance(S, str):
        S = catalog(S)
    reduced = words_within(u, q)
    if not reduced:
        return False
    inner = Statement.inequality(Term.of(q), Term(reduced))
    if S.name == "S53":
        return oracle_s53(inner)
    if S.name == "D2":
        return oracle_d2(inner)
    return holds(S, inner)


ORACLES: dict[str, tuple[Callable[[Statement], bool], str]] = {
    "d2": (oracle_d2, "D2"),
    "s53": (oracle_s53, "S53"),
    "s7": (oracle_s7, "S7"),
}


# ---------------------------------------------------------------- statement spaces

def all_words(variables: list[str], max_len: int) -> list[Word]:
    out = []
    for length in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(variables, length):
            out.append(Word.of(*combo))
    return out


def statement_space(max_vars: int = 3, max_len: int = 3, max_words: int = 3,
                    letters: str = "xyzwvt") -> Iterator[Statement]:
    """Every q <= u with q a word and u a term of at most max_words words,
    all words of length <= max_len over the first max_vars letters."""
    vs = list(letters[:max_vars])
    words = all_words(vs, max_len)
    terms = [Term(c) for r in range(1, max_words + 1) for c in itertools.combinations(words, r)]
    for q in words:
        for u in terms:
            yield Statement.inequality(Term.of(q), u)


def random_statement(rng: random.Random, max_vars: int = 4, max_len: int = 3,
                     max_words: int = 3, letters: str = "xyzwvt") -> Statement:
    vs = list(letters[:max_vars])

    def word() -> Word:
        return Word.of(*(rng.choice(vs) for _ in range(rng.randint(1, max_len))))

    q = word()
    u = Term(word() for _ in range(rng.randint(1, max_words)))
    return Statement.inequality(Term.of(q), u)


@dataclass
class AgreementReport:
    oracle: str
    algebra: str
    checked: int = 0
    failures: int = 0
    disagreements: list[tuple[str, bool, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        return (f"{self.oracle} vs brute force on {self.algebra}: {self.checked} statements, "
                f"{self.failures} disagreement(s)")


def crossvalidate(oracle: Callable[[Statement], bool], S: FiniteAiSemiring,
                  statements, label: str = "oracle", max_report: int = 20) -> AgreementReport:
    """Compare oracle verdicts with brute force over ``statements``."""
    rep = AgreementReport(label, S.name or "?")
    for st in statements:
        rep.checked += 1
        want = holds(S, st)
        got = oracle(st)
        if got != want:
            rep.failures += 1
            if len(rep.disagreements) < max_report:
                rep.disagreements.append((str(st), got, want))
    return rep

