"""Embedding search: is p * phi(t) a set of words of u for some p, phi?

u is t-free exactly when no such p and phi exist. Two reductions keep the
search finite and small:

* the context can be taken to be a single word (or empty): if a term P works,
  every word of P works on its own;
* every image phi(x) can be taken to be a single word: shrinking phi(x) to any
  one of its words shrinks p * phi(t), so containment in u survives.

Each image word then divides a word of u, and so does p, which bounds the
candidates by the divisors of u's words.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .terms import Term, Word, mul_opt, var_key

DEFAULT_BUDGET = 10_000_000

_FIELD = 7
_GUARD_BIT = 1 << (_FIELD - 1)
_MAX_EXP = (1 << (_FIELD - 2)) - 1


class SearchBudgetExceeded(RuntimeError):
    """The node budget ran out before the search finished."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"search inconclusive: node budget {budget} exhausted")


@dataclass(frozen=True)
class EmbeddingWitness:
    """target = multiplier * apply(images, pattern) + remainder, as word sets."""
    multiplier: Word | None
    images: dict[str, Term]
    remainder: frozenset[Word]

    def image(self, pattern: Term) -> frozenset[Word]:
        from .terms import apply
        img = apply(self.images, pattern).words
        if self.multiplier is not None:
            img = frozenset(self.multiplier * w for w in img)
        return img

    def check(self, pattern: Term, target: Term) -> bool:
        img = self.image(pattern)
        return img <= target.words and (img | self.remainder) == target.words

    def __str__(self) -> str:
        p = str(self.multiplier) if self.multiplier is not None else "1"
        phi = ", ".join(f"{v} -> {t}" for v, t in sorted(self.images.items(),
                                                          key=lambda kv: var_key(kv[0])))
        r = " + ".join(str(w) for w in sorted(self.remainder, key=Word.sort_key)) or "0"
        return f"p = {p}; {phi}; r = {r}"


class Matcher:
    """Enumerates pairs (p, phi) with word-valued phi and p * phi(pattern) inside target."""

    def __init__(self, pattern: Term, target: Term, budget: int = DEFAULT_BUDGET):
        self.pattern = pattern
        self.target = target
        self.budget = budget
        self.nodes = 0
        ys = sorted(target.content, key=var_key)
        self._ys = ys
        self._pos = {v: i for i, v in enumerate(ys)}
        self._guard = sum(_GUARD_BIT << (_FIELD * i) for i in range(len(ys)))
        for w in target.words:
            if any(e > _MAX_EXP for _, e in w.items):
                raise ValueError(f"exponents above {_MAX_EXP} are not supported")
        self._targets = [(self._code(w), w.length) for w in target.sorted_words()]
        self._tcodes = {c for c, _ in self._targets}
        divisors = {d for w in target.words for d in w.divisors()}
        self._divisors = [(self._code(d), d.length, d) for d in sorted(divisors, key=Word.sort_key)]

        pwords = pattern.sorted_words()
        self._pwords = pwords
        self._plen = [w.length for w in pwords]
        occurs: dict[str, list[tuple[int, int]]] = {}
        for i, w in enumerate(pwords):
            for v, e in w.items:
                occurs.setdefault(v, []).append((i, e))
        # most shared variables first, then heavier ones
        self._order = sorted(occurs, key=lambda v: (-len(occurs[v]),
                                                    -sum(e for _, e in occurs[v]), var_key(v)))
        self._occurs = occurs
        self._cands = {v: self._static_candidates(v) for v in self._order}

    def _code(self, w: Word) -> int:
        return sum(e << (_FIELD * self._pos[v]) for v, e in w.items)

    def _divides_some(self, code: int, length: int, slack: int) -> bool:
        g = self._guard
        for t, tl in self._targets:
            if tl - length >= slack and ((t | g) - code) & g == g:
                return True
        return False

    def _static_candidates(self, v: str) -> list[tuple[int, int, Word]]:
        out = []
        for code, length, w in self._divisors:
            ok = True
            for i, e in self._occurs[v]:
                if e * length > 2 * _MAX_EXP or not self._divides_some(
                        code * e, e * length, self._plen[i] - e):
                    ok = False
                    break
            if ok:
                out.append((code, length, w))
        return out

    def _multipliers(self) -> list[tuple[int, int, Word | None]]:
        out: list[tuple[int, int, Word | None]] = [(0, 0, None)]
        for code, length, w in self._divisors:
            if all(self._divides_some(code, length, pl) for pl in self._plen):
                out.append((code, length, w))
        return out

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)

    def solutions(self) -> Iterator[tuple[Word | None, dict[str, Word]]]:
        """All (p, phi) in canonical order; raises SearchBudgetExceeded."""
        order = self._order
        occurs = self._occurs
        cands = self._cands
        remaining_base = list(self._plen)
        nwords = len(self._pwords)
        phi: dict[str, Word] = {}

        def rec(depth: int, partial: list[int], plens: list[int], rem: list[int]):
            if depth == len(order):
                yield dict(phi)
                return
            v = order[depth]
            occ = occurs[v]
            for code, length, w in cands[v]:
                self._tick()
                new_p = list(partial)
                new_l = list(plens)
                new_r = list(rem)
                ok = True
                for i, e in occ:
                    new_p[i] += e * code
                    new_l[i] += e * length
                    new_r[i] -= e
                    if new_r[i] == 0:
                        if new_p[i] not in self._tcodes:
                            ok = False
                            break
                    elif not self._divides_some(new_p[i], new_l[i], new_r[i]):
                        ok = False
                        break
                if not ok:
                    continue
                phi[v] = w
                yield from rec(depth + 1, new_p, new_l, new_r)
                del phi[v]

        for code, length, p in self._multipliers():
            self._tick()
            for sol in rec(0, [code] * nwords, [length] * nwords, list(remaining_base)):
                yield p, sol

    def first(self) -> tuple[Word | None, dict[str, Word]] | None:
        return next(self.solutions(), None)


def _witness(pattern: Term, target: Term, p: Word | None, phi: dict[str, Word]) -> EmbeddingWitness:
    images = {v: Term.of(w) for v, w in phi.items()}
    wit = EmbeddingWitness(p, images, frozenset())
    return EmbeddingWitness(p, images, target.words - wit.image(pattern))


def find_embedding(pattern: Term, target: Term, budget: int = DEFAULT_BUDGET) -> EmbeddingWitness | None:
    """First (p, phi, r) with target = p * phi(pattern) + r, or None if there is none.

    Raises SearchBudgetExceeded instead of answering when the budget runs out.
    """
    found = Matcher(pattern, target, budget).first()
    if found is None:
        return None
    return _witness(pattern, target, *found)


def is_free(pattern: Term, target: Term, budget: int = DEFAULT_BUDGET) -> bool:
    """True when target is pattern-free (no substitution image of pattern is a subterm)."""
    return find_embedding(pattern, target, budget) is None


def naive_embedding(pattern: Term, target: Term) -> tuple[Term | None, dict[str, Term]] | None:
    """Brute-force reference: term multipliers and set-valued images.

    Every multiplier word and image word must divide a word of target, and no
    set needs more words than target has. No other shortcut is taken.
    """
    divisors = sorted({d for w in target.words for d in w.divisors()}, key=Word.sort_key)
    size = len(target)
    subsets = [frozenset(c) for r in range(1, size + 1)
               for c in itertools.combinations(divisors, r)]
    variables = sorted(pattern.content, key=var_key)
    pwords = pattern.sorted_words()
    ready = {}  # pattern words become checkable once their last variable is set
    for w in pwords:
        last = max(variables.index(v) for v in w.content)
        ready.setdefault(last, []).append(w)
    goal = target.words

    def products(P, phi, w: Word) -> set[Word]:
        acc: set[Word | None] = {None} if P is None else set(P)
        for v, e in w.items:
            for _ in range(e):
                acc = {mul_opt(a, b) for a in acc for b in phi[v]}
        return acc

    def rec(i: int, P, phi) -> dict | None:
        if i == len(variables):
            return dict(phi)
        for img in subsets:
            phi[variables[i]] = img
            if all(products(P, phi, w) <= goal for w in ready.get(i, [])):
                found = rec(i + 1, P, phi)
                if found is not None:
                    return found
        del phi[variables[i]]
        return None

    for P in [None] + subsets:
        found = rec(0, P, {})
        if found is not None:
            return (None if P is None else Term(P)), {v: Term(s) for v, s in found.items()}
    return None


def small_terms(max_total: int, letters: str = "xyz") -> list[Term]:
    """Every term over ``letters`` whose word lengths sum to at most max_total."""
    words = [Word.of(*c) for r in range(1, max_total + 1)
             for c in itertools.combinations_with_replacement(letters, r)]
    out: list[Term] = []

    def rec(start: int, chosen: list[Word], budget: int) -> None:
        if chosen:
            out.append(Term(chosen))
        for i in range(start, len(words)):
            if words[i].length <= budget:
                chosen.append(words[i])
                rec(i + 1, chosen, budget - words[i].length)
                chosen.pop()

    rec(0, [], max_total)
    return sorted(out, key=Term.sort_key)


def micro_pairs(max_total: int = 6, letters: str = "xyz") -> Iterator[tuple[Term, Term]]:
    """(pattern, target) pairs with combined total word length <= max_total."""
    terms = small_terms(max_total - 1, letters)
    for t in terms:
        for u in terms:
            if t.total_length() + u.total_length() <= max_total:
                yield t, u
