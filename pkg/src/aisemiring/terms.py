"""The free commutative ai-semiring: words, terms, substitutions, statistics.

A word is a multiset of variables (an exponent map); a term is a nonempty
finite set of words. Addition of terms is union and multiplication is the set
of pairwise word products, so commutativity and idempotency are structural.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    """Sort key ordering variables by letter prefix, then numeric subscript."""
    m = re.fullmatch(r"(.*?)(\d*)", name)
    prefix, digits = m.group(1), m.group(2)
    return (prefix, int(digits) if digits else -1, name)


class Word:
    """A nonempty commutative word, stored as sorted (variable, exponent) pairs."""

    __slots__ = ("items", "_hash")

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]]):
        pairs = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[str, int] = {}
        for v, e in pairs:
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
            if e:
                merged[v] = merged.get(v, 0) + e
        if not merged:
            raise ValueError("words are nonempty")
        self.items: tuple[tuple[str, int], ...] = tuple(
            sorted(merged.items(), key=lambda p: var_key(p[0])))
        self._hash = hash(self.items)

    @classmethod
    def of(cls, *variables: str) -> Word:
        """Word from a list of variables, repeats allowed: Word.of('x', 'x', 'y') = x^2 y."""
        return cls((v, 1) for v in variables)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.items == other.items

    def __lt__(self, other: Word) -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.length, tuple((var_key(v), e) for v, e in self.items))

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.items + other.items)

    def __pow__(self, k: int) -> Word:
        if k < 1:
            raise ValueError("only positive powers of words exist")
        return Word((v, e * k) for v, e in self.items)

    @property
    def length(self) -> int:
        return sum(e for _, e in self.items)

    @property
    def content(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.items)

    def exponents(self) -> dict[str, int]:
        return dict(self.items)

    def occ(self, x: str) -> int:
        for v, e in self.items:
            if v == x:
                return e
        return 0

    def is_linear(self) -> bool:
        return all(e == 1 for _, e in self.items)

    def divides(self, other: Word) -> bool:
        ex = other.exponents()
        return all(ex.get(v, 0) >= e for v, e in self.items)

    def quotient(self, divisor: Word | None) -> Word | None:
        """self / divisor; None for the empty word. Raises if divisor does not divide."""
        if divisor is None:
            return self
        ex = self.exponents()
        for v, e in divisor.items:
            if ex.get(v, 0) < e:
                raise ValueError(f"{divisor} does not divide {self}")
            ex[v] -= e
        return Word(ex) if any(ex.values()) else None

    def divisors(self) -> list[Word]:
        """All nonempty divisors, including the word itself."""
        ranges = [range(e + 1) for _, e in self.items]
        names = [v for v, _ in self.items]
        out = []
        for exps in itertools.product(*ranges):
            if any(exps):
                out.append(Word(zip(names, exps)))
        return sorted(out)

    def s2(self) -> frozenset[Word]:
        """All subwords of length 2."""
        out = set()
        for i, (v, e) in enumerate(self.items):
            if e >= 2:
                out.add(Word(((v, 2),)))
            for w, _ in self.items[i + 1:]:
                out.add(Word(((v, 1), (w, 1))))
        return frozenset(out)

    def __str__(self) -> str:
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.items)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def mul_opt(p: Word | None, q: Word | None) -> Word | None:
    """Product where None stands for the empty word."""
    if p is None:
        return q
    if q is None:
        return p
    return p * q


class Term:
    """A nonempty finite set of words."""

    __slots__ = ("words", "_hash")

    def __init__(self, words: Iterable[Word]):
        ws = frozenset(words)
        if not ws:
            raise ValueError("terms are nonempty")
        self.words: frozenset[Word] = ws
        self._hash = hash(ws)

    @classmethod
    def var(cls, name: str) -> Term:
        return cls((Word(((name, 1),)),))

    @classmethod
    def of(cls, *words: Word) -> Term:
        return cls(words)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, Term) and self.words == other.words

    def __iter__(self) -> Iterator[Word]:
        return iter(self.sorted_words())

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in self.words

    def __add__(self, other: Term) -> Term:
        if not isinstance(other, Term):
            return NotImplemented
        return Term(self.words | other.words)

    def __mul__(self, other: Term | Word) -> Term:
        if isinstance(other, Word):
            return Term(w * other for w in self.words)
        if not isinstance(other, Term):
            return NotImplemented
        return Term(a * b for a in self.words for b in other.words)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Term:
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=Word.sort_key)

    def sort_key(self) -> tuple:
        return tuple(w.sort_key() for w in self.sorted_words())

    @property
    def content(self) -> frozenset[str]:
        return frozenset().union(*(w.content for w in self.words))

    def s2(self) -> frozenset[Word]:
        return frozenset().union(*(w.s2() for w in self.words))

    def total_length(self) -> int:
        return sum(w.length for w in self.words)

    def __str__(self) -> str:
        return " + ".join(str(w) for w in self.sorted_words())

    def __repr__(self) -> str:
        return f"Term({str(self)!r})"


def add(u: Term, v: Term) -> Term:
    return u + v


def multiply(u: Term, v: Term) -> Term:
    return u * v


@dataclass(frozen=True)
class WordStats:
    content: frozenset[str]
    length: int
    occ: dict[str, int]
    s2: frozenset[Word]


def word_stats(w: Word) -> WordStats:
    return WordStats(w.content, w.length, w.exponents(), w.s2())


@dataclass(frozen=True)
class TermStats:
    content: frozenset[str]
    s2: frozenset[Word]
    long_words: frozenset[Word]
    contained_in: frozenset[Word]


def long_words(u: Term, k: int) -> frozenset[Word]:
    """Words of u of length at least k (possibly empty)."""
    return frozenset(w for w in u.words if w.length >= k)


def words_within(u: Term, q: Word) -> frozenset[Word]:
    """Words of u whose content lies inside c(q) (possibly empty)."""
    cq = q.content
    return frozenset(w for w in u.words if w.content <= cq)


def term_stats(u: Term, k: int, q: Word) -> TermStats:
    return TermStats(u.content, u.s2(), long_words(u, k), words_within(u, q))


def delta_sets(u: Term) -> frozenset[frozenset[str]]:
    """All Z meeting every word of u in exactly one variable, of occurrence 1 there.

    Backtracks over the words, each choice fixing which of the word's variables
    is in Z and excluding the rest.
    """
    words = u.sorted_words()
    found: set[frozenset[str]] = set()

    def rec(i: int, chosen: frozenset[str], excluded: frozenset[str]) -> None:
        if i == len(words):
            if chosen:
                found.add(chosen)
            return
        w = words[i]
        c = w.content
        hit = c & chosen
        if len(hit) > 1:
            return
        if hit:
            (x,) = hit
            if w.occ(x) == 1:
                rec(i + 1, chosen, excluded | (c - hit))
            return
        for x in sorted(c - excluded, key=var_key):
            if w.occ(x) == 1:
                rec(i + 1, chosen | {x}, excluded | (c - {x}))

    rec(0, frozenset(), frozenset())
    return frozenset(found)


@dataclass(frozen=True)
class SubtermWitness:
    """v = multiplier * u + remainder; None/empty stand for the empty word/set."""
    multiplier: Word | None
    remainder: frozenset[Word]


def is_subterm(u: Term, v: Term) -> SubtermWitness | None:
    """Witness that u <= v, or None.

    A multiplier made of several words is never needed: any one of its words
    already embeds u. Fixing a word u0 of u, the multiplier must be w / u0 for
    some word w of v divisible by u0, so the search is finite.
    """
    u0 = min(u.words, key=Word.sort_key)
    cands: list[Word | None] = []
    for w in v.sorted_words():
        if u0.divides(w):
            cands.append(w.quotient(u0))
    seen = set()
    for p in sorted(cands, key=lambda p: () if p is None else (0,) + p.sort_key()):
        if p in seen:
            continue
        seen.add(p)
        image = u.words if p is None else frozenset(p * w for w in u.words)
        if image <= v.words:
            return SubtermWitness(p, v.words - image)
    return None


Substitution = Mapping[str, Term]


def apply(phi: Substitution, u: Term) -> Term:
    """Homomorphic image of u under phi."""
    missing = u.content - phi.keys()
    if missing:
        raise KeyError(f"substitution undefined on {sorted(missing, key=var_key)}")
    out: set[Word] = set()
    for w in u.words:
        acc: set[Word] | None = None
        for v, e in w.items:
            for _ in range(e):
                img = phi[v].words
                acc = set(img) if acc is None else {a * b for a in acc for b in img}
        out |= acc
    return Term(out)


def apply_word(phi: Substitution, w: Word) -> Term:
    return apply(phi, Term.of(w))


# ---------------------------------------------------------------- statements

@dataclass(frozen=True)
class Statement:
    """An identity lhs = rhs, or an inequality lhs <= rhs meaning lhs + rhs = rhs."""
    kind: str
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if self.kind not in ("identity", "inequality"):
            raise ValueError(f"unknown statement kind {self.kind!r}")

    @classmethod
    def identity(cls, lhs: Term, rhs: Term) -> Statement:
        return cls("identity", lhs, rhs)

    @classmethod
    def inequality(cls, lhs: Term, rhs: Term) -> Statement:
        return cls("inequality", lhs, rhs)

    @property
    def variables(self) -> list[str]:
        return sorted(self.lhs.content | self.rhs.content, key=var_key)

    def as_identity(self) -> Statement:
        if self.kind == "identity":
            return self
        return Statement.identity(self.lhs + self.rhs, self.rhs)

    def is_trivial(self) -> bool:
        if self.kind == "identity":
            return self.lhs == self.rhs
        return self.lhs.words <= self.rhs.words

    def split(self) -> list[Statement]:
        """Equivalent set of inequalities whose lower sides are single words."""
        out = [Statement.inequality(Term.of(w), self.rhs) for w in self.lhs.sorted_words()]
        if self.kind == "identity":
            out += [Statement.inequality(Term.of(w), self.lhs) for w in self.rhs.sorted_words()]
        return out

    def __str__(self) -> str:
        op = "=" if self.kind == "identity" else "<="
        return f"{self.lhs} {op} {self.rhs}"


# ---------------------------------------------------------------- parsing

class TermSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op><=|[+*^=]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError("unexpected character", text, len(text) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None):
        k, v, p = self.peek()
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise TermSyntaxError(f"expected {want!r}, found {v or 'end of input'!r}", self.text, p)
        self.i += 1
        return v

    def factor(self) -> list[tuple[str, int]]:
        name = self.take("ident")
        exp = 1
        if self.peek()[:2] == ("op", "^"):
            self.i += 1
            k, v, p = self.peek()
            exp = int(self.take("int"))
            if exp < 1:
                raise TermSyntaxError("exponent must be positive", self.text, p)
        return [(name, exp)]

    def word(self) -> Word:
        pairs = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.i += 1
            pairs += self.factor()
        return Word(pairs)

    def term(self) -> Term:
        words = [self.word()]
        while self.peek()[:2] == ("op", "+"):
            self.i += 1
            words.append(self.word())
        return Term(words)

    def end(self):
        self.take("end")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.end()
    return t


def parse_word(text: str) -> Word:
    t = parse_term(text)
    if len(t) != 1:
        raise ValueError(f"{text!r} is not a single word")
    (w,) = t.words
    return w


def parse_statement(text: str) -> Statement:
    p = _Parser(text)
    lhs = p.term()
    k, v, pos = p.peek()
    if (k, v) == ("op", "="):
        kind = "identity"
    elif (k, v) == ("op", "<="):
        kind = "inequality"
    else:
        raise TermSyntaxError("expected '=' or '<='", text, pos)
    p.i += 1
    rhs = p.term()
    p.end()
    return Statement(kind, lhs, rhs)


def print_term(u: Term) -> str:
    return str(u)
