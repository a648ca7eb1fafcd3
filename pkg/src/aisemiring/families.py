"""Named term families and finite truncations of the two infinite bases."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .freeness import find_embedding
from .terms import Statement, Term, Word, is_subterm, parse_statement, parse_term, var_key

THETA_CAP = 3


def x(i: int) -> str:
    return f"x{i}"


def y(i: int) -> str:
    return f"y{i}"


def _check_nk(n: int, k: int) -> None:
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")


def make_u(n: int, k: int) -> Term:
    """x1...xn + sum_{i<=k} xi x{n+1} + sum_{i>k} xi x{n+1} yi."""
    _check_nk(n, k)
    words = [Word.of(*(x(i) for i in range(1, n + 1)))]
    words += [Word.of(x(i), x(n + 1)) for i in range(1, k + 1)]
    words += [Word.of(x(i), x(n + 1), y(i)) for i in range(k + 1, n + 1)]
    return Term(words)


def make_q(n: int) -> Term:
    if n < 1:
        raise ValueError("need n >= 1")
    return Term.of(Word.of(*(x(i) for i in range(1, n + 2))))


def make_sigma(n: int, k: int) -> Statement:
    _check_nk(n, k)
    return Statement.inequality(make_q(n), make_u(n, k))


def _linear_words(variables: list[str]) -> list[Word | None]:
    """Empty word plus every linear word over ``variables``."""
    out: list[Word | None] = [None]
    for r in range(1, len(variables) + 1):
        out += [Word.of(*c) for c in itertools.combinations(variables, r)]
    return out


def _times(base: Word, w: Word | None) -> Word:
    return base if w is None else base * w


def theta_choices(n: int) -> Iterator[Term]:
    """Raw (possibly repeating) terms, one per choice of the words w_ij."""
    xs = [x(i) for i in range(1, n + 2)]
    pairs = list(itertools.combinations(range(n + 1), 2))
    slots = [[_times(Word.of(xs[i], xs[j]), w)
              for w in _linear_words([v for t, v in enumerate(xs) if t not in (i, j)])]
             for i, j in pairs]
    for combo in itertools.product(*slots):
        yield Term(combo)


def enumerate_theta(n: int, cap: int = THETA_CAP) -> list[Term]:
    """The set Theta_n, sorted canonically."""
    if n < 2:
        raise ValueError("Theta_n needs n >= 2")
    if n > cap:
        raise ValueError(f"Theta_{n} exceeds the enumeration cap {cap}")
    return sorted(set(theta_choices(n)), key=Term.sort_key)


def theta_member(t: Term, n: int) -> bool:
    """Decide t in Theta_n directly from its words.

    Each word must be linear of length >= 2 over x1..x{n+1}; every pair of
    variables must lie in some word; and the words need distinct pairs as
    representatives (each word is the w_ij-extension of at least one pair).
    """
    xs = {x(i) for i in range(1, n + 2)}
    words = t.sorted_words()
    if any(not w.is_linear() or w.length < 2 or not w.content <= xs for w in words):
        return False
    all_pairs = [frozenset(p) for p in itertools.combinations(sorted(xs), 2)]
    if any(not any(p <= w.content for w in words) for p in all_pairs):
        return False
    # bipartite matching words -> contained pairs
    owner: dict[frozenset, int] = {}

    def augment(i: int, seen: set) -> bool:
        for p in all_pairs:
            if p <= words[i].content and p not in seen:
                seen.add(p)
                if p not in owner or augment(owner[p], seen):
                    owner[p] = i
                    return True
        return False

    return all(augment(i, set()) for i in range(len(words)))


def make_delta(n: int, v: Term) -> Statement:
    return Statement.inequality(make_q(n), v)


def delta_star(n: int) -> Term:
    """The Theta_n member with w_ij = (x1...xn)/(xi xj) for j <= n, empty otherwise."""
    xs = [x(i) for i in range(1, n + 2)]
    words = []
    for i, j in itertools.combinations(range(1, n + 2), 2):
        if j <= n:
            words.append(Word.of(*xs[:n]))
        else:
            words.append(Word.of(x(i), x(j)))
    return Term(words)


def schema8(n: int) -> Iterator[Statement]:
    """q_n <= sum_{i<=n} xi^2 wi + x{n+1} w{n+1}, each wi empty or linear avoiding xi."""
    xs = [x(i) for i in range(1, n + 2)]
    slots = []
    for i in range(n + 1):
        base = Word.of(xs[i], xs[i]) if i < n else Word.of(xs[i])
        others = [v for t, v in enumerate(xs) if t != i]
        slots.append([_times(base, w) for w in _linear_words(others)])
    q = make_q(n)
    for combo in itertools.product(*slots):
        yield Statement.inequality(q, Term(combo))


def schema9(n: int) -> Iterator[Statement]:
    """q_n <= sum_{i<=k} xi^2 wi + sum_{k<i<j<=n+1} xi xj wij for 1 <= k <= n.

    At k = n the pair sum is empty; instances whose upper side then misses
    x{n+1} do not hold in S4_634 (see ``misses_last_variable``).
    """
    xs = [x(i) for i in range(1, n + 2)]
    q = make_q(n)
    for k in range(1, n + 1):
        slots = []
        for i in range(k):
            others = [v for t, v in enumerate(xs) if t != i]
            slots.append([_times(Word.of(xs[i], xs[i]), w) for w in _linear_words(others)])
        for i, j in itertools.combinations(range(k, n + 1), 2):
            others = [v for t, v in enumerate(xs) if t not in (i, j)]
            slots.append([_times(Word.of(xs[i], xs[j]), w) for w in _linear_words(others)])
        for combo in itertools.product(*slots):
            yield Statement.inequality(q, Term(combo))


@dataclass
class Family:
    name: str
    indices: list[tuple]
    build: Callable[..., Iterable[Statement]]

    def instances(self) -> Iterator[tuple[tuple, Statement]]:
        for idx in self.indices:
            for st in self.build(*idx):
                yield idx, st


@dataclass
class BasisSpec:
    name: str
    fixed: list[Statement]
    families: list[Family] = field(default_factory=list)

    def statements(self) -> Iterator[Statement]:
        yield from self.fixed
        for fam in self.families:
            for _, st in fam.instances():
                yield st

    def labelled(self) -> Iterator[tuple[str, Statement]]:
        for i, st in enumerate(self.fixed, 1):
            yield f"fixed[{i}]", st
        for fam in self.families:
            for idx, st in fam.instances():
                yield f"{fam.name}{idx}", st


IDEMPOTENT_POWER = parse_statement("x^3 = x^2")
BELOW_SQUARE = parse_statement("x <= x^2")
BASIS545_MIXED = parse_statement("x*y <= x + y^2*z")
BASIS634_MIXED = parse_statement("x*y <= x^2 + y")


def basis_545(n_max: int) -> BasisSpec:
    return BasisSpec(
        "basis545",
        [IDEMPOTENT_POWER, BELOW_SQUARE, BASIS545_MIXED],
        [Family("sigma", [(n, k) for n in range(1, n_max + 1) for k in range(n + 1)],
                lambda n, k: [make_sigma(n, k)])],
    )


def basis_634(n_max: int, theta_cap: int = THETA_CAP) -> BasisSpec:
    top = min(n_max, theta_cap)
    ns = list(range(2, n_max + 1))
    return BasisSpec(
        "basis634",
        [IDEMPOTENT_POWER, BELOW_SQUARE, BASIS634_MIXED],
        [Family("delta", [(n,) for n in range(2, top + 1)],
                lambda n: [make_delta(n, v) for v in enumerate_theta(n, theta_cap)]),
         Family("schema8", [(n,) for n in ns], schema8),
         Family("schema9", [(n,) for n in ns], schema9)],
    )


def basis_vm(M: Iterable[int], n_max: int = 3, theta_cap: int = THETA_CAP) -> BasisSpec:
    """basis_634 truncation plus sigma_{m,0} for m in M."""
    b = basis_634(n_max, theta_cap)
    ms = sorted(set(M))
    return BasisSpec("basisVM", b.fixed,
                     b.families + [Family("sigma0", [(m,) for m in ms],
                                          lambda m: [make_sigma(m, 0)])])


def misses_last_variable(st: Statement) -> bool:
    """True for q_n <= u with x{n+1} absent from u: the k = n corner of schema9."""
    if st.kind != "inequality" or len(st.lhs) != 1:
        return False
    (q,) = st.lhs.words
    top = max(q.content, key=var_key)
    return top not in st.rhs.content


def upper_sides(st: Statement) -> list[Term]:
    """Terms that appear as an upper side: rhs, plus lhs for identities."""
    return [st.rhs] if st.kind == "inequality" else [st.lhs, st.rhs]


# ---------------------------------------------------------------- structural lemma

TRIANGLE = parse_term("x*y + y*z + x*z")
SQUARE = parse_term("x^2")
LEMMA41_PROPERTIES = "abcdefghij"


@dataclass
class PropertyResult:
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""


def _applicable(prop: str, n: int, k: int) -> bool:
    if prop in "eg":
        return n >= (2 if prop == "e" else 4)
    if prop in "hi":
        return n >= 3 and k == n
    if prop == "j":
        return k == 0
    return True


def _square_witness(u: Term) -> str | None:
    for w in u.sorted_words():
        if not w.is_linear():
            return f"{w} has a square divisor"
    emb = find_embedding(SQUARE, u)
    if emb is not None:
        return f"x^2 embeds: {emb}"
    divisors = sorted({d for w in u.words for d in w.divisors()}, key=Word.sort_key)
    for a, b in itertools.combinations(divisors, 2):
        sq = Term.of(a, b) * Term.of(a, b)
        if is_subterm(sq, u) is not None:
            return f"({a} + {b})^2 is a subterm"
    return None


def verify_lemma41(n: int, k: int) -> dict[str, PropertyResult]:
    """Check properties (a)-(j) of u_{n,k} by direct search."""
    u = make_u(n, k)
    words = u.sorted_words()
    head = Word.of(*(x(i) for i in range(1, n + 1)))
    xs_n = frozenset(x(i) for i in range(1, n + 1))
    out: dict[str, PropertyResult] = {}

    def record(prop: str, witness: str | None) -> None:
        out[prop] = PropertyResult("fail", witness) if witness else PropertyResult("pass")

    pairs = list(itertools.combinations(words, 2))
    for prop in LEMMA41_PROPERTIES:
        if not _applicable(prop, n, k):
            out[prop] = PropertyResult("skipped", "hypothesis not met")
            continue
        if prop == "a":
            record(prop, next((f"{w} is not linear" for w in words if not w.is_linear()), None))
        elif prop == "b":
            record(prop, next((f"{a}, {b}" for a, b in pairs
                               if len(a.content & b.content) != 1), None))
        elif prop == "c":
            record(prop, next((f"{a}, {b}" for a, b in pairs if a.s2() & b.s2()), None))
        elif prop == "d":
            record(prop, _square_witness(u))
        elif prop == "e":
            record(prop, next((f"{a} | {b}" for a in words for b in words
                               if a != b and a.divides(b)), None))
        elif prop == "f":
            inside = [w for w in words if w.content <= xs_n]
            record(prop, None if inside == [head] else f"words within x1..x{n}: {inside}")
        elif prop in "gh":
            bound = 4 if prop == "g" else 3
            longs = [w for w in words if w.length >= bound]
            record(prop, None if longs == [head] else f"long words: {longs}")
        else:
            emb = find_embedding(TRIANGLE, u)
            record(prop, f"t1t2+t2t3+t3t1 embeds: {emb}" if emb else None)
    return out
