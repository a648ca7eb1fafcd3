"""Isomorphism classes of ai-semirings of small order.

Every class has a member whose addition table is a canonical semilattice, so
the search runs over canonical semilattices and, for each, over
multiplication tables whose rows and columns are join-endomorphisms
(distributivity), pruning on associativity as rows are filled.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .algebra import FiniteAiSemiring, validate

MAX_ORDER = 5
Table = tuple[tuple[int, ...], ...]


def _freeze(tab) -> Table:
    return tuple(tuple(int(v) for v in row) for row in tab)


def permute(tab: Sequence[Sequence[int]], perm: Sequence[int]) -> Table:
    """Relabel element i as perm[i]."""
    n = len(tab)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = perm[tab[i][j]]
    return _freeze(out)


def canonical_pair(add, mul) -> tuple[Table, Table, tuple[int, ...]]:
    """Lexicographically least (add, mul) over all relabelings, with the relabeling used."""
    n = len(add)
    best = None
    for perm in itertools.permutations(range(n)):
        key = (permute(add, perm), permute(mul, perm))
        if best is None or key < best[:2]:
            best = (*key, perm)
    return best


def canonical_form(S: FiniteAiSemiring) -> tuple[Table, Table]:
    a, m, _ = canonical_pair(S.add, S.mul)
    return a, m


def _canonical_table(tab) -> Table:
    return min(permute(tab, p) for p in itertools.permutations(range(len(tab))))


# ---------------------------------------------------------------- semilattices

def enumerate_semilattices(order: int) -> list[Table]:
    """Commutative idempotent associative tables up to relabeling, canonical and sorted."""
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be between 1 and {MAX_ORDER}")
    n = order
    cells = list(itertools.combinations(range(n), 2))
    tab = [[i if i == j else -1 for j in range(n)] for i in range(n)]
    found: set[Table] = set()

    def assoc_ok() -> bool:
        for a in range(n):
            for b in range(n):
                ab = tab[a][b]
                if ab < 0:
                    continue
                for c in range(n):
                    bc = tab[b][c]
                    if bc < 0:
                        continue
                    lhs, rhs = tab[ab][c], tab[a][bc]
                    if lhs >= 0 and rhs >= 0 and lhs != rhs:
                        return False
        return True

    def rec(k: int) -> None:
        if k == len(cells):
            found.add(_canonical_table(tab))
            return
        i, j = cells[k]
        for v in range(n):
            tab[i][j] = tab[j][i] = v
            if assoc_ok():
                rec(k + 1)
        tab[i][j] = tab[j][i] = -1

    rec(0)
    return sorted(found)


def is_chain(add: Sequence[Sequence[int]]) -> bool:
    n = len(add)
    return all(add[a][b] in (a, b) for a in range(n) for b in range(n))


def additive_class(add: Sequence[Sequence[int]]) -> str:
    if is_chain(add):
        return "chain"
    return "sl-" + "".join(str(v) for row in _canonical_table(add) for v in row)


def join_endomorphisms(add: Table) -> list[tuple[int, ...]]:
    n = len(add)
    return [f for f in itertools.product(range(n), repeat=n)
            if all(f[add[a][b]] == add[f[a]][f[b]] for a in range(n) for b in range(a + 1, n))]


def automorphisms(tab: Table) -> list[tuple[int, ...]]:
    return [p for p in itertools.permutations(range(len(tab))) if permute(tab, p) == tab]


# ---------------------------------------------------------------- multiplications

def _multiplications(add: Table) -> list[Table]:
    """Every mul table making (add, mul) an ai-semiring, on this labeling."""
    n = len(add)
    rows = join_endomorphisms(add)
    mul: list[tuple[int, ...]] = []
    out: list[Table] = []

    def consistent() -> bool:
        k = len(mul)
        i = k - 1
        # right distributivity among filled rows: (y+z)x = yx + zx
        for y in range(k):
            for z in range(y + 1, k):
                s = add[y][z]
                if s < k and any(mul[s][x] != add[mul[y][x]][mul[z][x]] for x in range(n)):
                    return False
        # associativity where both sides are computable and the new row is involved
        for a in range(k):
            for b in range(k):
                ab = mul[a][b]
                if ab >= k:
                    continue
                for c in range(n):
                    if i not in (a, b, ab):
                        continue
                    if mul[ab][c] != mul[a][mul[b][c]]:
                        return False
        return True

    def rec() -> None:
        if len(mul) == n:
            out.append(tuple(mul))
            return
        for r in rows:
            mul.append(r)
            if consistent():
                rec()
            mul.pop()

    rec()
    return out


@dataclass(frozen=True)
class CensusRecord:
    semiring: FiniteAiSemiring
    additive_class: str
    order: int

    @property
    def key(self) -> tuple[Table, Table]:
        return self.semiring.add, self.semiring.mul

    def to_json(self) -> dict:
        return {**self.semiring.to_json(), "additive_class": self.additive_class}

    @classmethod
    def from_json(cls, data: dict) -> CensusRecord:
        S = validate(data["add"], data["mul"], data["elements"], data.get("name"))
        return cls(S, data["additive_class"], S.order)


def _record(add: Table, mul: Table, index: int | None = None) -> CensusRecord:
    n = len(add)
    name = None if index is None else f"C{n}.{index}"
    S = validate(add, mul, [str(i) for i in range(n)], name)
    return CensusRecord(S, additive_class(add), n)


def _classes_over(add: Table) -> set[Table]:
    auts = automorphisms(add)
    return {min(permute(m, p) for p in auts) for m in _multiplications(add)}


def enumerate_ai_semirings(order: int, additive: str | None = None,
                           workers: int = 1) -> list[CensusRecord]:
    """Complete, duplicate-free list of classes, sorted by canonical tables.

    ``additive`` keeps only records with that additive class tag (e.g. "chain").
    Since each addition table is canonical, relabelings that keep the canonical
    pair least are exactly its automorphisms, so minimising over them yields
    the same canonical form as minimising over all relabelings.
    """
    adds = enumerate_semilattices(order)
    if additive is not None:
        adds = [a for a in adds if additive_class(a) == additive]
    if workers > 1 and len(adds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_add = list(pool.map(_classes_over, adds))
    else:
        per_add = [_classes_over(a) for a in adds]
    pairs = sorted((a, m) for a, ms in zip(adds, per_add) for m in ms)
    return [_record(a, m, i) for i, (a, m) in enumerate(pairs, 1)]


class NotInCensus(LookupError):
    pass


@dataclass
class Located:
    record: CensusRecord
    isomorphism: tuple[int, ...]  # S element i corresponds to record element isomorphism[i]


def locate(S: FiniteAiSemiring, census: Iterable[CensusRecord]) -> Located:
    a, m, perm = canonical_pair(S.add, S.mul)
    for rec in census:
        if rec.order == S.order and rec.key == (a, m):
            return Located(rec, perm)
    raise NotInCensus(f"{S.name or 'algebra'} matches no census record: census or validation bug")


# ---------------------------------------------------------------- independent oracles

def oracle_count(order: int) -> int:
    """Number of classes by scanning every table pair (order <= 2) or every
    multiplication table over each semilattice found by a flat scan (order 3)."""
    if order > 3:
        raise ValueError("the exhaustive oracle covers orders up to 3")
    n = order
    adds = []
    for flat in itertools.product(range(n), repeat=n * n):
        t = [flat[i * n:(i + 1) * n] for i in range(n)]
        if _is_semilattice(t):
            adds.append(_freeze(t))
    if n <= 2:
        muls = [_freeze([flat[i * n:(i + 1) * n] for i in range(n)])
                for flat in itertools.product(range(n), repeat=n * n)]
        classes = set()
        for a in adds:
            for m in muls:
                if _is_ai_semiring(a, m):
                    classes.add(canonical_pair(a, m)[:2])
        return len(classes)
    reps = sorted({_canonical_table(a) for a in adds})
    classes = set()
    for a in reps:
        for m in _scan_muls(a):
            classes.add(canonical_pair(a, m)[:2])
    return len(classes)


def _is_semilattice(t) -> bool:
    n = len(t)
    r = range(n)
    return (all(t[a][a] == a for a in r) and all(t[a][b] == t[b][a] for a in r for b in r)
            and all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r))


def _is_ai_semiring(add, mul) -> bool:
    r = range(len(add))
    return all(mul[mul[a][b]][c] == mul[a][mul[b][c]]
               and mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]
               and mul[add[b][c]][a] == add[mul[b][a]][mul[c][a]]
               for a in r for b in r for c in r)


def _scan_muls(add: Table) -> list[Table]:
    """All n^(n*n) multiplication tables at once, filtered by numpy."""
    n = len(add)
    A = np.array(add)
    total = n ** (n * n)
    idx = np.arange(total)
    M = np.stack([(idx // n ** (n * n - 1 - k)) % n for k in range(n * n)], axis=1).reshape(total, n, n)
    rows = np.arange(total)
    ok = np.ones(total, dtype=bool)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                ab = M[:, a, b]
                bc = M[:, b, c]
                ok &= M[rows, ab, c] == M[rows, a, bc]
                ok &= M[:, a, A[b, c]] == A[M[:, a, b], M[:, a, c]]
                ok &= M[:, A[b, c], a] == A[M[:, b, a], M[:, c, a]]
    return [_freeze(m) for m in M[ok]]


# ---------------------------------------------------------------- persistence

def write_census(records: Sequence[CensusRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")


def read_census(path: str | Path) -> list[CensusRecord]:
    with open(path, encoding="utf-8") as fh:
        return [CensusRecord.from_json(json.loads(line)) for line in fh if line.strip()]


def verify_census(records: Sequence[CensusRecord], order: int) -> list[str]:
    """Problems found in a stored census (empty list when it is sound)."""
    problems = []
    seen = set()
    for i, rec in enumerate(records):
        if rec.order != order:
            problems.append(f"record {i}: order {rec.order}, expected {order}")
        if canonical_form(rec.semiring) != rec.key:
            problems.append(f"record {i}: tables are not in canonical form")
        if rec.additive_class != additive_class(rec.semiring.add):
            problems.append(f"record {i}: wrong additive class tag")
        if rec.key in seen:
            problems.append(f"record {i}: duplicate class")
        seen.add(rec.key)
    return problems


def load_or_enumerate(order: int, path: str | Path | None = None, force: bool = False,
                      workers: int = 1) -> tuple[list[CensusRecord], str]:
    """Reuse a stored census after verifying it, or compute (and store) a fresh one."""
    if path is not None and Path(path).exists() and not force:
        records = read_census(path)
        problems = verify_census(records, order)
        if problems:
            raise ValueError(f"stored census {path} failed verification: {problems[0]}")
        return records, "verified"
    records = enumerate_ai_semirings(order, workers=workers)
    if path is not None:
        write_census(records, path)
    return records, "computed"
