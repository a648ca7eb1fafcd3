"""Finite additively idempotent semirings given by Cayley tables.

Elements are always addressed by index; labels only matter for printing.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

Table = tuple[tuple[int, ...], ...]


class TableShapeError(ValueError):
    """Raised for tables that are not n x n or hold out-of-range entries."""


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[int, ...]

    def describe(self, labels: Sequence[str] | None = None) -> str:
        names = [labels[i] if labels else str(i) for i in self.witness]
        return f"{self.law} fails at ({', '.join(names)})"


class AxiomError(ValueError):
    """Raised when tables are well formed but violate ai-semiring axioms."""

    def __init__(self, violations: list[Violation], labels: Sequence[str] | None = None):
        self.violations = violations
        self.labels = list(labels) if labels else None
        head = "; ".join(v.describe(self.labels) for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"{len(violations)} axiom violation(s): {head}{more}")


def _as_table(raw, n: int, what: str) -> Table:
    try:
        rows = [list(r) for r in raw]
    except TypeError as exc:
        raise TableShapeError(f"{what} table is not a list of rows") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise TableShapeError(f"{what} table must be {n}x{n}")
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise TableShapeError(f"{what}[{i}][{j}] = {v!r} is not an index in 0..{n - 1}")
    return tuple(tuple(r) for r in rows)


def axiom_violations(add: Table, mul: Table) -> list[Violation]:
    """Every violated axiom instance, in a fixed scan order."""
    n = len(add)
    rn = range(n)
    out: list[Violation] = []
    for a in rn:
        if add[a][a] != a:
            out.append(Violation("additive idempotency", (a,)))
    for a, b in itertools.combinations(rn, 2):
        if add[a][b] != add[b][a]:
            out.append(Violation("additive commutativity", (a, b)))
    for a, b, c in itertools.product(rn, repeat=3):
        if add[add[a][b]][c] != add[a][add[b][c]]:
            out.append(Violation("additive associativity", (a, b, c)))
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            out.append(Violation("multiplicative associativity", (a, b, c)))
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            out.append(Violation("left distributivity", (a, b, c)))
        if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
            out.append(Violation("right distributivity", (a, b, c)))
    return out


@dataclass(frozen=True)
class FiniteAiSemiring:
    elements: tuple[str, ...]
    add: Table
    mul: Table
    name: str | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def leq(self, a: int, b: int) -> bool:
        return self.add[a][b] == b

    def top(self) -> int | None:
        """Additive top: the element absorbing every sum, if any."""
        for t in range(self.order):
            if all(self.add[a][t] == t for a in range(self.order)):
                return t
        return None

    def is_multiplicative_zero(self, z: int) -> bool:
        return all(self.mul[z][a] == z == self.mul[a][z] for a in range(self.order))

    def to_json(self) -> dict:
        d = {"elements": list(self.elements), "add": [list(r) for r in self.add],
             "mul": [list(r) for r in self.mul]}
        if self.name is not None:
            d = {"name": self.name, **d}
        return d

    def __str__(self) -> str:
        w = max(len(e) for e in self.elements)
        lines = [self.name or "semiring"]
        for sym, tab in (("+", self.add), ("*", self.mul)):
            lines.append(f"{sym:>{w}} | " + " ".join(f"{e:>{w}}" for e in self.elements))
            for i, row in enumerate(tab):
                lines.append(f"{self.elements[i]:>{w}} | "
                             + " ".join(f"{self.elements[v]:>{w}}" for v in row))
        return "\n".join(lines)


def validate(add, mul, elements: Sequence[str] | None = None,
             name: str | None = None) -> FiniteAiSemiring:
    """Build a checked algebra from raw tables.

    Raises TableShapeError for malformed tables and AxiomError (carrying the
    full violation list) when the axioms fail.
    """
    try:
        n = len(add)
    except TypeError as exc:
        raise TableShapeError("addition table is not a list of rows") from exc
    if n == 0:
        raise TableShapeError("the carrier must be nonempty")
    a = _as_table(add, n, "add")
    m = _as_table(mul, n, "mul")
    labels = tuple(elements) if elements is not None else tuple(str(i) for i in range(n))
    if len(labels) != n:
        raise TableShapeError(f"{len(labels)} labels for {n} elements")
    if len(set(labels)) != n:
        raise TableShapeError("element labels must be distinct")
    bad = axiom_violations(a, m)
    if bad:
        raise AxiomError(bad, labels)
    return FiniteAiSemiring(labels, a, m, name)


def natural_order(S: FiniteAiSemiring) -> frozenset[tuple[int, int]]:
    """All pairs (a, b) with a + b = b."""
    return frozenset((a, b) for a in range(S.order) for b in range(S.order) if S.add[a][b] == b)


def adjoin_zero(S: FiniteAiSemiring, label: str = "0") -> FiniteAiSemiring:
    """S with a new additive identity that is also a multiplicative zero."""
    n = S.order
    if label in S.elements:
        label = label + "'"
    add = [list(r) + [i] for i, r in enumerate(S.add)] + [list(range(n)) + [n]]
    mul = [list(r) + [n] for r in S.mul] + [[n] * (n + 1)]
    name = f"{S.name}^0" if S.name else None
    return validate(add, mul, S.elements + (label,), name)


def idempotent_extension(S: FiniteAiSemiring, label: str = "e") -> FiniteAiSemiring:
    """Adjoin e with e + a = ee = e and ea = ae = top.

    The additive top of S has to be a multiplicative zero.
    """
    top = S.top()
    if top is None:
        raise ValueError("no additive top element")
    if not S.is_multiplicative_zero(top):
        bad = next(a for a in range(S.order) if S.mul[top][a] != top or S.mul[a][top] != top)
        raise ValueError(f"additive top {S.elements[top]} is not a multiplicative zero "
                         f"(witness {S.elements[bad]})")
    n = S.order
    if label in S.elements:
        label = label + "'"
    add = [list(r) + [n] for r in S.add] + [[n] * (n + 1)]
    mul = [list(r) + [top] for r in S.mul] + [[top] * n + [n]]
    name = f"{S.name}^e" if S.name else None
    return validate(add, mul, S.elements + (label,), name)


def direct_product(S: FiniteAiSemiring, T: FiniteAiSemiring) -> FiniteAiSemiring:
    pairs = list(itertools.product(range(S.order), range(T.order)))
    idx = {p: i for i, p in enumerate(pairs)}
    add = [[idx[S.add[a][c], T.add[b][d]] for (c, d) in pairs] for (a, b) in pairs]
    mul = [[idx[S.mul[a][c], T.mul[b][d]] for (c, d) in pairs] for (a, b) in pairs]
    labels = [f"({S.elements[a]},{T.elements[b]})" for a, b in pairs]
    name = f"{S.name}x{T.name}" if S.name and T.name else None
    return validate(add, mul, labels, name)


def is_closed(S: FiniteAiSemiring, subset) -> bool:
    sub = set(subset)
    return all(S.add[a][b] in sub and S.mul[a][b] in sub for a in sub for b in sub)


def subalgebras(S: FiniteAiSemiring) -> list[tuple[int, ...]]:
    """All nonempty carrier subsets closed under both operations, sorted."""
    out = []
    for r in range(1, S.order + 1):
        for sub in itertools.combinations(range(S.order), r):
            if is_closed(S, sub):
                out.append(sub)
    return out


def restrict(S: FiniteAiSemiring, subset) -> FiniteAiSemiring:
    """The subalgebra on ``subset`` (must be closed), relabelled in index order."""
    sub = sorted(set(subset))
    if not is_closed(S, sub):
        raise ValueError(f"{sub} is not closed under + and *")
    pos = {a: i for i, a in enumerate(sub)}
    add = [[pos[S.add[a][b]] for b in sub] for a in sub]
    mul = [[pos[S.mul[a][b]] for b in sub] for a in sub]
    return validate(add, mul, [S.elements[a] for a in sub])


def _hom_search(S: FiniteAiSemiring, T: FiniteAiSemiring, injective: bool):
    n = S.order
    f = [-1] * n
    used = [False] * T.order

    def consistent(upto: int) -> bool:
        for a in range(upto + 1):
            for b in range(upto + 1):
                for tab_s, tab_t in ((S.add, T.add), (S.mul, T.mul)):
                    c = tab_s[a][b]
                    if c > upto or upto not in (a, b, c):
                        continue
                    if f[c] != tab_t[f[a]][f[b]]:
                        return False
        return True

    def rec(i: int):
        if i == n:
            yield tuple(f)
            return
        for v in range(T.order):
            if injective and used[v]:
                continue
            f[i] = v
            used[v] = True
            if consistent(i):
                yield from rec(i + 1)
            used[v] = False
        f[i] = -1

    return rec(0)


def homomorphisms(S: FiniteAiSemiring, T: FiniteAiSemiring) -> list[tuple[int, ...]]:
    """Every map S -> T preserving + and *, as tuples of image indices (sorted)."""
    return sorted(_hom_search(S, T, injective=False))


def isomorphism(S: FiniteAiSemiring, T: FiniteAiSemiring) -> tuple[int, ...] | None:
    """A bijection S -> T preserving both operations, or None if none exists."""
    if S.order != T.order:
        return None
    return next(_hom_search(S, T, injective=True), None)


def isomorphic(S: FiniteAiSemiring, T: FiniteAiSemiring) -> bool:
    return isomorphism(S, T) is not None


@dataclass
class SubdirectReport:
    ok: bool
    reason: str = ""
    witness: tuple | None = None


def _block_of(partition, n: int) -> list[int]:
    block = [-1] * n
    for b, blk in enumerate(partition):
        for a in blk:
            if not 0 <= a < n or block[a] >= 0:
                raise ValueError("blocks must partition the carrier")
            block[a] = b
    if -1 in block:
        raise ValueError("blocks must partition the carrier")
    return block


def congruence_violation(S: FiniteAiSemiring, partition) -> tuple | None:
    """A witness (a, b, c, op) with a ~ b but a op c !~ b op c (or c op a), else None."""
    blk = _block_of(partition, S.order)
    rn = range(S.order)
    for a in rn:
        for b in rn:
            if a >= b or blk[a] != blk[b]:
                continue
            for c in rn:
                for op, tab in (("+", S.add), ("*", S.mul)):
                    if blk[tab[a][c]] != blk[tab[b][c]] or blk[tab[c][a]] != blk[tab[c][b]]:
                        return (a, b, c, op)
    return None


def quotient(S: FiniteAiSemiring, partition) -> FiniteAiSemiring:
    blk = _block_of(partition, S.order)
    if congruence_violation(S, partition) is not None:
        raise ValueError("partition is not a congruence")
    reps = [min(b) for b in partition]
    k = len(partition)
    add = [[blk[S.add[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    mul = [[blk[S.mul[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    labels = ["{" + ",".join(S.elements[a] for a in sorted(b)) + "}" for b in partition]
    return validate(add, mul, labels)


def subdirect_decomposition_check(S: FiniteAiSemiring, factors, partitions) -> SubdirectReport:
    """Check that S embeds subdirectly into the product of ``factors``.

    ``partitions[i]`` lists the blocks of the congruence whose quotient should be
    isomorphic to ``factors[i]``.
    """
    if len(factors) != len(partitions):
        raise ValueError("one partition per factor is required")
    blocks = []
    for i, (F, part) in enumerate(zip(factors, partitions)):
        bad = congruence_violation(S, part)
        if bad is not None:
            return SubdirectReport(False, f"partition {i} is not a congruence", bad)
        Q = quotient(S, part)
        if isomorphism(Q, F) is None:
            return SubdirectReport(False, f"quotient {i} is not isomorphic to its factor")
        blocks.append(_block_of(part, S.order))
    # the induced map a -> (block_i(a))_i is injective iff the congruences meet trivially
    images = [tuple(b[a] for b in blocks) for a in range(S.order)]
    if len(set(images)) != S.order:
        a, b = next((a, b) for a, b in itertools.combinations(range(S.order), 2)
                    if images[a] == images[b])
        return SubdirectReport(False, "congruences do not separate points", (a, b))
    for i, part in enumerate(partitions):
        if {img[i] for img in images} != set(range(len(part))):
            return SubdirectReport(False, f"projection onto factor {i} is not surjective")
    return SubdirectReport(True)


def load_semiring(path: str | Path) -> FiniteAiSemiring:
    """Read the JSON file format; raises TableShapeError/AxiomError on bad input."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict) or not {"elements", "add", "mul"} <= data.keys():
        raise TableShapeError("expected keys 'elements', 'add', 'mul'")
    return validate(data["add"], data["mul"], data["elements"], data.get("name"))


def dump_semiring(S: FiniteAiSemiring, path: str | Path) -> None:
    Path(path).write_text(json.dumps(S.to_json(), ensure_ascii=False) + "\n", encoding="utf-8")
