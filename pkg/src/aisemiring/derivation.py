"""One-step rewriting t = P*phi(s) + r  ->  P*phi(s') + r, and bounded BFS over it.

A rule is an identity s = s' read in one direction; every statement of the
basis contributes both directions (an inequality q <= u is the identity
q + u = u). Matching reuses the freeness matcher to find word-valued
solutions and then assembles set-valued images from them: phi(x) may be a
sum of several words as long as every diagonal choice is a word solution.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .freeness import Matcher
from .terms import (Statement, Term, Word, apply, parse_statement, parse_term,
                    var_key)


@dataclass(frozen=True)
class Caps:
    max_image_size: int = 3
    max_word_len: int = 4
    max_multiplier_len: int = 4
    max_combos: int = 20_000
    max_nodes: int = 200_000
    term_multipliers: bool = False


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class DerivationStep:
    """source = P*phi(lhs) + r and target = P*phi(rhs) + r, with rule = (lhs = rhs)."""
    rule: Statement
    multiplier: Term | None
    remainder: frozenset[Word]
    substitution: dict[str, Term]

    def _side(self, side: Term) -> frozenset[Word]:
        img = apply(self.substitution, side)
        if self.multiplier is not None:
            img = self.multiplier * img
        return img.words

    def source(self) -> Term:
        return Term(self._side(self.rule.lhs) | self.remainder)

    def target(self) -> Term:
        return Term(self._side(self.rule.rhs) | self.remainder)

    def describe(self) -> str:
        phi = ", ".join(f"{v} -> {t}" for v, t in
                        sorted(self.substitution.items(), key=lambda kv: var_key(kv[0])))
        p = str(self.multiplier) if self.multiplier is not None else "1"
        r = " + ".join(map(str, sorted(self.remainder, key=Word.sort_key))) or "0"
        return f"rule {self.rule.lhs} -> {self.rule.rhs}; p = {p}; {phi}; r = {r}"


def endpoints(goal: Statement) -> tuple[Term, Term]:
    if goal.kind == "inequality":
        return goal.lhs + goal.rhs, goal.rhs
    return goal.lhs, goal.rhs


@dataclass
class DerivationTrace:
    goal: Statement
    terms: list[Term]
    steps: list[DerivationStep]

    def __len__(self) -> int:
        return len(self.steps)

    def render(self) -> str:
        lines = [f"goal: {self.goal}", f"  1. {self.terms[0]}"]
        for i, (st, t) in enumerate(zip(self.steps, self.terms[1:]), 2):
            lines.append(f"     [{st.describe()}]")
            lines.append(f"  {i}. {t}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "goal": str(self.goal),
            "terms": [str(t) for t in self.terms],
            "steps": [{
                "rule": str(s.rule),
                "multiplier": None if s.multiplier is None else str(s.multiplier),
                "remainder": [str(w) for w in sorted(s.remainder, key=Word.sort_key)],
                "substitution": {v: str(t) for v, t in s.substitution.items()},
            } for s in self.steps],
        }

    @classmethod
    def from_json(cls, data: dict) -> DerivationTrace:
        steps = []
        for s in data["steps"]:
            steps.append(DerivationStep(
                parse_statement(s["rule"]),
                None if s["multiplier"] is None else parse_term(s["multiplier"]),
                frozenset(w for text in s["remainder"] for w in parse_term(text).words),
                {v: parse_term(t) for v, t in s["substitution"].items()},
            ))
        return cls(parse_statement(data["goal"]), [parse_term(t) for t in data["terms"]], steps)


def check_trace(trace: DerivationTrace, basis: Iterable[Statement] | None = None) -> tuple[bool, int | None]:
    """Revalidate by term arithmetic. Returns (ok, index of first bad step).

    Index -1 flags wrong endpoints. With ``basis`` given, every rule must be an
    orientation of one of its statements.
    """
    start, end = endpoints(trace.goal)
    if not trace.terms or trace.terms[0] != start or trace.terms[-1] != end:
        return False, -1
    if len(trace.terms) != len(trace.steps) + 1:
        return False, -1
    allowed = None if basis is None else {(r.lhs, r.rhs) for r in orient(basis)}
    for i, step in enumerate(trace.steps):
        if step.rule.kind != "identity":
            return False, i
        if allowed is not None and (step.rule.lhs, step.rule.rhs) not in allowed:
            return False, i
        if step.source() != trace.terms[i] or step.target() != trace.terms[i + 1]:
            return False, i
    return True, None


def orient(basis: Iterable[Statement]) -> list[Statement]:
    """Both directions of every basis statement, as identities, without repeats."""
    out: list[Statement] = []
    seen = set()
    for st in basis:
        ident = st.as_identity()
        for lhs, rhs in ((ident.lhs, ident.rhs), (ident.rhs, ident.lhs)):
            if lhs != rhs and (lhs, rhs) not in seen:
                seen.add((lhs, rhs))
                out.append(Statement.identity(lhs, rhs))
    return out


# ---------------------------------------------------------------- one step

@dataclass
class Neighbors:
    terms: dict[Term, DerivationStep] = field(default_factory=dict)
    truncated: bool = False


def _subsets(items: list, max_size: int) -> Iterator[tuple]:
    for r in range(1, min(max_size, len(items)) + 1):
        yield from itertools.combinations(items, r)


def _rule_steps(t: Term, rule: Statement, caps: Caps, out: Neighbors) -> Iterator[DerivationStep]:
    s, s2 = rule.lhs, rule.rhs
    svars = sorted(s.content, key=var_key)
    sols: set[tuple] = set()
    for p, phi in Matcher(s, t).solutions():
        if p is not None and p.length > caps.max_multiplier_len:
            out.truncated = True
            continue
        if any(phi[v].length > caps.max_word_len for v in svars):
            out.truncated = True
            continue
        sols.add((p, tuple(phi[v] for v in svars)))
    if not sols:
        return
    mults = sorted({p for p, _ in sols}, key=lambda p: (p is not None, p.sort_key() if p else ()))
    per_var = [sorted({img[i] for _, img in sols}, key=Word.sort_key) for i in range(len(svars))]
    choices = [list(_subsets(ws, caps.max_image_size)) for ws in per_var]
    combos = 1
    for c in choices:
        combos *= len(c)
    if combos > caps.max_combos:
        out.truncated = True
        choices = [[(w,) for w in ws] for ws in per_var]

    extra = sorted(s2.content - s.content, key=var_key)
    if extra:
        out.truncated = True  # fresh variables only receive single variables of t
        fillers = [Term.var(v) for v in sorted(t.content, key=var_key)]
        extra_maps = [dict(zip(extra, imgs)) for imgs in itertools.product(fillers, repeat=len(extra))]
    else:
        extra_maps = [{}]

    for images in itertools.product(*choices):
        diag = list(itertools.product(*images))
        valid = [p for p in mults if all((p, d) in sols for d in diag)]
        if not valid:
            continue
        if caps.term_multipliers:
            ps = [None if P == (None,) else Term(P) for P in _subsets(valid, caps.max_image_size)
                  if None not in P or len(P) == 1]
        else:
            ps = [None if p is None else Term.of(p) for p in valid]
        base_phi = {v: Term(img) for v, img in zip(svars, images)}
        for P in ps:
            for em in extra_maps:
                phi = {**base_phi, **em}
                step = DerivationStep(rule, P, frozenset(), phi)
                img = step._side(s)
                if not img <= t.words:
                    continue  # cross products of a repeated variable's words
                rest = t.words - img
                img_list = sorted(img, key=Word.sort_key)
                for r in range(len(img_list) + 1):
                    for keep in itertools.combinations(img_list, r):
                        yield DerivationStep(rule, P, rest | frozenset(keep), phi)


def rewrite_neighbors(t: Term, basis: Iterable[Statement], caps: Caps = DEFAULT_CAPS,
                      rules: list[Statement] | None = None) -> Neighbors:
    """Every term one oriented rule application away from t (first step kept per term)."""
    out = Neighbors()
    for rule in rules if rules is not None else orient(basis):
        for step in _rule_steps(t, rule, caps, out):
            nxt = step.target()
            if nxt != t and nxt not in out.terms:
                out.terms[nxt] = step
    return out


# ---------------------------------------------------------------- search

@dataclass
class SearchOutcome:
    """Either a trace, or the bounds that were exhausted without finding one."""
    goal: Statement
    trace: DerivationTrace | None
    depth_reached: int
    explored: int
    truncated: bool
    node_cap_hit: bool = False

    @property
    def found(self) -> bool:
        return self.trace is not None

    def bound_report(self) -> str:
        why = []
        if self.node_cap_hit:
            why.append("node cap reached")
        if self.truncated:
            why.append("some neighbour sets were truncated by caps")
        extra = f" ({'; '.join(why)})" if why else ""
        return (f"no derivation of {self.goal} within depth {self.depth_reached} "
                f"after {self.explored} terms{extra}")


@dataclass
class Derivation:
    goal: Statement
    parts: list[SearchOutcome]

    @property
    def found(self) -> bool:
        return all(p.found for p in self.parts)

    @property
    def traces(self) -> list[DerivationTrace]:
        return [p.trace for p in self.parts if p.trace is not None]


def search(goal: Statement, basis: list[Statement], depth: int, caps: Caps = DEFAULT_CAPS) -> SearchOutcome:
    start, end = endpoints(goal)
    rules = orient(basis)
    parent: dict[Term, tuple[Term, DerivationStep] | None] = {start: None}
    frontier = [start]
    truncated = False
    level = 0

    def trace_to(t: Term) -> DerivationTrace:
        terms, steps = [t], []
        while parent[t] is not None:
            t, st = parent[t]
            terms.append(t)
            steps.append(st)
        return DerivationTrace(goal, terms[::-1], steps[::-1])

    if start == end:
        return SearchOutcome(goal, trace_to(start), 0, 1, False)
    while frontier and level < depth:
        level += 1
        nxt: list[Term] = []
        for t in frontier:
            nb = rewrite_neighbors(t, (), caps, rules)
            truncated |= nb.truncated
            for u in sorted(nb.terms, key=Term.sort_key):
                if u in parent:
                    continue
                parent[u] = (t, nb.terms[u])
                if u == end:
                    return SearchOutcome(goal, trace_to(u), level, len(parent), truncated)
                nxt.append(u)
                if len(parent) >= caps.max_nodes:
                    return SearchOutcome(goal, None, level, len(parent), truncated, True)
        frontier = nxt
    return SearchOutcome(goal, None, level, len(parent), truncated)


def derive(goal: Statement, basis: Iterable[Statement], depth: int = 4,
           caps: Caps = DEFAULT_CAPS) -> Derivation:
    """BFS for each word-lhs inequality the goal splits into."""
    basis = list(basis)
    return Derivation(goal, [search(part, basis, depth, caps) for part in goal.split()])


def dump_traces(derivation: Derivation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"goal": str(derivation.goal),
                   "traces": [t.to_json() for t in derivation.traces]}, fh, indent=2)


def load_traces(path: str) -> list[DerivationTrace]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return [DerivationTrace.from_json(t) for t in data["traces"]]
