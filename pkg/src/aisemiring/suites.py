"""Named verification suites. Each returns a SuiteReport with one record per case."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from .algebra import adjoin_zero, idempotent_extension, isomorphic, subdirect_decomposition_check
from .catalog import NAMES, catalog
from .checker import (ORACLES, crossvalidate, find_countermodel, holds, oracle_adjoin_zero,
                      random_statement, statement_space)
from .families import (THETA_CAP, basis_545, basis_634, delta_star, enumerate_theta,
                       make_delta, make_sigma, make_u, misses_last_variable, upper_sides,
                       verify_lemma41, x, y)
from .freeness import DEFAULT_BUDGET, SearchBudgetExceeded, find_embedding, is_free
from .reports import SuiteReport
from .terms import Statement, Term, Word, delta_sets, is_subterm, parse_statement, parse_term


@dataclass
class Bounds:
    prop32_m: tuple[int, ...] = (4, 5)
    prop32_n_max: int = 5
    prop41_m: tuple[int, ...] = (3, 4)
    prop41_n: tuple[int, ...] = (2, 3)
    prop52_m: tuple[int, ...] = (1, 2, 3, 4)
    prop52_n: tuple[int, ...] = (2, 3)
    lemma41_n_max: int = 6
    distinct_p: tuple[int, ...] = (1, 2, 3, 4)
    distinct_theta_n: tuple[int, ...] = (2, 3)
    corollary_n_max: int = 5
    corollary_brute_n_max: int = 3
    basis545_n_max: int = 4
    basis634_n_max: int = 3
    theta_cap: int = THETA_CAP
    samples: int = 300
    seed: int = 0
    budget: int = DEFAULT_BUDGET


def _renamings(v: Term, u: Term) -> bool:
    """Is v the image of u under a permutation of u's variables?"""
    vs = sorted(u.content)
    if v.content != u.content or len(v) != len(u):
        return False
    for perm in itertools.permutations(vs):
        ren = dict(zip(vs, perm))
        if Term(Word((ren[a], e) for a, e in w.items) for w in u.words) == v:
            return True
    return False


def theta_note(v: Term, n: int) -> str | None:
    """Why a Theta_n member gives a harmless delta_{n,v}, if it does."""
    if len(v) == 1:
        return "single-word member: delta is the trivial inequality q_n <= q_n"
    if _renamings(v, make_u(n, n)):
        return f"variable renaming of u_{{{n},{n}}}: delta is a renamed sigma_{{{n},{n}}}"
    return None


def _freeness_case(rep: SuiteReport, params: dict, pattern: Term, target: Term,
                   budget: int, note: str | None = None) -> None:
    start = time.perf_counter()
    try:
        emb = find_embedding(pattern, target, budget)
    except SearchBudgetExceeded as exc:
        rep.add(params, "inconclusive", str(exc), time.perf_counter() - start)
        return
    if emb is None:
        rep.add(params, "free", None, time.perf_counter() - start)
    else:
        rep.add(params, "embedded", str(emb), time.perf_counter() - start, note)


# ---------------------------------------------------------------- freeness grids

def suite_prop32(b: Bounds) -> SuiteReport:
    rep = SuiteReport("prop32")
    for m in b.prop32_m:
        target = make_u(m, 0)
        for n in range(1, b.prop32_n_max + 1):
            for k in range(n + 1):
                if n == m and k == 0:
                    continue
                _freeness_case(rep, {"m": m, "n": n, "k": k}, make_u(n, k), target, b.budget)
    return rep


def suite_prop41(b: Bounds) -> SuiteReport:
    rep = SuiteReport("prop41")
    for m in b.prop41_m:
        target = make_u(m, m)
        for n in b.prop41_n:
            for i, v in enumerate(enumerate_theta(n, b.theta_cap)):
                if v == target:
                    continue
                _freeness_case(rep, {"m": m, "n": n, "v": str(v), "index": i}, v, target,
                               b.budget, theta_note(v, n))
    return rep


def suite_prop52(b: Bounds) -> SuiteReport:
    rep = SuiteReport("prop52")
    for m in b.prop52_m:
        target = make_u(m, 0)
        for n in b.prop52_n:
            for i, v in enumerate(enumerate_theta(n, b.theta_cap)):
                _freeness_case(rep, {"m": m, "n": n, "v": str(v), "index": i}, v, target,
                               b.budget, theta_note(v, n))
    return rep


def _random_term(rng: random.Random, letters: str, words: int, max_len: int) -> Term:
    return Term(Word.of(*(rng.choice(letters) for _ in range(rng.randint(1, max_len))))
                for _ in range(rng.randint(1, words)))


def suite_lemma21_chain(b: Bounds) -> SuiteReport:
    """If target is pattern-free and pattern <= bigger (subterm), target is bigger-free."""
    rep = SuiteReport("lemma21_chain")
    rng = random.Random(b.seed)
    targets = [make_u(n, k) for n in range(1, 4) for k in range(n + 1)]
    for i in range(b.samples):
        v = rng.choice(targets)
        u = _random_term(rng, "ab", 2, 3)
        w = u
        if rng.random() < 0.7:
            w = w * _random_term(rng, "abc", 1, 2)
        if rng.random() < 0.7:
            w = w + _random_term(rng, "abc", 2, 3)
        params = {"sample": i, "target": str(v), "pattern": str(u), "bigger": str(w)}
        if is_subterm(u, w) is None:
            rep.add(params, "fail", "constructed term is not a superterm")
            continue
        if not is_free(u, v, b.budget):
            rep.add(params, "vacuous")
            continue
        emb = find_embedding(w, v, b.budget)
        if emb is None:
            rep.add(params, "holds")
        else:
            rep.add(params, "fail", str(emb))
    return rep


def verify_freeness_suite(which: str, bounds: Bounds | None = None) -> SuiteReport:
    table: dict[str, Callable[[Bounds], SuiteReport]] = {
        "prop32": suite_prop32, "prop41": suite_prop41, "prop52": suite_prop52,
        "lemma21_chain": suite_lemma21_chain,
    }
    if which not in table:
        raise KeyError(f"unknown freeness suite {which!r}")
    return table[which](bounds or Bounds())


def suite_lemma41(b: Bounds) -> SuiteReport:
    rep = SuiteReport("lemma41")
    for n in range(1, b.lemma41_n_max + 1):
        for k in range(n + 1):
            with rep.timed() as slot:
                res = verify_lemma41(n, k)
                fails = {p: r.detail for p, r in res.items() if r.status == "fail"}
                slot["params"] = {"n": n, "k": k,
                                  "status": "".join(r.status[0] for r in res.values())}
                slot["verdict"] = "fail" if fails else "pass"
                slot["witness"] = str(fails) if fails else None
    return rep


def suite_distinctness(b: Bounds) -> SuiteReport:
    """u_{p,0} must be t-free for t = u_{q,0} (q != p), the fixed upper sides and Theta_n."""
    rep = SuiteReport("distinctness")
    fixed = basis_634(2, b.theta_cap).fixed
    fixed_sides = list(dict.fromkeys(t for st in fixed for t in upper_sides(st)))
    thetas = {n: enumerate_theta(n, b.theta_cap) for n in b.distinct_theta_n}
    for p in b.distinct_p:
        target = make_u(p, 0)
        for q in b.distinct_p:
            if q != p:
                _freeness_case(rep, {"p": p, "pattern": f"u_{{{q},0}}"}, make_u(q, 0), target, b.budget)
        for t in fixed_sides:
            _freeness_case(rep, {"p": p, "pattern": str(t)}, t, target, b.budget)
        for n, members in thetas.items():
            for i, v in enumerate(members):
                _freeness_case(rep, {"p": p, "n": n, "index": i, "pattern": str(v)}, v, target,
                               b.budget, theta_note(v, n))
    return rep


# ---------------------------------------------------------------- algebra suites

def _basis_case(rep: SuiteReport, S, label: str, st: Statement) -> None:
    with rep.timed() as slot:
        cm = find_countermodel(S, st)
        slot["params"] = {"label": label, "statement": str(st)}
        slot["verdict"] = "pass" if cm is None else "fail"
        if cm is not None:
            slot["witness"] = ", ".join(f"{v}={S.elements[a]}" for v, a in cm.items())
            if label.startswith("schema9") and misses_last_variable(st):
                slot["note"] = "k = n instance: empty pair sum leaves x_{n+1} out of the upper side"


def suite_basis545(b: Bounds) -> SuiteReport:
    rep = SuiteReport("basis545")
    S = catalog("S4_545")
    for label, st in basis_545(b.basis545_n_max).labelled():
        _basis_case(rep, S, label, st)
    return rep


def suite_basis634(b: Bounds) -> SuiteReport:
    rep = SuiteReport("basis634")
    S = catalog("S4_634")
    for label, st in basis_634(b.basis634_n_max, b.theta_cap).labelled():
        _basis_case(rep, S, label, st)
    return rep


def expected_delta(n: int, k: int) -> frozenset[frozenset[str]]:
    if k == 0:
        return frozenset(frozenset([x(i)] + [y(j) for j in range(1, n + 1) if j != i])
                         for i in range(1, n + 1))
    if k == 1:
        return frozenset([frozenset([x(1)] + [y(j) for j in range(2, n + 1)])])
    return frozenset()


def suite_corollary37(b: Bounds) -> SuiteReport:
    rep = SuiteReport("corollary37")
    S7 = catalog("S7")
    oracle = ORACLES["s7"][0]
    for n in range(1, b.corollary_n_max + 1):
        for k in range(n + 1):
            with rep.timed() as slot:
                got = delta_sets(make_u(n, k))
                want = expected_delta(n, k)
                slot["params"] = {"check": "delta", "n": n, "k": k}
                slot["verdict"] = "pass" if got == want else "fail"
                if got != want:
                    slot["witness"] = f"computed {sorted(map(sorted, got))}, formula {sorted(map(sorted, want))}"
    for n in range(1, b.corollary_brute_n_max + 1):
        for k in range(n + 1):
            with rep.timed() as slot:
                st = make_sigma(n, k)
                by_oracle, by_scan = oracle(st), holds(S7, st)
                slot["params"] = {"check": "S7 satisfies sigma", "n": n, "k": k}
                ok = by_oracle and by_scan
                slot["verdict"] = "pass" if ok else "fail"
                if not ok:
                    slot["witness"] = f"oracle={by_oracle}, brute force={by_scan}"
    return rep


def suite_catalog(b: Bounds) -> SuiteReport:
    rep = SuiteReport("catalog")

    def case(params: dict, ok: bool, witness: str = "check failed") -> None:
        rep.add(params, "pass" if ok else "fail", None if ok else witness)

    for name in NAMES:
        case({"check": "validate", "algebra": name}, catalog(name).order > 0)
    case({"check": "adjoin_zero(S53) ~ S4_634"},
         isomorphic(adjoin_zero(catalog("S53")), catalog("S4_634")))
    sub = subdirect_decomposition_check(catalog("S4_545"), [catalog("S43"), catalog("S53")],
                                        [[[0, 1], [2], [3]], [[0], [1], [2, 3]]])
    case({"check": "S4_545 subdirect in S43 x S53"}, sub.ok, sub.reason)
    Se = idempotent_extension(catalog("S53"))
    S545 = catalog("S4_545")
    with rep.timed() as slot:
        diffs = []
        count = 0
        for st in statement_space():
            count += 1
            if holds(S545, st) != holds(Se, st):
                diffs.append(str(st))
        slot["params"] = {"check": "S4_545 and S53^e satisfy the same statements", "statements": count}
        slot["verdict"] = "fail" if diffs else "pass"
        if diffs:
            slot["witness"] = f"{len(diffs)} differing, e.g. {diffs[0]}"
    return rep


def suite_oracles(b: Bounds) -> SuiteReport:
    rep = SuiteReport("oracles")
    space = list(statement_space())
    rng = random.Random(b.seed)
    sample = [random_statement(rng, max_vars=4) for _ in range(10_000)]
    s53 = catalog("S53")
    runs = [(label, fn, catalog(alg)) for label, (fn, alg) in ORACLES.items()]
    runs.append(("zero:S53", lambda st: oracle_adjoin_zero(s53, st), adjoin_zero(s53)))
    for label, fn, S in runs:
        for space_name, stmts in (("exhaustive", space), ("random", sample)):
            with rep.timed() as slot:
                ag = crossvalidate(fn, S, stmts, label)
                slot["params"] = {"oracle": label, "space": space_name, "statements": ag.checked}
                slot["verdict"] = "pass" if ag.ok else "disagree"
                if not ag.ok:
                    slot["witness"] = f"{ag.failures} disagreement(s), e.g. {ag.disagreements[0]}"
    return rep


def suite_census(b: Bounds, census_path: str | None = None, force: bool = False,
                 workers: int = 1) -> SuiteReport:
    from .census import (enumerate_ai_semirings, load_or_enumerate, locate, oracle_count)
    rep = SuiteReport("census")
    expected = {3: 61, 4: 866}
    counts = {}
    for order in (1, 2, 3):
        with rep.timed() as slot:
            got = len(enumerate_ai_semirings(order, workers=workers))
            want = oracle_count(order)
            counts[order] = got
            slot["params"] = {"order": order, "count": got, "oracle": want}
            slot["verdict"] = "pass" if got == want else "fail"
            slot["witness"] = None if got == want else f"backtracker {got}, oracle {want}"
    with rep.timed() as slot:
        recs4, how = load_or_enumerate(4, census_path, force, workers)
        slot["params"] = {"order": 4, "count": len(recs4), "source": how}
        slot["verdict"] = "pass" if len(recs4) == expected[4] else "fail"
        slot["witness"] = None if len(recs4) == expected[4] else f"expected {expected[4]}"
    chains = sum(r.additive_class == "chain" for r in recs4)
    rep.add({"order": 4, "additive": "chain", "count": chains},
            "pass" if chains == 386 else "fail", None if chains == 386 else "expected 386")
    rep.add({"order": 3, "count": counts[3]}, "pass" if counts[3] == expected[3] else "fail",
            None if counts[3] == expected[3] else "expected 61")
    recs3 = enumerate_ai_semirings(3)
    for name in ("S7", "S53", "S43"):
        loc = locate(catalog(name), recs3)
        rep.add({"locate": name}, "pass", None, note=loc.record.semiring.name)
    a = locate(adjoin_zero(catalog("S53")), recs4).record
    c = locate(catalog("S4_634"), recs4).record
    rep.add({"locate": "S53^0 and S4_634"}, "pass" if a.key == c.key else "fail",
            None if a.key == c.key else f"{a.semiring.name} vs {c.semiring.name}")
    r545 = locate(catalog("S4_545"), recs4).record
    rep.add({"locate": "S4_545", "additive": r545.additive_class},
            "pass" if r545.additive_class == "chain" else "fail",
            None if r545.additive_class == "chain" else r545.additive_class)
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "lemma41": suite_lemma41,
    "prop32": suite_prop32,
    "prop41": suite_prop41,
    "prop52": suite_prop52,
    "lemma21_chain": suite_lemma21_chain,
    "basis545": suite_basis545,
    "basis634": suite_basis634,
    "corollary37": suite_corollary37,
    "census": suite_census,
    "distinctness": suite_distinctness,
    "catalog": suite_catalog,
    "oracles": suite_oracles,
}


def run_suite(name: str, bounds: Bounds | None = None, **kwargs) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name](bounds or Bounds(), **kwargs)
