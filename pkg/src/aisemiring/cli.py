"""Command-line entry point. Exit codes: 0 holds/agrees/free, 1 fails (witness printed), 2 usage or cap error."""

from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
from pathlib import Path

from . import census as census_mod
from .algebra import AxiomError, FiniteAiSemiring, TableShapeError, adjoin_zero, load_semiring
from .catalog import NAMES, catalog
from .checker import (ORACLES, CapExceeded, crossvalidate, find_countermodel, oracle_adjoin_zero,
                      random_statement, statement_space)
from .derivation import Caps, check_trace, derive, dump_traces, load_traces
from .families import (basis_545, basis_634, basis_vm, enumerate_theta, make_q, make_sigma,
                       make_u)
from .freeness import DEFAULT_BUDGET, SearchBudgetExceeded, find_embedding
from .suites import SUITES, Bounds, run_suite
from .terms import TermSyntaxError, parse_statement, parse_term


class UsageError(Exception):
    pass


def _algebra(spec: str) -> FiniteAiSemiring:
    if spec in NAMES:
        return catalog(spec)
    if Path(spec).exists():
        return load_semiring(spec)
    raise UsageError(f"unknown algebra {spec!r}: not a catalog name ({', '.join(NAMES)}) or a file")


def _oracle(which: str):
    """(decision function, algebra it decides) for --which."""
    if which in ORACLES:
        fn, name = ORACLES[which]
        return fn, catalog(name)
    if which.startswith("zero:"):
        base = _algebra(which[5:])
        return (lambda st: oracle_adjoin_zero(base, st)), adjoin_zero(base)
    raise UsageError(f"unknown oracle {which!r}; use d2, s53, s7 or zero:<algebra>")


def _decide(fn, st) -> bool:
    return all(fn(part) for part in st.split())


def _emit(args, payload: dict) -> None:
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, ensure_ascii=False, default=str)


# ---------------------------------------------------------------- commands

def cmd_check(args) -> int:
    S = _algebra(args.semiring)
    st = parse_statement(args.statement)
    cm = find_countermodel(S, st, args.cap)
    if cm is None:
        print(f"holds in {S.name or args.semiring}: {st}")
    else:
        shown = ", ".join(f"{v} = {S.elements[a]}" for v, a in cm.items())
        print(f"fails in {S.name or args.semiring}: {st}\ncountermodel: {shown}")
    _emit(args, {"statement": str(st), "algebra": S.name, "holds": cm is None,
                 "countermodel": cm and {v: S.elements[a] for v, a in cm.items()}})
    return 0 if cm is None else 1


def cmd_oracle(args) -> int:
    fn, S = _oracle(args.which)
    st = parse_statement(args.statement)
    verdict = _decide(fn, st)
    print(f"{args.which}: {'holds' if verdict else 'fails'}: {st}")
    _emit(args, {"oracle": args.which, "statement": str(st), "holds": verdict})
    return 0 if verdict else 1


def cmd_crossvalidate(args) -> int:
    fn, S = _oracle(args.which)
    stmts = list(statement_space(args.max_vars, args.max_len, args.max_words))
    rng = random.Random(args.seed)
    stmts += [random_statement(rng, max(args.max_vars, 4), args.max_len, args.max_words)
              for _ in range(args.samples)]
    rep = crossvalidate(fn, S, stmts, args.which)
    print(rep.summary())
    for text, got, want in rep.disagreements:
        print(f"  {text}: oracle {got}, brute force {want}")
    _emit(args, dataclasses.asdict(rep))
    return 0 if rep.ok else 1


def cmd_free(args) -> int:
    target, pattern = parse_term(args.target), parse_term(args.pattern)
    if args.strict_paper:
        # word contexts are already complete: any term context yields a word context
        print("note: --strict-paper gives the same answers; word contexts suffice in general")
    try:
        emb = find_embedding(pattern, target, args.budget)
    except SearchBudgetExceeded as exc:
        print(f"inconclusive: {exc}")
        _emit(args, {"verdict": "inconclusive", "budget": args.budget})
        return 2
    if emb is None:
        print(f"free: {target} is ({pattern})-free")
    else:
        print(f"embedded: {emb}")
    _emit(args, {"target": str(target), "pattern": str(pattern),
                 "verdict": "free" if emb is None else "embedded",
                 "witness": None if emb is None else str(emb)})
    return 0 if emb is None else 1


def _bounds(pairs: list[str], args) -> Bounds:
    b = Bounds(seed=args.seed, budget=args.budget)
    fields = {f.name: f for f in dataclasses.fields(Bounds)}
    for item in pairs:
        key, _, value = item.partition("=")
        if key not in fields or not value:
            raise UsageError(f"bad --bound {item!r}; known keys: {', '.join(fields)}")
        if isinstance(getattr(b, key), tuple):
            setattr(b, key, tuple(int(v) for v in value.split(",")))
        else:
            setattr(b, key, int(value))
    return b


def cmd_verify(args) -> int:
    b = _bounds(args.bound, args)
    extra = {}
    if args.suite == "census":
        extra = {"census_path": args.census_file, "force": args.force, "workers": args.threads}
    rep = run_suite(args.suite, b, **extra)
    print(rep.render(limit=args.show))
    _emit(args, rep.to_json())
    return 0 if rep.ok else 1


def _basis(spec: str, rules: list[str]):
    stmts = [parse_statement(r) for r in rules]
    if spec is None:
        return stmts
    builtin = {"basis545": lambda: list(basis_545(2).statements()),
               "basis634": lambda: list(basis_634(2).statements())}
    if spec in builtin:
        return builtin[spec]() + stmts
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"basis {spec!r} is neither builtin ({', '.join(builtin)}) nor a file")
    lines = [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines()]
    return [parse_statement(ln) for ln in lines if ln and not ln.startswith("#")] + stmts


def cmd_derive(args) -> int:
    basis = _basis(args.basis, args.rule)
    if not basis:
        raise UsageError("give --basis or at least one --rule")
    caps = Caps(max_image_size=args.max_image_size, max_word_len=args.max_word_len,
                term_multipliers=args.term_multipliers)
    d = derive(parse_statement(args.goal), basis, args.depth, caps)
    for part in d.parts:
        if part.found:
            print(part.trace.render())
            ok, bad = check_trace(part.trace, basis)
            print(f"  check_trace: {'valid' if ok else f'INVALID at step {bad}'}")
        else:
            print(part.bound_report())
    if args.export and d.found:
        dump_traces(d, args.export)
    _emit(args, {"goal": str(d.goal), "found": d.found,
                 "traces": [t.to_json() for t in d.traces],
                 "unfound": [p.bound_report() for p in d.parts if not p.found]})
    return 0 if d.found else 1


def cmd_check_trace(args) -> int:
    traces = load_traces(args.file)
    basis = _basis(args.basis, args.rule) if (args.basis or args.rule) else None
    status = 0
    for tr in traces:
        ok, bad = check_trace(tr, basis)
        print(f"{tr.goal}: {'valid' if ok else f'invalid at step {bad}'}")
        status = status or (0 if ok else 1)
    return status


def cmd_enumerate(args) -> int:
    if args.out:
        records, how = census_mod.load_or_enumerate(args.order, args.out, args.force, args.threads)
        if args.additive:
            records = [r for r in records if r.additive_class == args.additive]
    else:
        records = census_mod.enumerate_ai_semirings(args.order, args.additive, args.threads)
        how = "computed"
    label = f" with additive class {args.additive}" if args.additive else ""
    print(f"order {args.order}{label}: {len(records)} isomorphism classes ({how})")
    _emit(args, {"order": args.order, "additive": args.additive, "count": len(records),
                 "records": [r.to_json() for r in records]})
    return 0


def cmd_catalog(args) -> int:
    if args.show:
        print(_algebra(args.show))
        return 0
    for name in NAMES:
        print(f"{name:8s} order {catalog(name).order}")
    _emit(args, {name: catalog(name).to_json() for name in NAMES})
    return 0


def cmd_family(args) -> int:
    p = args.params
    builders = {
        "u": (2, lambda: [make_u(*p)]),
        "q": (1, lambda: [make_q(*p)]),
        "sigma": (2, lambda: [make_sigma(*p)]),
        "theta": (1, lambda: enumerate_theta(*p)),
        "basis545": (1, lambda: list(basis_545(*p).statements())),
        "basis634": (1, lambda: list(basis_634(*p).statements())),
        "basisVM": (None, lambda: list(basis_vm(p).statements())),
    }
    arity, build = builders[args.name]
    if arity is not None and len(p) != arity:
        raise UsageError(f"family {args.name} takes {arity} integer parameter(s)")
    items = build()
    for item in items:
        print(item)
    _emit(args, {"family": args.name, "params": p, "items": [str(i) for i in items]})
    return 0


# ---------------------------------------------------------------- parser

_SUB = "sub_"
_GLOBAL_INTS = ("threads", "seed", "budget")


def build_parser() -> argparse.ArgumentParser:
    def globals_parser(prefix: str) -> argparse.ArgumentParser:
        # subcommands store under a prefixed name so they never clobber the top-level value
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--json", dest=prefix + "json", metavar="PATH", default=argparse.SUPPRESS,
                       help="write a machine-readable report")
        for flag in _GLOBAL_INTS:
            g.add_argument(f"--{flag}", dest=prefix + flag, type=int, default=argparse.SUPPRESS)
        return g

    common = globals_parser(_SUB)
    parser = argparse.ArgumentParser(prog="aisemiring", parents=[globals_parser("")],
                                     description="Finite ai-semiring workbench")
    parser.set_defaults(json=None, threads=1, seed=0, budget=DEFAULT_BUDGET)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "brute-force a statement in a finite algebra")
    p.add_argument("--semiring", required=True, help="catalog name or JSON file")
    p.add_argument("--statement", required=True)
    p.add_argument("--cap", type=int, default=12, help="maximum number of variables")

    p = add("oracle", cmd_oracle, "decide a statement syntactically")
    p.add_argument("--which", required=True, help="d2, s53, s7 or zero:<algebra>")
    p.add_argument("--statement", required=True)

    p = add("crossvalidate", cmd_crossvalidate, "compare an oracle with brute force")
    p.add_argument("--which", required=True)
    p.add_argument("--max-vars", type=int, default=3)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--max-words", type=int, default=3)
    p.add_argument("--samples", type=int, default=0, help="extra seeded random statements")

    p = add("free", cmd_free, "decide whether target is pattern-free")
    p.add_argument("--target", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--strict-paper", action="store_true",
                   help="restrict contexts to words (same answers)")

    p = add("verify", cmd_verify, "run a named verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--bound", action="append", default=[], metavar="KEY=VALUE",
                   help="override a bound, e.g. prop32_m=4,5 or lemma41_n_max=4")
    p.add_argument("--census-file", default=None, help="JSON-lines cache for the order-4 census")
    p.add_argument("--force", action="store_true", help="recompute a cached census")
    p.add_argument("--show", type=int, default=20, help="failing cases to print")

    for name, func, text in (("derive", cmd_derive, "bounded search for a derivation"),
                             ("check-trace", cmd_check_trace, "revalidate exported traces")):
        p = add(name, func, text)
        p.add_argument("--basis", default=None, help="basis545, basis634 or a file of statements")
        p.add_argument("--rule", action="append", default=[], help="extra basis statement")
        if name == "check-trace":
            p.add_argument("file")
    p = sub.choices["derive"]
    p.add_argument("--goal", required=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--max-image-size", type=int, default=3)
    p.add_argument("--max-word-len", type=int, default=4)
    p.add_argument("--term-multipliers", action="store_true")
    p.add_argument("--export", metavar="PATH", help="write traces as JSON")

    p = add("enumerate", cmd_enumerate, "isomorphism classes of a given order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--additive", default=None, help="additive class tag, e.g. chain")
    p.add_argument("--out", default=None, help="JSON-lines file; verified if present")
    p.add_argument("--force", action="store_true")

    p = add("catalog", cmd_catalog, "list or show the named algebras")
    p.add_argument("--list", action="store_true")
    p.add_argument("--show", metavar="NAME")

    p = add("family", cmd_family, "print a named term family or basis truncation")
    p.add_argument("name", choices=["u", "q", "sigma", "theta", "basis545", "basis634", "basisVM"])
    p.add_argument("params", nargs="*", type=int)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for flag in ("json",) + _GLOBAL_INTS:
        if hasattr(args, _SUB + flag):
            setattr(args, flag, getattr(args, _SUB + flag))
    try:
        return args.func(args)
    except (UsageError, TermSyntaxError, CapExceeded, TableShapeError, AxiomError,
            KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
