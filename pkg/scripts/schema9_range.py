"""Check the two-kinds-of-slot inequality schema in S4_634 for every split point k.

For 1 <= k <= n-1 all instances hold. At k = n the pair part is empty, so
instances whose slot words avoid x_{n+1} fail.
"""

from __future__ import annotations

import argparse
import itertools
from dataclasses import dataclass

from aisemiring.catalog import catalog
from aisemiring.checker import find_countermodel
from aisemiring.families import _linear_words, _times, make_q, x
from aisemiring.terms import Statement, Term, Word


@dataclass
class Config:
    n_max: int = 3


def instances(n: int, k: int):
    xs = [x(i) for i in range(1, n + 2)]
    slots = []
    for i in range(k):
        others = [v for t, v in enumerate(xs) if t != i]
        slots.append([_times(Word.of(xs[i], xs[i]), w) for w in _linear_words(others)])
    for i, j in itertools.combinations(range(k, n + 1), 2):
        others = [v for t, v in enumerate(xs) if t not in (i, j)]
        slots.append([_times(Word.of(xs[i], xs[j]), w) for w in _linear_words(others)])
    for combo in itertools.product(*slots):
        yield Statement.inequality(make_q(n), Term(combo))


def main(cfg: Config) -> None:
    S = catalog("S4_634")
    for n in range(2, cfg.n_max + 1):
        for k in range(0, n + 1):
            total = bad = 0
            example = None
            for st in instances(n, k):
                total += 1
                cm = find_countermodel(S, st)
                if cm is not None:
                    bad += 1
                    example = example or (st, cm)
            line = f"n={n} k={k}: {total} instances, {bad} fail in S4_634"
            if example:
                st, cm = example
                line += f"; e.g. {st} at " + ", ".join(f"{v}={S.elements[a]}" for v, a in cm.items())
            print(line)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    main(Config(**vars(ap.parse_args())))
