"""Cross-validate the syntactic oracles against brute force on growing statement spaces."""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from aisemiring.algebra import adjoin_zero
from aisemiring.catalog import catalog
from aisemiring.checker import ORACLES, crossvalidate, oracle_adjoin_zero, random_statement, statement_space


@dataclass
class Config:
    max_vars: int = 3
    max_len: int = 3
    max_words: int = 3
    samples: int = 10_000
    seed: int = 0


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    space = list(statement_space(cfg.max_vars, cfg.max_len, cfg.max_words))
    sample = [random_statement(rng, max_vars=4) for _ in range(cfg.samples)]
    s53 = catalog("S53")
    runs = [(label, fn, catalog(alg)) for label, (fn, alg) in ORACLES.items()]
    runs.append(("zero:S53", lambda st: oracle_adjoin_zero(s53, st), adjoin_zero(s53)))
    for label, fn, S in runs:
        for name, stmts in (("exhaustive", space), ("random", sample)):
            t0 = time.perf_counter()
            rep = crossvalidate(fn, S, stmts, label)
            print(f"{name:10s} {rep.summary()} [{time.perf_counter() - t0:.1f}s]")
            for d in rep.disagreements[:5]:
                print("    ", d)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f in ("max_vars", "max_len", "max_words", "samples", "seed"):
        ap.add_argument("--" + f.replace("_", "-"), type=int, default=getattr(Config, f))
    main(Config(**vars(ap.parse_args())))
