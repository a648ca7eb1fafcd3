"""Run the freeness grids and list every embedded cell with its degeneracy note."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from aisemiring.suites import Bounds, run_suite

GRIDS = ("prop32", "prop41", "prop52", "distinctness", "lemma21_chain")


@dataclass
class Config:
    out_dir: Path = Path("results/freeness")
    budget: int = Bounds.budget


def main(cfg: Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for name in GRIDS:
        rep = run_suite(name, Bounds(budget=cfg.budget))
        rep.dump(str(cfg.out_dir / f"{name}.json"))
        print(rep.summary())
        for case in rep.failures:
            print(f"    {case.params}")
            print(f"        witness: {case.witness}")
            print(f"        note:    {case.note or 'none'}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    ap.add_argument("--budget", type=int, default=Config.budget)
    main(Config(**vars(ap.parse_args())))
