"""Enumerate ai-semirings of orders 1..N, store each census as JSON lines, print counts."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from aisemiring.census import additive_class, enumerate_semilattices, load_or_enumerate


@dataclass
class Config:
    max_order: int = 4
    out_dir: Path = Path("results/census")
    workers: int = 1
    force: bool = False


def main(cfg: Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for order in range(1, cfg.max_order + 1):
        t0 = time.perf_counter()
        records, how = load_or_enumerate(order, cfg.out_dir / f"order{order}.jsonl",
                                         cfg.force, cfg.workers)
        by_class: dict[str, int] = {}
        for r in records:
            by_class[r.additive_class] = by_class.get(r.additive_class, 0) + 1
        print(f"order {order}: {len(records)} classes ({how}, {time.perf_counter() - t0:.2f}s), "
              f"{len(enumerate_semilattices(order))} additive types")
        for tag, count in sorted(by_class.items()):
            print(f"    {tag:24s} {count}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=Config.max_order)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    ap.add_argument("--workers", type=int, default=Config.workers)
    ap.add_argument("--force", action="store_true")
    main(Config(**vars(ap.parse_args())))
