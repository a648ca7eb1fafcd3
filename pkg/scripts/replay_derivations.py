"""Search for the three reference derivations and print the validated traces."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from aisemiring.derivation import Caps, check_trace, derive
from aisemiring.families import delta_star, make_delta, make_sigma
from aisemiring.terms import parse_statement


@dataclass
class Config:
    depth: int = 4
    max_image_size: int = 3


def main(cfg: Config) -> None:
    caps = Caps(max_image_size=cfg.max_image_size)
    jobs = [(make_sigma(n, n), [make_delta(n, delta_star(n))]) for n in (2, 3, 4)]
    jobs += [(parse_statement("x <= x^3"), [parse_statement("x^3 = x^2"), parse_statement("x <= x^2")]),
             (parse_statement("x*y <= x^2 + y^2"),
              [parse_statement("x*y <= x^2 + y"), parse_statement("x <= x^2")])]
    for goal, basis in jobs:
        d = derive(goal, basis, cfg.depth, caps)
        for part in d.parts:
            if part.trace is None:
                print(part.bound_report())
                continue
            print(part.trace.render())
            ok, _ = check_trace(part.trace, basis)
            print(f"  revalidated: {ok}; explored {part.explored} terms\n")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=Config.depth)
    ap.add_argument("--max-image-size", type=int, default=Config.max_image_size)
    main(Config(**vars(ap.parse_args())))
