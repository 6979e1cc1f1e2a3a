"""Optimal complete bipartite split for (K_{3,3}, K_{1,5}) as n grows.

For each n prints the best split for each pattern alone and for the pair, and
flags the orders where the pair's optimum lies strictly between the two.
"""

import argparse
from dataclasses import dataclass

from turanlab.patterns import CompleteBipartite
from turanlab.search import bipartite_scan


@dataclass
class SweepConfig:
    first: int = 6
    last: int = 40


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--first", type=int, default=SweepConfig.first)
    ap.add_argument("--last", type=int, default=SweepConfig.last)
    ns = ap.parse_args()
    cfg = SweepConfig(ns.first, ns.last)
    a, b = CompleteBipartite(3, 3), CompleteBipartite(1, 5)
    print(f"{'n':>3} {'K33':>4} {'K15':>4} {'pair':>4}  between")
    for n in range(cfg.first, cfg.last + 1):
        xa = bipartite_scan(n, (a,)).best_x
        xb = bipartite_scan(n, (b,)).best_x
        xp = bipartite_scan(n, (a, b)).best_x
        between = min(xa, xb) < xp < max(xa, xb)
        print(f"{n:>3} {xa:>4} {xb:>4} {xp:>4}  {'yes' if between else 'no'}")


if __name__ == "__main__":
    main()
