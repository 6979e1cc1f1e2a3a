"""How often does the symmetrization pipeline end at a monochromatic Turan graph?

Runs the full pipeline from random coloured K_m-free hosts and tallies the final
shapes. Nothing here is asserted; the output is a frequency table.
"""

import argparse
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass

from turanlab.graph import multipartite_parts
from turanlab.patterns import Clique
from turanlab.symmetrization import SymmetrizationState, is_monochromatic_turan, random_colored_host, run_pipeline


@dataclass
class StudyConfig:
    samples: int = 500
    max_order: int = 8
    m: int = 4
    cliques: tuple[int, ...] = (3, 2)
    density: float = 0.6
    seed: int = 0


def classify(state: SymmetrizationState) -> str:
    if is_monochromatic_turan(state):
        return "monochromatic Turan"
    parts = multipartite_parts(state.coloring.base)
    colours = len(set(state.coloring.colors))
    if parts is None:
        return "not multipartite"
    sizes = sorted(len(p) for p in parts)
    if colours <= 1:
        return "monochromatic unbalanced"
    return f"{colours}-coloured, parts {sizes}"


def run(cfg: StudyConfig) -> dict:
    rng = random.Random(cfg.seed)
    patterns = tuple(Clique(r) for r in cfg.cliques)
    shapes: Counter[str] = Counter()
    unsettled = 0
    gain = 0
    for _ in range(cfg.samples):
        n = rng.randint(2, cfg.max_order)
        start = SymmetrizationState(random_colored_host(n, cfg.m, len(patterns), rng, cfg.density), patterns, cfg.m)
        end, _, settled = run_pipeline(start)
        unsettled += not settled
        gain += end.objective - start.objective
        shapes[classify(end)] += 1
    return {"config": asdict(cfg), "unsettled": unsettled, "mean_gain": gain / cfg.samples, "shapes": dict(shapes.most_common())}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=StudyConfig.samples)
    ap.add_argument("--max-order", type=int, default=StudyConfig.max_order)
    ap.add_argument("--m", type=int, default=StudyConfig.m)
    ap.add_argument("--seed", type=int, default=StudyConfig.seed)
    ns = ap.parse_args()
    cfg = StudyConfig(samples=ns.samples, max_order=ns.max_order, m=ns.m, seed=ns.seed)
    print(json.dumps(run(cfg), indent=2))


if __name__ == "__main__":
    main()
