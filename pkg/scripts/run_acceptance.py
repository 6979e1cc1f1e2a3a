"""Run the acceptance criteria and print one PASS/FAIL line each."""

import argparse
import sys
from dataclasses import dataclass

from turanlab.verify import run_suite


@dataclass
class SuiteConfig:
    extended: bool = False
    only: set[int] | None = None


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--extended", action="store_true", help="also run the exhaustive n=8 colouring certificate")
    ap.add_argument("--only", help="comma-separated criterion numbers")
    ns = ap.parse_args()
    cfg = SuiteConfig(ns.extended, {int(x) for x in ns.only.split(",")} if ns.only else None)
    results = run_suite(cfg.extended, cfg.only)
    for crit in results:
        print(crit.line(), flush=True)
    failed = [c.number for c in results if not c.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
