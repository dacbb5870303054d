#!/usr/bin/env python3
"""Hunt for minimal definitive sets larger than the constructed family.

The constructed sets have size 2n-8. Whether a minimal definitive set on
n leaves can be larger is open; this script runs seeded random searches
at increasing target sizes and reports the best size seen per n.

Example:
    python3 scripts/explore_search.py --n 6 7 --budget 2000 --seeds 5
"""

import argparse
import sys

from quartets import run_search


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[6, 7])
    parser.add_argument("--budget", type=int, default=2000, help="trials per seed")
    parser.add_argument("--seeds", type=int, default=3, help="seeds 1..k per n")
    parser.add_argument(
        "--beyond",
        type=int,
        default=2,
        help="how far past 2n-8 to aim the target size",
    )
    args = parser.parse_args(argv)

    for n in args.n:
        family = 2 * n - 8 if n > 5 else 2
        target = family + args.beyond
        best = None
        for seed in range(1, args.seeds + 1):
            for f in run_search(n, target_size=1, budget=args.budget, seed=seed):
                if best is None or f.size > best.size:
                    best = f
        if best is None:
            print(f"n={n}: nothing found (budget too small?)")
            continue
        marker = ""
        if best.size > family:
            marker = "  <-- larger than the constructed family"
        print(f"n={n}: constructed size {family}, best found {best.size}{marker}")
        for text in best.quartets.texts():
            print(f"    {text}")
        if best.size < target:
            print(f"    (target {target} not reached in {args.seeds * args.budget} trials)")

    return 0


if __name__ == "__main__":
    sys.exit(main())
