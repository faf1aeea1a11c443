"""Δ-system extraction on random families of k-sets, as family size varies.

For each family size the script reports how often a Δ-system with r members
was found, the mean number of members, and the mean root size.
"""

from __future__ import annotations

import argparse
import random
import statistics
from dataclasses import dataclass
from itertools import combinations

from rectangular.delta import extract_delta_system


@dataclass
class DeltaConfig:
    k: int = 3
    r: int = 4
    universe: int = 30
    trials: int = 50
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(DeltaConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    ap.add_argument("--sizes", default="5,10,20,40,80,163")
    a = ap.parse_args()
    cfg = DeltaConfig(a.k, a.r, a.universe, a.trials, a.seed)
    rng = random.Random(cfg.seed)
    pool = list(combinations(range(cfg.universe), cfg.k))
    print(f"k={cfg.k} r={cfg.r} universe={cfg.universe} trials={cfg.trials}")
    print(f"{'sets':>6} {'found':>7} {'members':>8} {'root':>6}")
    for size in (int(s) for s in a.sizes.split(",")):
        found, members, roots = 0, [], []
        for _ in range(cfg.trials):
            sets = [frozenset(s) for s in rng.sample(pool, size)]
            ds = extract_delta_system(sets, cfg.r)
            if ds is not None:
                assert ds.verify(sets)
                found += 1
                members.append(len(ds.member_indices))
                roots.append(len(ds.root))
        mean = lambda v: statistics.mean(v) if v else float("nan")
        print(f"{size:>6} {found / cfg.trials:>7.2f} {mean(members):>8.2f} {mean(roots):>6.2f}")


if __name__ == "__main__":
    main()
