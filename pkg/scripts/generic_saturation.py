"""How saturated are generic structures?

Builds generic structures for several sizes and seeds and reports, per
level, the share of (base, class type) pairs realized inside the structure.
Only the scheduled types are guaranteed; the rest shows how far round-robin
scheduling gets within the size budget.
"""

from __future__ import annotations

import argparse
import statistics
from dataclasses import dataclass, field
from itertools import combinations

from rectangular.fileformat import parse_class
from rectangular.forcing import TypeRealization, generic_run, one_point_types, realizes
from rectangular.structures import induced


@dataclass
class SaturationConfig:
    kind: str = "graph"
    K: str | None = None
    sizes: list = field(default_factory=lambda: [8, 16, 32])
    depth: int = 2
    seeds: int = 5


def realized_share(s, level: int) -> float:
    hit = total = 0
    for e in combinations(s.points, level):
        for t in one_point_types(induced(s, e)):
            total += 1
            hit += any(realizes(s, d, t) for d in s.points)
    return hit / total if total else 1.0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--class", dest="kind", default="graph")
    ap.add_argument("--K")
    ap.add_argument("--sizes", default="8,16,32")
    ap.add_argument("--depth", type=int, default=2)
    ap.add_argument("--seeds", type=int, default=5)
    a = ap.parse_args()
    cfg = SaturationConfig(a.kind, a.K, [int(n) for n in a.sizes.split(",")], a.depth, a.seeds)
    cls = parse_class([cfg.kind] + ([f"K={cfg.K}"] if cfg.K else []))
    print(f"class {cls}, depth {cfg.depth}, {cfg.seeds} seeds")
    print(f"{'n':>4} {'scheduled':>10} " + " ".join(f"{'level ' + str(k):>9}" for k in range(cfg.depth + 1)))
    for n in cfg.sizes:
        shares = {k: [] for k in range(cfg.depth + 1)}
        scheduled = []
        for seed in range(cfg.seeds):
            run = generic_run(cls, n, cfg.depth, seed)
            scheduled.append(sum(isinstance(s, TypeRealization) for s in run.scheduled))
            for k in shares:
                shares[k].append(realized_share(run.structure, k))
        cols = " ".join(f"{statistics.mean(v):9.3f}" for v in shares.values())
        print(f"{n:>4} {statistics.mean(scheduled):>10.1f} {cols}")


if __name__ == "__main__":
    main()
