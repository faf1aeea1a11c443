"""Bounded AP/SP/SAP/RSP checks for every built-in class, printed as a table."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rectangular.classes import ClassSpec
from rectangular.properties import PROPERTIES, check_property


@dataclass
class SurveyConfig:
    bound: int = 3
    metric_K: tuple = (1, 2, 3)


def classes(cfg: SurveyConfig):
    return [ClassSpec.graph(), ClassSpec.digraph(), ClassSpec.tournament(), ClassSpec.linear_order(),
            ClassSpec.partial_order(), ClassSpec.metric(cfg.metric_K), ClassSpec.matching()]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=SurveyConfig.bound)
    ap.add_argument("--K", default="1,2,3", help="metric distance set")
    args = ap.parse_args()
    cfg = SurveyConfig(args.bound, tuple(args.K.split(",")))
    print(f"{'class':<22}" + "".join(f"{p:>20}" for p in PROPERTIES))
    for cls in classes(cfg):
        cells = []
        for prop in PROPERTIES:
            t0 = time.perf_counter()
            rep = check_property(cls, prop, cfg.bound)
            mark = "holds" if rep.holds else "FAILS"
            cells.append(f"{mark} {rep.diagrams_checked:>5} {time.perf_counter() - t0:5.2f}s")
        print(f"{str(cls):<22}" + "".join(f"{c:>20}" for c in cells))


if __name__ == "__main__":
    main()
