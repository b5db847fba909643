"""Gradient-flow basins: where do ascent (or descent) flows from random starts end up?"""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from polymorse import SolverConfig
from polymorse.solver import gradient_flow, seeds_for
from polymorse.verify import isoperimetric_bound


@dataclass
class Config:
    n_values: tuple[int, ...] = (4, 5, 6, 7, 8)
    flows: int = 200
    direction: str = "ascend"
    rng_seed: int = 0


def run(cfg: Config) -> None:
    for n in cfg.n_values:
        solver = SolverConfig(seeds_per_n=cfg.flows, catalogue_seeds=0, rng_seed=cfg.rng_seed)
        t0 = time.perf_counter()
        results = [gradient_flow(s, cfg.direction, solver) for s in seeds_for(n, solver)]
        ends = Counter(r.report.label if r.report else r.status for r in results)
        pick = max if cfg.direction == "ascend" else min
        best = pick(r.values[-1] for r in results)
        target = isoperimetric_bound(n) * (1 if cfg.direction == "ascend" else -1)
        print(
            f"n={n}: {dict(sorted(ends.items()))}  extreme={best:.15f}  regular={target:.15f}  "
            f"monotone={all(r.monotone for r in results)}  {time.perf_counter() - t0:.1f}s"
        )


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5, 6, 7, 8])
    ap.add_argument("--flows", type=int, default=200)
    ap.add_argument("--descend", action="store_true")
    ap.add_argument("--rng", type=int, default=0)
    a = ap.parse_args()
    run(Config(tuple(a.n), a.flows, "descend" if a.descend else "ascend", a.rng))
