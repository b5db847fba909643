"""Search for critical points of A / (sum a_i^p)^(2/p) and list everything that is not a star."""
import argparse
from dataclasses import dataclass

import numpy as np

from polymorse import SolverConfig
from polymorse.extensions import ConstraintSpec, lagrange_residual, probe_power_sum
from polymorse.projective import edgeword_to_polygon


@dataclass
class Config:
    n_values: tuple[int, ...] = (5, 6)
    powers: tuple[float, ...] = (0.5, 0.8, 2.0, 3.0)
    seeds: int = 200


def run(cfg: Config) -> None:
    for n in cfg.n_values:
        for p in cfg.powers:
            res = probe_power_sum(n, p, SolverConfig(seeds_per_n=cfg.seeds))
            extra = [r for r in res if r.classification is None]
            print(f"n={n} p={p:g}: {len(res)} classes, {len(extra)} outside the star catalogue")
            for r in extra:
                poly = edgeword_to_polygon(r.location)
                check = lagrange_residual(poly, "area", ConstraintSpec.through(poly, "power_sum", p))
                sides = np.round(np.sort(poly.edge_lengths()), 4)
                print(f"    value={r.normalized_area:.6f} index={r.morse_index} residual={check:.1e} sides={sides}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[5, 6])
    ap.add_argument("--p", type=float, nargs="+", default=[0.5, 0.8, 2.0, 3.0])
    ap.add_argument("--seeds", type=int, default=200)
    a = ap.parse_args()
    run(Config(tuple(a.n), tuple(a.p), a.seeds))
