"""Print the Morse index table (predicted, variant formula, computed) for a range of n."""
import argparse
from dataclasses import dataclass

from polymorse.solver import verify_index_table


@dataclass
class Config:
    n_min: int = 4
    n_max: int = 12


def run(cfg: Config) -> bool:
    ok = True
    print(f"{'n':>3} {'point':>9} {'pred':>5} {'var':>5} {'got':>5} {'min|lam|/max|lam|':>18}")
    for n in range(cfg.n_min, cfg.n_max + 1):
        table = verify_index_table(n)
        for r in table.rows:
            got = "deg" if r.computed is None else r.computed
            print(f"{n:>3} {r.spec.label():>9} {r.predicted:>5} {r.printed:>5} {got:>5} {r.min_eigen_ratio:>18.3e}")
        ok &= table.ok
    print("all indices match" if ok else "MISMATCH")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=12)
    a = ap.parse_args()
    raise SystemExit(0 if run(Config(a.n_min, a.n_max)) else 1)
