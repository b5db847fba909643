"""Write an SVG for every catalogue point of each n into an output directory."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from polymorse.reports import star_svg
from polymorse.solver import catalogue


@dataclass
class Config:
    n_values: tuple[int, ...] = (5, 6, 7, 8)
    out: Path = Path("figures")


def run(cfg: Config) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    for n in cfg.n_values:
        for s in catalogue(n):
            name = f"F{n}" if s.is_fold else f"S{n}_{'m' if s.w < 0 else ''}{abs(s.w)}"
            path = cfg.out / f"{name}.svg"
            path.write_text(star_svg(s, s.build()), encoding="utf-8")
            print(path)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[5, 6, 7, 8])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    a = ap.parse_args()
    run(Config(tuple(a.n), a.out))
