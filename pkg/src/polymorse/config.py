"""Central tolerance block and solver configuration."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Tolerances:
    """Every numerical threshold used by the checks lives here."""

    gradient: float = 1e-9
    jet: float = 1e-5
    eigen_zero: float = 1e-6  # relative to max |eigenvalue|
    collision: float = 1e-10  # relative to ||u||
    residual: float = 1e-8  # equilateral / cyclic classification
    winding_snap: float = 1e-6
    lagrange: float = 1e-9
    congruence: float = 1e-9  # times perimeter
    recharting_share: float = 0.5  # times 1/(n-1), see projective.needs_rechart


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class SolverConfig:
    seeds_per_n: int = 500
    newton_tol: float = 1e-9
    max_iterations: int = 100
    dedup_distance: float = 1e-3
    rng_seed: int = 0
    catalogue_seeds: int = 2  # perturbed copies of each catalogue point
    catalogue_noise: float = 1e-2
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self) -> None:
        if self.seeds_per_n < 0 or self.max_iterations <= 0:
            raise ValueError("seed and iteration counts must be positive")
        if not (0 < self.newton_tol):
            raise ValueError("newton_tol must be positive")
        if not (0 < self.dedup_distance < 0.05):
            raise ValueError("dedup_distance must lie in (0, 0.05)")
