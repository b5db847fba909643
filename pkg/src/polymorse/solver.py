"""Locating and classifying the critical points of A/P^2 on CP^{n-2}."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .config import SolverConfig, Tolerances
from .errors import CenterOnBoundary, NonSmoothPoint
from .functional import (
    chart_gradient_batch,
    chart_value,
    hessian,
    morse_index,
    normalized_u,
)
from .polygon import StarSpec, winding_number
from .projective import (
    ChartPoint,
    EdgeWord,
    chart_at,
    coords_to_u,
    edgeword_to_polygon,
    fubini_study_distance,
    is_nonsmooth,
    needs_rechart,
    normalize,
    polygon_to_edgeword,
)


@dataclass
class CriticalReport:
    location: EdgeWord
    normalized_area: float
    grad_norm: float
    eigenvalues: list[float]
    morse_index: int | None  # None = possibly degenerate
    classification: StarSpec | None
    winding: int | None
    equilateral_residual: float
    cyclic_residual: float
    min_eigen_ratio: float  # min|lam| / max|lam|, the degeneracy gap

    @property
    def label(self) -> str:
        return self.classification.label() if self.classification else "unidentified"

    def to_dict(self) -> dict:
        u = self.location.u
        return {
            "classification": self.label,
            "n": self.location.n,
            "normalized_area": self.normalized_area,
            "grad_norm": self.grad_norm,
            "morse_index": self.morse_index if self.morse_index is not None else "degenerate",
            "winding": self.winding,
            "eigenvalues": list(self.eigenvalues),
            "min_eigen_ratio": self.min_eigen_ratio,
            "equilateral_residual": self.equilateral_residual,
            "cyclic_residual": self.cyclic_residual,
            "location": [[float(z.real), float(z.imag)] for z in u],
        }


@dataclass
class SolveResult:
    n: int
    reports: list[CriticalReport]
    converged: int = 0
    no_convergence: int = 0
    collisions: int = 0
    seeds: int = 0

    def __len__(self) -> int:
        return len(self.reports)

    def __iter__(self):
        return iter(self.reports)


@dataclass
class FlowResult:
    values: list[float]
    status: Literal["converged", "no_convergence", "nonsmooth"]
    report: CriticalReport | None
    iterations: int
    direction: Literal["ascend", "descend"] = "ascend"

    @property
    def monotone(self) -> bool:
        d = np.diff(self.values)
        return bool(np.all(d >= 0) if self.direction == "ascend" else np.all(d <= 0))


@dataclass
class IndexRow:
    spec: StarSpec
    predicted: int
    printed: int  # 2w-2 on the negative branch; kept for comparison
    computed: int | None
    degenerate: bool
    min_eigen_ratio: float

    @property
    def ok(self) -> bool:
        return not self.degenerate and self.computed == self.predicted


@dataclass
class IndexTable:
    n: int
    rows: list[IndexRow] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        """Computed indices are exactly {0, 2, ..., 2n-4}, the fold at n-2."""
        got = sorted(r.computed for r in self.rows if r.computed is not None)
        fold_ok = all(r.computed == self.n - 2 for r in self.rows if r.spec.is_fold)
        return got == list(range(0, 2 * self.n - 3, 2)) and fold_ok

    @property
    def ok(self) -> bool:
        return self.exact and all(r.ok for r in self.rows)


def catalogue(n: int) -> list[StarSpec]:
    """All n-1 predicted critical points: S(n, +-w) for 1 <= w <= (n-1)//2, and the fold."""
    if n < 3:
        raise ValueError("n must be at least 3")
    m = (n - 1) // 2
    out = [StarSpec(n, "star", w) for w in range(1, m + 1)]
    out += [StarSpec(n, "star", -w) for w in range(1, m + 1)]
    if n % 2 == 0:
        out.append(StarSpec.fold(n))
    return out


def predicted_index(s: StarSpec) -> int:
    if s.is_fold:
        return s.n - 2
    if s.w > 0:
        return 2 * s.n - 2 * s.w - 2
    return 2 * abs(s.w) - 2


def printed_index(s: StarSpec) -> int:
    """Variant formula using 2w-2 on the negative branch (negative at w = -1); kept only for comparison."""
    if s.is_fold:
        return s.n - 2
    return 2 * s.n - 2 * s.w - 2 if s.w > 0 else 2 * s.w - 2


def star_edgeword(s: StarSpec) -> EdgeWord:
    return polygon_to_edgeword(s.build())


# -- classification -----------------------------------------------------------

def _circle_fit_residual(z: np.ndarray) -> float:
    """Max relative deviation from the least-squares (Kasa) circle."""
    M = np.column_stack([2 * z.real, 2 * z.imag, np.ones(z.size)])
    sol, *_ = np.linalg.lstsq(M, np.abs(z) ** 2, rcond=None)
    center = complex(sol[0], sol[1])
    r2 = sol[2] + abs(center) ** 2
    if r2 <= 0:
        return math.inf
    d = np.abs(z - center)
    r = math.sqrt(r2)
    return float(np.max(np.abs(d - r)) / r)


def classify(e: EdgeWord, tol: Tolerances | None = None):
    """Match a configuration against the star catalogue.

    Returns ``(spec or None, winding or None, equilateral_residual, cyclic_residual)``.
    The winding number is taken about the vertex centroid.
    """
    tol = tol or Tolerances()
    n = e.n
    poly = edgeword_to_polygon(e)
    edges = poly.edges()
    lengths = np.abs(edges)
    eq_res = float((lengths.max() - lengths.min()) / lengths.mean())
    cyc_res = _circle_fit_residual(poly.z)
    try:
        winding = winding_number(poly, snap=tol.winding_snap)
    except CenterOnBoundary:
        winding = None
    if eq_res >= tol.residual or cyc_res >= tol.residual or np.any(lengths == 0):
        return None, winding, eq_res, cyc_res

    ratios = np.roll(edges, -1) / edges
    mean = ratios.mean()
    if np.max(np.abs(ratios - mean)) > tol.residual ** 0.5:
        return None, winding, eq_res, cyc_res
    turns = math.atan2(mean.imag, mean.real) * n / (2 * math.pi)
    w = round(turns)
    if abs(turns - w) > tol.winding_snap:
        return None, winding, eq_res, cyc_res
    if 2 * abs(w) == n:
        return StarSpec.fold(n), winding, eq_res, cyc_res
    if w == 0 or 2 * abs(w) > n - 1 or winding != w:
        return None, winding, eq_res, cyc_res
    return StarSpec(n, "star", w), winding, eq_res, cyc_res


def analyze_point(e: EdgeWord, tol: Tolerances | None = None, power: float = 1.0) -> CriticalReport:
    """Gradient, Hessian spectrum and catalogue match at a configuration.

    ``power`` selects the functional A / (sum a_i^p)^(2/p); 1 is A/P^2.
    """
    tol = tol or Tolerances()
    e = normalize(e)
    c = chart_at(e)
    g = chart_gradient_batch(c.coords, c.pivot, power)
    lam = np.linalg.eigvalsh(hessian(c, tol.collision, power=power))
    spec, winding, eq_res, cyc_res = classify(e, tol)
    big = float(np.max(np.abs(lam)))
    return CriticalReport(
        location=e,
        normalized_area=float(normalized_u(e.u, power)),
        grad_norm=float(np.linalg.norm(g)),
        eigenvalues=[float(x) for x in lam],
        morse_index=morse_index(lam, tol.eigen_zero),
        classification=spec,
        winding=winding,
        equilateral_residual=eq_res,
        cyclic_residual=cyc_res,
        min_eigen_ratio=float(np.min(np.abs(lam)) / big) if big > 0 else 0.0,
    )


# -- Newton on the gradient ---------------------------------------------------

def _regularized_newton_step(H: np.ndarray, g: np.ndarray, rel: float = 1e-10) -> np.ndarray:
    """Tikhonov-regularized solve of H dx = -g (H symmetric, possibly indefinite)."""
    lam, V = np.linalg.eigh(H)
    mu = rel * max(float(np.max(np.abs(lam))), 1e-300)
    return -V @ ((lam / (lam**2 + mu**2)) * (V.T @ g))


def _smooth(coords: np.ndarray, pivot: int, tol: float) -> bool:
    return not is_nonsmooth(EdgeWord(coords_to_u(coords, pivot)), tol)


def _rechart(c: ChartPoint, share: float) -> ChartPoint:
    e = EdgeWord(coords_to_u(c.coords, c.pivot))
    return chart_at(e) if needs_rechart(e, c.pivot, share) else c


def newton_solve(
    start: EdgeWord,
    cfg: SolverConfig,
    max_step: float = 0.5,
    polish: int = 2,
    power: float = 1.0,
):
    """Damped Newton iteration on the chart gradient.

    Returns ``(status, EdgeWord)`` with status in
    {"converged", "no_convergence", "collision"}.
    """
    tol = cfg.tolerances
    c = chart_at(normalize(start))
    if is_nonsmooth(EdgeWord(coords_to_u(c.coords, c.pivot)), tol.collision):
        return "collision", start
    extra = 0
    for _ in range(cfg.max_iterations):
        g = chart_gradient_batch(c.coords, c.pivot, power)
        gn = float(np.linalg.norm(g))
        if gn < cfg.newton_tol:
            if extra >= polish:
                return "converged", normalize(EdgeWord(coords_to_u(c.coords, c.pivot)))
            extra += 1
        try:
            H = hessian(c, tol.collision, power=power)
        except NonSmoothPoint:
            return "collision", EdgeWord(coords_to_u(c.coords, c.pivot))
        dx = _regularized_newton_step(H, g)
        norm = float(np.linalg.norm(dx))
        if norm > max_step:
            dx *= max_step / norm
        best = None
        t = 1.0
        for _ in range(8):
            trial = c.coords + t * dx
            if _smooth(trial, c.pivot, tol.collision):
                gt = float(np.linalg.norm(chart_gradient_batch(trial, c.pivot, power)))
                if gt < gn or gn < cfg.newton_tol:
                    best = trial
                    break
            t *= 0.5
        if best is None:
            trial = c.coords + t * dx
            if not _smooth(trial, c.pivot, tol.collision):
                return "collision", EdgeWord(coords_to_u(c.coords, c.pivot))
            best = trial
        c = _rechart(ChartPoint(c.n, c.pivot, best), tol.recharting_share)
    g = chart_gradient_batch(c.coords, c.pivot, power)
    if np.linalg.norm(g) < cfg.newton_tol:
        return "converged", normalize(EdgeWord(coords_to_u(c.coords, c.pivot)))
    return "no_convergence", EdgeWord(coords_to_u(c.coords, c.pivot))


def projective_distance_mod_shift(e1: EdgeWord, e2: EdgeWord) -> float:
    """Fubini-Study distance minimized over cyclic relabelings of e2."""
    return min(fubini_study_distance(e1, e2.shifted(k)) for k in range(e2.n))


def _random_seed(n: int, rng: np.random.Generator) -> EdgeWord:
    pivot = int(rng.integers(n - 1))
    r = np.sqrt(rng.uniform(0, 1, n - 2))
    phi = rng.uniform(0, 2 * np.pi, n - 2)
    rest = r * np.exp(1j * phi)
    return EdgeWord(np.insert(rest, pivot, 1.0))


def seeds_for(n: int, cfg: SolverConfig) -> list[EdgeWord]:
    """Deterministic seed list: random chart points first, then perturbed catalogue points."""
    rng = np.random.default_rng([cfg.rng_seed, n])
    seeds = [_random_seed(n, rng) for _ in range(cfg.seeds_per_n)]
    for s in catalogue(n):
        base = normalize(star_edgeword(s)).u
        for _ in range(cfg.catalogue_seeds):
            noise = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
            seeds.append(EdgeWord(base + cfg.catalogue_noise * noise))
    return seeds


def solve_all(n: int, cfg: SolverConfig | None = None, power: float = 1.0) -> SolveResult:
    """Newton from many seeds, deduplicated up to projective equivalence and relabeling.

    Reports are sorted by normalized area, largest first. Seeds that end on
    the collision stratum are counted in ``collisions``; those points are
    Lipschitz-regular, not critical.
    """
    if n < 4:
        raise ValueError("solve_all needs n >= 4")
    cfg = cfg or SolverConfig()
    result = SolveResult(n=n, reports=[])
    found: list[EdgeWord] = []
    for seed in seeds_for(n, cfg):
        result.seeds += 1
        status, e = newton_solve(seed, cfg, power=power)
        if status == "collision":
            result.collisions += 1
            continue
        if status != "converged":
            result.no_convergence += 1
            continue
        result.converged += 1
        if any(projective_distance_mod_shift(f, e) < cfg.dedup_distance for f in found):
            continue
        found.append(e)
        result.reports.append(analyze_point(e, cfg.tolerances, power))
    result.reports.sort(key=lambda r: -r.normalized_area)
    return result


def verify_index_table(n: int, tol: Tolerances | None = None) -> IndexTable:
    tol = tol or Tolerances()
    table = IndexTable(n)
    for s in catalogue(n):
        rep = analyze_point(star_edgeword(s), tol)
        table.rows.append(
            IndexRow(
                spec=s,
                predicted=predicted_index(s),
                printed=printed_index(s),
                computed=rep.morse_index,
                degenerate=rep.morse_index is None,
                min_eigen_ratio=rep.min_eigen_ratio,
            )
        )
    return table


# -- gradient flow ------------------------------------------------------------

def gradient_flow(
    start: EdgeWord,
    direction: Literal["ascend", "descend"],
    cfg: SolverConfig | None = None,
    max_iterations: int = 5000,
    newton_switch: float = 1e-2,
) -> FlowResult:
    """Monotone gradient ascent/descent of A/P^2 in adaptive charts.

    Steps are accepted only if they improve the value (Armijo test). Once
    the gradient is small and the Hessian is definite with the right sign,
    Newton steps are tried first; they too must pass the monotonicity test.
    """
    cfg = cfg or SolverConfig()
    tol = cfg.tolerances
    sgn = 1.0 if direction == "ascend" else -1.0
    c = chart_at(normalize(start))
    if is_nonsmooth(EdgeWord(coords_to_u(c.coords, c.pivot)), tol.collision):
        raise NonSmoothPoint("flow started on the collision stratum")
    f = chart_value(c)
    values = [f]
    step = 0.1
    status = "no_convergence"
    it = 0
    for it in range(1, max_iterations + 1):
        g = chart_gradient_batch(c.coords, c.pivot)
        gn = float(np.linalg.norm(g))
        if gn < cfg.newton_tol:
            status = "converged"
            break
        moved = False
        if gn < newton_switch:
            H = hessian(c, tol.collision)
            lam = np.linalg.eigvalsh(H)
            if np.all(sgn * lam < 0):
                trial = c.coords - np.linalg.solve(H, g)
                if _smooth(trial, c.pivot, tol.collision):
                    ft = float(normalized_u(coords_to_u(trial, c.pivot)))
                    if sgn * (ft - f) >= 0:
                        c, f, moved = ChartPoint(c.n, c.pivot, trial), ft, True
        if not moved:
            while step > 1e-16:
                trial = c.coords + sgn * step * g
                if _smooth(trial, c.pivot, tol.collision):
                    ft = float(normalized_u(coords_to_u(trial, c.pivot)))
                    if sgn * (ft - f) >= 1e-4 * step * gn**2:
                        c, f, moved = ChartPoint(c.n, c.pivot, trial), ft, True
                        step = min(step * 1.5, 10.0)
                        break
                step *= 0.5
            if not moved:
                edge = not _smooth(c.coords + sgn * 1e-8 * g, c.pivot, tol.collision)
                status = "nonsmooth" if edge else "no_convergence"
                break
        values.append(f)
        c = _rechart(c, tol.recharting_share)
    e = normalize(EdgeWord(coords_to_u(c.coords, c.pivot)))
    if status == "converged":
        # classify a Newton-refined copy; the recorded trajectory is untouched
        st, refined = newton_solve(e, cfg)
        if st == "converged" and fubini_study_distance(e, refined) < 1e-6:
            e = refined
    try:
        report = None if is_nonsmooth(e, tol.collision) else analyze_point(e, tol)
    except NonSmoothPoint:
        report = None
    if status == "no_convergence" and report is not None and report.grad_norm < cfg.newton_tol:
        status = "converged"
    return FlowResult(values=values, status=status, report=report, iterations=it, direction=direction)
