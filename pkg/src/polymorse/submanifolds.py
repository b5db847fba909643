"""Relative Morse data on the cyclic (CYCL) and equilateral (EQUILAT) submanifolds.

CYCL is charted by vertex angles on the unit circle (phi_1 = 0 fixes the
rotation), EQUILAT by edge directions of an equilateral polygon with the
closure condition solved for two of them. Both charts are centered at a
regular star S(n, w); complete folds are excluded because they are
singular points of both strata.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._numdiff import default_step, hessian_from_values, jacobian, jacobian_batch
from .config import Tolerances
from .errors import ClosureSingular
from .functional import signature
from .polygon import Polygon, StarSpec, oriented_area, regular_star
from .projective import chart_at, polygon_to_edgeword
from .solver import analyze_point, star_edgeword

# -- CYCL ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CyclicChartPoint:
    n: int
    phases: np.ndarray  # phi_2 .. phi_n

    def __post_init__(self) -> None:
        ph = np.array(self.phases, dtype=float).ravel()
        if ph.size != self.n - 1:
            raise ValueError(f"need {self.n - 1} phases, got {ph.size}")
        object.__setattr__(self, "phases", ph)


def star_phases(n: int, w: int) -> np.ndarray:
    k = np.arange(1, n)
    return 2 * np.pi * w * k / n


def cyclic_embed(c: CyclicChartPoint) -> Polygon:
    return Polygon.from_complex(np.exp(1j * np.concatenate([[0.0], c.phases])))


def _circle_vertices(phases: np.ndarray) -> np.ndarray:
    phases = np.atleast_2d(phases)
    zero = np.zeros(phases.shape[:-1] + (1,))
    return np.exp(1j * np.concatenate([zero, phases], axis=-1))


def _vertex_parts(z: np.ndarray):
    """(P, A, dP/dz, dA/dz) for vertex batches z of shape (m, n); complex gradients."""
    nxt = np.roll(z, -1, axis=-1)
    prv = np.roll(z, 1, axis=-1)
    A = 0.5 * np.sum((z.conj() * nxt).imag, axis=-1)
    fwd = nxt - z
    L = np.abs(fwd)
    P = L.sum(axis=-1)
    unit = fwd / L
    gP = np.roll(unit, 1, axis=-1) - unit
    gA = -0.5j * (nxt - prv)
    return P, A, gP, gA


def _cyclic_grads(phases: np.ndarray) -> dict[str, np.ndarray]:
    """Phase gradients of P, 2A and 2A/P^2 on the unit circle, batched."""
    z = _circle_vertices(phases)
    P, A, gP, gA = _vertex_parts(z)
    dz = 1j * z  # d z_k / d phi_k

    def to_phase(g):
        return (g.conj() * dz).real[..., 1:]

    P_, A_ = P[..., None], A[..., None]
    gR = (2 * gA * P_ - 4 * A_ * gP) / P_**3
    return {"P": to_phase(gP), "2A": 2 * to_phase(gA), "2A/P2": to_phase(gR)}


def _cyclic_values(phases: np.ndarray) -> dict[str, float]:
    P, A, _, _ = _vertex_parts(_circle_vertices(phases))
    return {"P": float(P[0]), "2A": float(2 * A[0]), "2A/P2": float(2 * A[0] / P[0] ** 2)}


def cyclic_hessians(n: int, w: int) -> dict[str, np.ndarray]:
    """Phase-chart Hessians of P, 2A and 2A/P^2 at S(n, w) inscribed in the unit circle."""
    x = star_phases(n, w)
    h = default_step(x)
    out = {}
    for key in ("P", "2A", "2A/P2"):
        H = jacobian_batch(lambda X, key=key: _cyclic_grads(X)[key], x, h)
        out[key] = 0.5 * (H + H.T)
    return out


def cyclic_hessian(n: int, w: int) -> np.ndarray:
    """Hessian of A/P^2 restricted to CYCL at S(n, w), in the phi_2..phi_n chart."""
    StarSpec(n, "star", w)
    return 0.5 * cyclic_hessians(n, w)["2A/P2"]


@dataclass(frozen=True)
class Jet2:
    """c0 + c2 * sum(t_i^2) on the subspace sum(t_i) = 0."""

    constant: float
    quadratic: float


def jet2_closed_forms(n: int, w: int) -> dict[str, Jet2]:
    """Closed-form 2-jets at S(n, w), w > 0, in the chord-angle increments t_i."""
    if w <= 0:
        raise ValueError("closed-form jets hold for positive winding numbers only")
    StarSpec(n, "star", w)
    a = 2 * math.pi * w / n
    chord = math.sqrt(2 - 2 * math.cos(a))
    ratio = (1 + math.cos(a)) / (8 * n**2 * math.sin(a))
    return {
        "P": Jet2(chord * n, -chord / 8),
        "2A": Jet2(math.sin(a) / 2 * 2 * n, -math.sin(a) / 2),
        "2A/P2": Jet2(ratio * 4 * n, -ratio),
    }


def t_basis(n: int) -> np.ndarray:
    """Map s -> phase shifts x (x_1 = 0) with t = Dx orthonormally parametrizing sum(t) = 0.

    t_i = x_{i+1} - x_i (cyclically); returns the (n-1) x (n-1) matrix M with
    x_{2..n} = M s for t = B s, B an orthonormal basis of {sum t = 0}.
    """
    ones = np.ones((n, 1)) / math.sqrt(n)
    Q, _ = np.linalg.qr(np.hstack([ones, np.eye(n)[:, : n - 1]]))
    B = Q[:, 1:n]
    L = np.tril(np.ones((n - 1, n - 1)))  # x_k = t_1 + ... + t_{k-1}
    return L @ B[: n - 1]


@dataclass
class JetCheck:
    n: int
    w: int
    discrepancies: dict[str, float]
    gradient_norms: dict[str, float]

    @property
    def worst(self) -> float:
        return max(self.discrepancies.values())


def jet_check(n: int, w: int) -> JetCheck:
    """Numerical 2-jets of P, 2A, 2A/P^2 on CYCL vs the closed forms."""
    forms = jet2_closed_forms(n, w)
    x = star_phases(n, w)
    values = _cyclic_values(x)
    grads = _cyclic_grads(x)
    hess = cyclic_hessians(n, w)
    M = t_basis(n)
    disc, gnorm = {}, {}
    for key, jet in forms.items():
        Hs = M.T @ hess[key] @ M
        target = 2 * jet.quadratic * np.eye(n - 1)
        quad = float(np.max(np.abs(Hs - target)) / abs(2 * jet.quadratic))
        const = abs(values[key] - jet.constant) / abs(jet.constant)
        disc[key] = max(quad, const)
        gnorm[key] = float(np.linalg.norm(grads[key]))
    return JetCheck(n, w, disc, gnorm)


def verify_jets(n: int, w: int) -> float:
    """Worst relative discrepancy between numerical and closed-form 2-jets."""
    return jet_check(n, w).worst


# -- EQUILAT ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EquilateralChartPoint:
    """Offsets of the free edge directions from those of the base star S(n, w)."""

    n: int
    w: int
    turning: np.ndarray

    def __post_init__(self) -> None:
        t = np.array(self.turning, dtype=float).ravel()
        if t.size != self.n - 3:
            raise ValueError(f"EQUILAT chart for n={self.n} has {self.n - 3} coordinates")
        object.__setattr__(self, "turning", t)


def star_directions(n: int, w: int) -> np.ndarray:
    a = 2 * math.pi * w / n
    return a * np.arange(n) + np.angle(np.exp(1j * a) - 1)


def solved_pair(n: int, w: int) -> tuple[int, int]:
    """Edges whose directions absorb the closure condition.

    The two neighbours of reference edge 0 are used unless they are
    (nearly) parallel at the star, which happens when n = 4w; then the
    best-conditioned pair is taken.
    """
    th = star_directions(n, w)
    if abs(math.sin(th[1] - th[n - 1])) > 1e-3:
        return 1, n - 1
    best, pair = -1.0, (1, 2)
    for i in range(1, n):
        for j in range(i + 1, n):
            s = abs(math.sin(th[i] - th[j]))
            if s > best + 1e-12:
                best, pair = s, (i, j)
    return pair


def _directions(c: EquilateralChartPoint, max_iter: int = 50) -> np.ndarray:
    n, w = c.n, c.w
    th = star_directions(n, w)
    a, b = solved_pair(n, w)
    free = [k for k in range(1, n) if k not in (a, b)]
    th[free] += c.turning
    for _ in range(max_iter):
        F = np.exp(1j * th).sum()
        if abs(F) < 1e-15 * n:
            return th
        ja, jb = 1j * np.exp(1j * th[a]), 1j * np.exp(1j * th[b])
        J = np.array([[ja.real, jb.real], [ja.imag, jb.imag]])
        if abs(np.linalg.det(J)) < 1e-10:
            raise ClosureSingular("solved edge directions are parallel")
        d = np.linalg.solve(J, [-F.real, -F.imag])
        th[a] += d[0]
        th[b] += d[1]
    if abs(np.exp(1j * th).sum()) > 1e-12:
        raise ClosureSingular("closure solve did not converge")
    return th


def equilat_embed(c: EquilateralChartPoint) -> Polygon:
    """Equilateral perimeter-1 polygon; the zero chart point is regular_star(n, w)."""
    th = _directions(c)
    edges = np.exp(1j * th) / c.n
    start = regular_star(StarSpec(c.n, "star", c.w)).z[0]
    z = start + np.concatenate([[0.0], np.cumsum(edges[:-1])])
    return Polygon.from_complex(z)


def equilat_hessian(n: int, w: int, h: float = 1e-4) -> np.ndarray:
    """Hessian of the oriented area on EQUILAT at S(n, w) (perimeter is 1 there)."""
    StarSpec(n, "star", w)
    return hessian_from_values(
        lambda t: oriented_area(equilat_embed(EquilateralChartPoint(n, w, t))), np.zeros(n - 3), h
    )


def equilat_index(n: int, w: int, tol: Tolerances | None = None) -> int | None:
    """Morse index of the area on EQUILAT at S(n, w); None if possibly degenerate."""
    tol = tol or Tolerances()
    if n == 3:
        return 0
    neg, zero, _ = signature(np.linalg.eigvalsh(equilat_hessian(n, w)), tol.eigen_zero)
    return None if zero else neg


def cyclic_index(n: int, w: int, tol: Tolerances | None = None) -> int | None:
    tol = tol or Tolerances()
    neg, zero, _ = signature(np.linalg.eigvalsh(cyclic_hessian(n, w)), tol.eigen_zero)
    return None if zero else neg


# -- index sandwich across strata, transversality --------------------------------

def tangent_rank(n: int, w: int, rel: float = 1e-8) -> tuple[int, np.ndarray]:
    """Rank of the joint tangent span of CYCL and EQUILAT at S(n, w) inside CP^{n-2}.

    Both chart maps are pushed into one affine chart of CP^{n-2}; each
    tangent basis is orthonormalized before stacking so the singular values
    measure the angle between the two tangent spaces.
    """
    base = chart_at(star_edgeword(StarSpec(n, "star", w)))

    def cp_coords(poly: Polygon) -> np.ndarray:
        return chart_at(polygon_to_edgeword(poly), pivot=base.pivot).coords

    x0 = star_phases(n, w)
    Jc = jacobian(lambda x: cp_coords(cyclic_embed(CyclicChartPoint(n, x))), x0)
    Je = jacobian(lambda t: cp_coords(equilat_embed(EquilateralChartPoint(n, w, t))), np.zeros(n - 3))
    Qc, _ = np.linalg.qr(Jc)
    Qe, _ = np.linalg.qr(Je) if n > 3 else (np.zeros((2 * n - 4, 0)), None)
    sv = np.linalg.svd(np.hstack([Qc, Qe]), compute_uv=False)
    return int(np.sum(sv > rel * sv[0])), sv


@dataclass
class StratumIndexReport:
    n: int
    w: int
    full_index: int | None
    cyclic_index: int | None
    equilat_index: int | None
    rank: int
    failures: list[str] = field(default_factory=list)
    extremal_stratum: str = "not applicable"

    @property
    def ok(self) -> bool:
        return not self.failures


def stratum_index_checks(n: int, w: int, tol: Tolerances | None = None) -> StratumIndexReport:
    """Index sandwich on both strata, the max-on-one/min-on-other rule where it applies, transversality."""
    tol = tol or Tolerances()
    dim = 2 * n - 4
    full = analyze_point(star_edgeword(StarSpec(n, "star", w)), tol).morse_index
    cyc = cyclic_index(n, w, tol)
    eq = equilat_index(n, w, tol)
    rank, _ = tangent_rank(n, w)
    rep = StratumIndexReport(n, w, full, cyc, eq, rank)
    if None in (full, cyc, eq):
        rep.failures.append("degenerate Hessian: index undefined")
        return rep
    for name, sub, sub_dim in (("CYCL", cyc, n - 1), ("EQUILAT", eq, n - 3)):
        k = dim - sub_dim
        if not sub <= full <= sub + k:
            rep.failures.append(f"index sandwich fails on {name}: {sub} <= {full} <= {sub + k}")
    # maximal index on one stratum and minimal on the other pins the full index
    for top, top_dim, bottom in ((cyc, n - 1, eq), (eq, n - 3, cyc)):
        if top == top_dim and bottom == 0:
            rep.extremal_stratum = f"predicts {top_dim}, computed {full}"
            if full != top_dim:
                rep.failures.append(f"extremal-stratum rule fails: predicted {top_dim}, got {full}")
    if rank != dim:
        rep.failures.append(f"tangent spaces span rank {rank}, expected {dim}")
    return rep
