"""Area extremals under a power-sum side constraint, and the dual (perimeter at fixed area) problem."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ._numdiff import hessian_from_values
from .config import SolverConfig, Tolerances
from .errors import ZeroArea, ZeroConstraintGradient
from .functional import area_u, edgeword_perimeter, signature
from .polygon import Polygon, StarSpec, oriented_area, perimeter
from .projective import chart_at, coords_to_u
from .solver import SolveResult, analyze_point, solve_all, star_edgeword


@dataclass(frozen=True)
class ConstraintSpec:
    """Level set {g = level}; the area level may be negative (clockwise polygons)."""

    kind: Literal["perimeter", "power_sum", "area"]
    level: float
    p: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in ("perimeter", "power_sum", "area"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.p <= 0:
            raise ValueError("p must be positive")
        if self.kind == "area" and self.level == 0:
            raise ValueError("area level must be nonzero")
        if self.kind != "area" and self.level <= 0:
            raise ValueError("level must be positive")

    @classmethod
    def through(cls, poly: Polygon, kind: str, p: float = 1.0) -> ConstraintSpec:
        """The constraint of the given kind whose level set contains ``poly``."""
        return cls(kind, constraint_value(poly, kind, p), p)


def constraint_value(poly: Polygon, kind: str, p: float = 1.0) -> float:
    if kind == "perimeter":
        return perimeter(poly)
    if kind == "power_sum":
        return float(np.sum(poly.edge_lengths() ** p))
    if kind == "area":
        return oriented_area(poly)
    raise ValueError(f"unknown kind {kind!r}")


def _vertex_gradient(poly: Polygon, kind: str, p: float = 1.0) -> np.ndarray:
    """Complex gradient with respect to each vertex."""
    z = poly.z
    nxt, prv = np.roll(z, -1), np.roll(z, 1)
    if kind == "area":
        return -0.5j * (nxt - prv)
    fwd = nxt - z
    a = np.abs(fwd)
    weight = 1.0 if kind == "perimeter" else p * a ** (p - 1)
    term = weight * fwd / a
    return np.roll(term, 1) - term


def _as_real(g: np.ndarray) -> np.ndarray:
    return np.column_stack([g.real, g.imag]).ravel()


def isometry_basis(poly: Polygon) -> np.ndarray:
    """Orthonormal basis (2n x 3) of the two translation fields and the rotation field."""
    z = poly.z
    fields = [np.ones_like(z), 1j * np.ones_like(z), 1j * (z - z.mean())]
    Q, _ = np.linalg.qr(np.column_stack([_as_real(f) for f in fields]))
    return Q


def lagrange_residual(
    poly: Polygon,
    objective: Literal["area", "perimeter"],
    constraint: ConstraintSpec,
    tol: Tolerances | None = None,
) -> float:
    """Norm of the part of grad(objective) orthogonal to grad(constraint), modulo isometries."""
    tol = tol or Tolerances()
    a = poly.edge_lengths()
    if np.min(a) <= 1e-8 * a.sum():
        raise ValueError("polygon has a (numerically) zero edge")
    value = constraint_value(poly, constraint.kind, constraint.p)
    if abs(value - constraint.level) > 1e-9 * max(1.0, abs(constraint.level)):
        raise ValueError(f"polygon is off the constraint level ({value} vs {constraint.level})")

    Q = isometry_basis(poly)
    go = _as_real(_vertex_gradient(poly, objective))
    gc = _as_real(_vertex_gradient(poly, constraint.kind, constraint.p))
    go = go - Q @ (Q.T @ go)
    gc = gc - Q @ (Q.T @ gc)
    norm_c = float(np.linalg.norm(gc))
    if norm_c < 1e-12:
        raise ZeroConstraintGradient("constraint gradient vanishes")
    unit = gc / norm_c
    return float(np.linalg.norm(go - (go @ unit) * unit))


def dual_critical_check(poly: Polygon, tol: Tolerances | None = None) -> tuple[float, float]:
    """(residual of A at fixed P, residual of P at fixed A)."""
    A = oriented_area(poly)
    if abs(A) < 1e-12 * perimeter(poly) ** 2:
        raise ZeroArea("zero oriented area: the dual constraint is degenerate")
    primal = lagrange_residual(poly, "area", ConstraintSpec.through(poly, "perimeter"), tol)
    dual = lagrange_residual(poly, "perimeter", ConstraintSpec.through(poly, "area"), tol)
    return primal, dual


@dataclass
class DualIndex:
    spec: StarSpec
    index_primal: int | None
    index_dual: int | None
    chart_dim: int


def dual_hessian(n: int, w: int, h: float = 1e-4) -> np.ndarray:
    """Hessian of the perimeter on {A = A(S(n, w))} at the star.

    Chart: the affine CP^{n-2} chart at the star, each point rescaled by the
    unique positive factor that restores the star's area. This is a chart of
    the fixed-area level set of polygons modulo rotation and translation.
    """
    s = StarSpec(n, "star", w)
    e = star_edgeword(s)
    base = chart_at(e)
    level = float(area_u(e.u))

    def perim(x):
        u = coords_to_u(x, base.pivot)
        return float(edgeword_perimeter(u) * np.sqrt(level / area_u(u)))

    return hessian_from_values(perim, base.coords, h)


def dual_index_relation(n: int, w: int, tol: Tolerances | None = None) -> DualIndex:
    tol = tol or Tolerances()
    s = StarSpec(n, "star", w)
    primal = analyze_point(star_edgeword(s), tol).morse_index
    H = dual_hessian(n, w)
    neg, zero, _ = signature(np.linalg.eigvalsh(H), tol.eigen_zero)
    return DualIndex(s, primal, None if zero else neg, H.shape[0])


def probe_power_sum(n: int, p: float, cfg: SolverConfig | None = None) -> SolveResult:
    """Search for critical points of A / (sum a_i^p)^(2/p) from random and catalogue seeds.

    Findings are reported as they are; no completeness is claimed for p != 1.
    """
    return solve_all(n, cfg, power=p)
